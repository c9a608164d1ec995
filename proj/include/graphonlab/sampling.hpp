#pragma once

#include <vector>

#include "graphonlab/alignment.hpp"
#include "graphonlab/core.hpp"

namespace graphonlab {
namespace sampling {

// A sampled point, resolved to its part by cumulative masses; offset is the
// point's relative position inside the part.
struct SamplePoint {
    int part = 0;
    double offset = 0.0;
};

using PointSet = std::vector<SamplePoint>;

struct SampleBatch {
    uint64_t seed = 0;
    int k = 0;
    std::vector<PointSet> lambdas;
    std::vector<GraphSignal> graphs;
};

enum class SampleMode { Weighted, Simple };

// k i.i.d. uniform points on [0,1], resolved against the partition.
PointSet sample_points(const Partition& p, int k, uint64_t seed);

// Weighted graph: edge weight W(lambda_i, lambda_j), features f(lambda_i).
GraphSignal sample_weighted(const StepKernelSignal& x, const PointSet& points);

// Simple graph: independent Bernoulli edges with the weighted graph's
// parameters. Undirected graphons use the symmetrization max{A, A^T} of a
// directed draw. Requires values in [0,1].
GraphSignal sample_simple(const StepKernelSignal& x, const PointSet& points, uint64_t seed);

SampleBatch sample_batch(const StepKernelSignal& x, int k, int count, SampleMode mode,
                         uint64_t seed);

// Natural log is selectable for the sampling-rate constants; default is
// base 2, the stricter reading of the source analysis.
enum class LogBase { Two, Natural };

double sampling_rate_bound(int k, LogBase base = LogBase::Two);  // 15 / sqrt(log k)

struct DistanceEstimate {
    double mean = 0.0;
    double stderr_mean = 0.0;
    std::vector<double> per_trial;
    double theoretical_bound = 0.0;  // 15 / sqrt(log k)
    int refinement_parts = 0;
};

struct EstimateParams {
    SampleMode mode = SampleMode::Weighted;
    uint64_t seed = 0x5A3Dull;
    LogBase log_base = LogBase::Two;
    alignment::AlignmentParams align;  // mode is forced to LocalSearch when parts are large
};

// Monte Carlo estimate of E dist((W,f), sampled object). Each trial samples k
// points, sorts them, induces the sampled graph, and measures the alignment
// distance to x on the common refinement.
DistanceEstimate estimate_expected_distance(const StepKernelSignal& x, int k, int trials,
                                            const EstimateParams& params = {});

}  // namespace sampling
}  // namespace graphonlab
