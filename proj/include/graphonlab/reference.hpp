#pragma once

#include "graphonlab/core.hpp"

namespace graphonlab {

// Serial brute-force implementations, deliberately written in the most direct
// form (no Gray code, no incremental sums, no threading). Tests use them as
// independent oracles for the optimized kernels; the benchmark tool compares
// the two paths.
namespace reference {

struct CutNormValue {
    double value = 0.0;
    std::vector<int> witness_S;
    std::vector<int> witness_T;
};

// max over all subset pairs (S, T) of |sum_{i in S, j in T} mu_i mu_j D_ij|.
CutNormValue cut_norm_exact(const Matrix& D, const std::vector<double>& masses);

// (1/d) max over subsets S of ||sum_{j in S} mu_j f_j||_1.
double signal_cut_norm(const Matrix& F, const std::vector<double>& masses);

double cut_metric(const StepKernelSignal& a, const StepKernelSignal& b);

// min over all part permutations of b (equal masses assumed) of the metric.
double cut_distance_exact(const StepKernelSignal& a, const StepKernelSignal& b);

}  // namespace reference
}  // namespace graphonlab
