#include "graphonlab/sampling.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace graphonlab {
namespace sampling {

PointSet sample_points(const Partition& p, int k, uint64_t seed) {
    if (k < 1) throw std::invalid_argument("need k >= 1 sample points");
    std::vector<double> cumulative(p.masses.size());
    double acc = 0.0;
    for (size_t i = 0; i < p.masses.size(); ++i) {
        acc += p.masses[i];
        cumulative[i] = acc;
    }
    cumulative.back() = 1.0;

    SplitMix64 rng(seed);
    PointSet points(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        double u = rng.next_double();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        int part = static_cast<int>(std::min<ptrdiff_t>(it - cumulative.begin(),
                                                        static_cast<ptrdiff_t>(p.parts() - 1)));
        double lo = part == 0 ? 0.0 : cumulative[part - 1];
        points[i] = {part, (u - lo) / p.masses[part]};
    }
    return points;
}

GraphSignal sample_weighted(const StepKernelSignal& x, const PointSet& points) {
    int k = static_cast<int>(points.size());
    GraphSignal g;
    g.directed = !class_requires_symmetry(x.kclass);
    g.weight_range = class_value_min(x.kclass) == 0.0 ? WeightRange::ZeroOne
                                                      : WeightRange::PlusMinusOne;
    g.signal_radius = x.signal_radius;
    g.adjacency = Matrix(k, k);
    g.features = Matrix(k, x.channels());
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j)
            g.adjacency.at(i, j) = x.kernel.at(points[i].part, points[j].part);
        for (int c = 0; c < x.channels(); ++c)
            g.features.at(i, c) = x.signal.at(points[i].part, c);
    }
    return g;
}

GraphSignal sample_simple(const StepKernelSignal& x, const PointSet& points, uint64_t seed) {
    if (x.kclass != KernelClass::Graphon && x.kclass != KernelClass::DirectedGraphon)
        throw std::invalid_argument("simple-graph sampling needs edge probabilities in [0,1]");
    int k = static_cast<int>(points.size());
    GraphSignal g;
    g.directed = x.kclass == KernelClass::DirectedGraphon;
    g.weight_range = WeightRange::ZeroOne;
    g.signal_radius = x.signal_radius;
    g.adjacency = Matrix(k, k);
    g.features = Matrix(k, x.channels());
    SplitMix64 rng(seed);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            double w = x.kernel.at(points[i].part, points[j].part);
            g.adjacency.at(i, j) = rng.next_bernoulli(w) ? 1.0 : 0.0;
        }
    if (x.kclass == KernelClass::Graphon) {
        // symmetrize the directed draw: max{A, A^T}
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                double v = std::max(g.adjacency.at(i, j), g.adjacency.at(j, i));
                g.adjacency.at(i, j) = v;
                g.adjacency.at(j, i) = v;
            }
        g.directed = false;
    }
    for (int i = 0; i < k; ++i)
        for (int c = 0; c < x.channels(); ++c)
            g.features.at(i, c) = x.signal.at(points[i].part, c);
    return g;
}

SampleBatch sample_batch(const StepKernelSignal& x, int k, int count, SampleMode mode,
                         uint64_t seed) {
    SampleBatch batch;
    batch.seed = seed;
    batch.k = k;
    batch.lambdas.resize(static_cast<size_t>(count));
    batch.graphs.resize(static_cast<size_t>(count));
    for (int t = 0; t < count; ++t) {
        uint64_t ts = seed ^ static_cast<uint64_t>(t);
        PointSet pts = sample_points(x.partition, k, derive_seed(ts, 0));
        batch.lambdas[t] = pts;
        batch.graphs[t] = mode == SampleMode::Weighted
                              ? sample_weighted(x, pts)
                              : sample_simple(x, pts, derive_seed(ts, 1));
    }
    return batch;
}

double sampling_rate_bound(int k, LogBase base) {
    double lg = base == LogBase::Two ? std::log2(static_cast<double>(k))
                                     : std::log(static_cast<double>(k));
    return 15.0 / std::sqrt(lg);
}

DistanceEstimate estimate_expected_distance(const StepKernelSignal& x, int k, int trials,
                                            const EstimateParams& params) {
    if (trials < 1) throw std::invalid_argument("need trials >= 1");
    DistanceEstimate est;
    est.per_trial.assign(static_cast<size_t>(trials), 0.0);
    est.theoretical_bound = sampling_rate_bound(k, params.log_base);

    int refinement = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int t = 0; t < trials; ++t) {
        uint64_t ts = params.seed ^ static_cast<uint64_t>(t);
        PointSet pts = sample_points(x.partition, k, derive_seed(ts, 0));
        // Sorting the sampled points is a relabeling of the sample; it lines
        // the induced step object up with the source blocks.
        std::stable_sort(pts.begin(), pts.end(), [](const SamplePoint& a, const SamplePoint& b) {
            return a.part != b.part ? a.part < b.part : a.offset < b.offset;
        });
        GraphSignal g = params.mode == SampleMode::Weighted
                            ? sample_weighted(x, pts)
                            : sample_simple(x, pts, derive_seed(ts, 1));
        StepKernelSignal induced = induce(g);
        alignment::AlignmentParams ap = params.align;
        ap.seed = derive_seed(ts, 2);
        int64_t common = checked_lcm(x.parts(), induced.parts());
        if (ap.mode == alignment::DistanceMode::Exact && common > ap.exact_cap)
            ap.mode = alignment::DistanceMode::LocalSearch;
        // The sorted relabeling above already lines the sample up with the
        // source blocks, so the swap search only polishes; a full O(n^2) scan
        // per restart is not affordable at large k.
        if (ap.mode == alignment::DistanceMode::LocalSearch && ap.max_swap_evals == 0 &&
            common > 24)
            ap.max_swap_evals = 8;
        alignment::AlignmentResult ar = alignment::cut_distance(x, induced, ap);
        est.per_trial[t] = ar.distance;
        if (t == 0) refinement = ar.refinement_parts;
    }
    est.refinement_parts = refinement;

    double sum = 0.0;
    for (double v : est.per_trial) sum += v;
    est.mean = sum / trials;
    double var = 0.0;
    for (double v : est.per_trial) var += (v - est.mean) * (v - est.mean);
    est.stderr_mean = trials > 1 ? std::sqrt(var / (trials - 1) / trials) : 0.0;
    return est;
}

}  // namespace sampling
}  // namespace graphonlab
