#include "graphonlab/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace graphonlab {
namespace alignment {

StepKernelSignal permute(const StepKernelSignal& x, const std::vector<int>& p) {
    int n = x.parts();
    if (static_cast<int>(p.size()) != n) throw std::invalid_argument("permutation size mismatch");
    std::vector<uint8_t> seen(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (p[i] < 0 || p[i] >= n || seen[p[i]]) throw std::invalid_argument("not a permutation");
        seen[p[i]] = 1;
        if (std::abs(x.partition.masses[p[i]] - x.partition.masses[i]) > 1e-12)
            throw std::invalid_argument("permutation is not mass-compatible");
    }
    StepKernelSignal out;
    out.partition = x.partition;
    out.kclass = x.kclass;
    out.signal_radius = x.signal_radius;
    out.kernel = Matrix(n, n);
    out.signal = Matrix(n, x.channels());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out.kernel.at(i, j) = x.kernel.at(p[i], p[j]);
        for (int c = 0; c < x.channels(); ++c) out.signal.at(i, c) = x.signal.at(p[i], c);
    }
    return out;
}

namespace {

double metric_under(const StepKernelSignal& a, const StepKernelSignal& b,
                    const std::vector<int>& p, const norms::CutNormParams& cut) {
    return norms::cut_metric(a, permute(b, p), cut).value;
}

struct Candidate {
    double distance = kInf;
    std::vector<int> permutation;
};

bool better(const Candidate& c, const Candidate& best) {
    if (c.distance < best.distance) return true;
    if (c.distance > best.distance) return false;
    return std::lexicographical_compare(c.permutation.begin(), c.permutation.end(),
                                        best.permutation.begin(), best.permutation.end());
}

Candidate exact_search(const StepKernelSignal& a, const StepKernelSignal& b,
                       const norms::CutNormParams& cut) {
    int n = a.parts();
    std::vector<Candidate> block_best(static_cast<size_t>(n));
    // Permutations with a fixed first image form disjoint blocks that are
    // enumerated in lexicographic order; reduction runs in block order.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int first = 0; first < n; ++first) {
        std::vector<int> rest;
        for (int i = 0; i < n; ++i)
            if (i != first) rest.push_back(i);
        Candidate best;
        std::vector<int> p(static_cast<size_t>(n));
        do {
            p[0] = first;
            std::copy(rest.begin(), rest.end(), p.begin() + 1);
            double d = metric_under(a, b, p, cut);
            if (d < best.distance) {
                best.distance = d;
                best.permutation = p;
            }
        } while (std::next_permutation(rest.begin(), rest.end()));
        block_best[first] = std::move(best);
    }
    Candidate win = block_best[0];
    for (int i = 1; i < n; ++i)
        if (better(block_best[i], win)) win = block_best[i];
    return win;
}

Candidate local_search_one(const StepKernelSignal& a, const StepKernelSignal& b,
                           std::vector<int> p, uint64_t seed, int max_swap_evals,
                           const norms::CutNormParams& cut) {
    int n = a.parts();
    Candidate cur;
    cur.distance = metric_under(a, b, p, cut);
    cur.permutation = p;
    int budget = max_swap_evals > 0 ? max_swap_evals : n * (n - 1) / 2;
    bool full_scan = max_swap_evals == 0 || max_swap_evals >= n * (n - 1) / 2;
    SplitMix64 rng(seed);
    bool improved = true;
    while (improved && budget > 0) {
        improved = false;
        if (full_scan) {
            for (int i = 0; i < n && budget > 0; ++i) {
                for (int j = i + 1; j < n && budget > 0; ++j) {
                    std::swap(p[i], p[j]);
                    double d = metric_under(a, b, p, cut);
                    --budget;
                    if (d < cur.distance - 1e-15) {
                        cur.distance = d;
                        cur.permutation = p;
                        improved = true;
                    } else {
                        std::swap(p[i], p[j]);
                    }
                }
            }
        } else {
            for (int s = 0; s < budget; ++s) {
                int i = static_cast<int>(rng.next_below(static_cast<uint64_t>(n)));
                int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(n)));
                if (i == j) continue;
                std::swap(p[i], p[j]);
                double d = metric_under(a, b, p, cut);
                if (d < cur.distance - 1e-15) {
                    cur.distance = d;
                    cur.permutation = p;
                    improved = true;
                } else {
                    std::swap(p[i], p[j]);
                }
            }
            budget = 0;
        }
    }
    return cur;
}

}  // namespace

AlignmentResult cut_distance(const StepKernelSignal& a, const StepKernelSignal& b,
                             const AlignmentParams& params) {
    if (a.kclass != b.kclass) throw std::invalid_argument("cut distance: class mismatch");
    if (a.channels() != b.channels())
        throw std::invalid_argument("cut distance: signal dimension mismatch");
    auto [ra, rb] = refine_to_common(a, b, params.lcm_cap);
    int n = ra.parts();

    AlignmentResult out;
    out.refinement_parts = n;

    if (params.mode == DistanceMode::Exact) {
        if (n > params.exact_cap)
            throw CapExceeded("exact alignment needs refinement <= " +
                              std::to_string(params.exact_cap) + " parts, got " +
                              std::to_string(n));
        Candidate win = exact_search(ra, rb, params.cut);
        out.distance = win.distance;
        out.permutation = std::move(win.permutation);
        out.exact = n <= params.cut.exact_cap;  // all cut norms took the exact path
        return out;
    }

    int restarts = std::max(1, params.restarts);
    std::vector<Candidate> per_restart(static_cast<size_t>(restarts));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int r = 0; r < restarts; ++r) {
        std::vector<int> start(static_cast<size_t>(n));
        std::iota(start.begin(), start.end(), 0);
        uint64_t rs = derive_seed(params.seed, static_cast<uint64_t>(r));
        if (r > 0) {
            SplitMix64 rng(rs);
            for (int i = n - 1; i > 0; --i) {
                int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i + 1)));
                std::swap(start[i], start[j]);
            }
        }
        per_restart[r] =
            local_search_one(ra, rb, std::move(start), rs ^ 0x5A5Aull, params.max_swap_evals,
                             params.cut);
    }
    Candidate win = per_restart[0];
    for (int r = 1; r < restarts; ++r)
        if (better(per_restart[r], win)) win = per_restart[r];
    out.distance = win.distance;
    out.permutation = std::move(win.permutation);
    out.exact = false;
    return out;
}

}  // namespace alignment
}  // namespace graphonlab
