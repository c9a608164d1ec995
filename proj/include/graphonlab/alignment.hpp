#pragma once

#include <vector>

#include "graphonlab/norms.hpp"

namespace graphonlab {
namespace alignment {

enum class DistanceMode { Exact, LocalSearch };

struct AlignmentParams {
    DistanceMode mode = DistanceMode::Exact;
    int exact_cap = 8;            // max parts for n! enumeration
    int restarts = 8;             // local-search multistart (restart 0 is the identity)
    uint64_t seed = 0xA119ull;
    int max_swap_evals = 0;       // per-restart metric-evaluation budget; 0 = n*(n-1)/2 full scans
    int64_t lcm_cap = kDefaultLcmCap;
    norms::CutNormParams cut;     // parameters for the underlying cut norms
};

struct AlignmentResult {
    double distance = 0.0;
    std::vector<int> permutation;  // part i of `a` is compared against part permutation[i] of `b`
    int refinement_parts = 0;
    bool exact = false;
};

// Relabel parts: kernel'(i,j) = kernel(p(i), p(j)), signal'(i) = signal(p(i)).
// Requires mass-compatible p (masses[p[i]] == masses[i]).
StepKernelSignal permute(const StepKernelSignal& x, const std::vector<int>& p);

// Cut distance restricted to part permutations of the common refinement.
// Exact mode enumerates all n! permutations with exact cut norms (n <= cap);
// local-search mode is seeded pairwise-swap hill climbing with multistart and
// yields an upper bound on the permutation-restricted distance.
AlignmentResult cut_distance(const StepKernelSignal& a, const StepKernelSignal& b,
                             const AlignmentParams& params = {});

}  // namespace alignment
}  // namespace graphonlab
