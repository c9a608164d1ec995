#pragma once

#include <vector>

#include "graphonlab/norms.hpp"

namespace graphonlab {
namespace regularity {

// Projection onto a coarsening of the parts: mass-weighted block averages.
// `grouping[i]` is the group index of part i; groups must be 0..G-1 with every
// group nonempty. Averaging preserves symmetry and value-range class.
StepKernelSignal stepping(const StepKernelSignal& x, const std::vector<int>& grouping);

// Expand a stepped object back onto the fine partition (values constant on
// each group), for same-partition comparisons against the original.
StepKernelSignal expand_grouping(const StepKernelSignal& coarse, const std::vector<int>& grouping,
                                 const Partition& fine);

// One new equal-mass part: either a whole slice of a single source part, or a
// pool part made of residual slices from several sources.
struct EquitizedPart {
    std::vector<std::pair<int, double>> sources;  // (source part, mass drawn)
    bool from_pool = false;
};

struct EquitizeMap {
    Partition partition;               // the equipartition with n parts
    std::vector<EquitizedPart> parts;  // size n
};

// Split a k-part partition into an equipartition of n > k parts: each source
// part contributes full 1/n slices, remainders are pooled and re-cut. Any step
// function moves to the new partition with L1 perturbation at most
// arity * sup|F| * k / n.
EquitizeMap equitize(const Partition& p, int n);

// Carry a step object onto the equitized partition. Full slices copy their
// source values; cells that touch a pool part are set to zero, which is what
// the perturbation bound accounts for.
StepKernelSignal apply_equitize(const StepKernelSignal& x, const EquitizeMap& map);

struct DecompositionTerm {
    double gamma = 0.0;
    std::vector<int> S;
    std::vector<int> T;
};

struct Decomposition {
    std::vector<DecompositionTerm> terms;
    std::vector<double> witness_values;      // residual witness value at each search
    double residual_cutnorm_estimate = 0.0;  // witness value of the final residual
    int steps = 0;
    bool exact_witnesses = false;
};

enum class WitnessMode { Exact, Heuristic };

// Greedy decomposition: at each step, take a cut-norm witness of the residual,
// subtract the block average on that rectangle. With exact witnesses the
// residual cut norm after m steps is at most ||W||_2 / sqrt(m).
Decomposition weak_regularity_decompose(const StepKernelSignal& x, int m,
                                        WitnessMode mode = WitnessMode::Exact,
                                        const norms::CutNormParams& cut = {});

// Rebuild sum of gamma * 1_{S x T} on the object's partition.
Matrix reconstruct_terms(const Decomposition& d, int parts);

struct StepApproximation {
    StepKernelSignal stepped;      // on the coarse grouped partition
    std::vector<int> grouping;     // fine part -> group
    double gap = 0.0;              // cut metric between x and its projection
    bool gap_exact = false;
    double theoretical_epsilon = 0.0;  // regularity ceiling for this part budget
    double exponent_coefficient = 8.0;
};

// Group parts using the sigma-algebra generated by decomposition witness
// sets, merging smallest-mass groups when the budget is exceeded; then step.
StepApproximation best_step_approximation(const StepKernelSignal& x, int n_target,
                                          int decompose_steps = 16,
                                          WitnessMode mode = WitnessMode::Exact,
                                          const norms::CutNormParams& cut = {},
                                          double exponent_coefficient = 8.0);

}  // namespace regularity
}  // namespace graphonlab
