#pragma once

#include <string>
#include <vector>

#include "graphonlab/common.hpp"

namespace graphonlab {

// Weighted partition of [0,1]. Parts are abstract: only masses matter, since
// every functional in this library is invariant to how parts are arranged.
struct Partition {
    std::vector<double> masses;
    bool equipartition = false;

    int parts() const { return static_cast<int>(masses.size()); }

    static Partition uniform(int n);
    static Partition general(std::vector<double> masses);
};

// The four kernel spaces: graphons take values in [0,1], kernels in [-1,1];
// the undirected variants additionally require symmetry.
enum class KernelClass {
    Graphon,
    DirectedGraphon,
    SymmetricKernel,
    GeneralKernel,
};

std::string kernel_class_name(KernelClass c);
KernelClass kernel_class_from_name(const std::string& name);
bool class_requires_symmetry(KernelClass c);
double class_value_min(KernelClass c);  // 0 for graphons, -1 for kernels

enum class WeightRange { ZeroOne, PlusMinusOne };

// A kernel W and a d-channel signal f, both piecewise constant over a
// weighted partition: kernel(i,j) is the value of W on P_i x P_j, signal
// row i is the value of f on P_i. Immutable by convention after construction.
struct StepKernelSignal {
    Partition partition;
    Matrix kernel;       // n x n
    Matrix signal;       // n x d
    KernelClass kclass = KernelClass::Graphon;
    double signal_radius = 1.0;

    int parts() const { return partition.parts(); }
    int channels() const { return signal.cols; }
};

// Adjacency + node features, the discrete counterpart of StepKernelSignal.
struct GraphSignal {
    Matrix adjacency;  // n x n
    Matrix features;   // n x d
    bool directed = false;
    WeightRange weight_range = WeightRange::ZeroOne;
    double signal_radius = 1.0;

    int nodes() const { return adjacency.rows; }
    int channels() const { return features.cols; }
};

struct Violation {
    std::string invariant;  // e.g. "value range", "symmetry"
    std::string where;      // offending index, e.g. "kernel[0][1]"
};

std::vector<Violation> validate(const StepKernelSignal& x, const Tolerances& tol = {});
std::vector<Violation> validate(const GraphSignal& g, const Tolerances& tol = {});
void require_valid(const StepKernelSignal& x, const Tolerances& tol = {});
void require_valid(const GraphSignal& g, const Tolerances& tol = {});

KernelClass derive_class(bool directed, WeightRange range);

// Step object induced by a graph-signal: n equal parts, kernel = adjacency,
// signal = features.
StepKernelSignal induce(const GraphSignal& g);

// Default cap for common refinements; beyond it refine_to_common refuses
// rather than approximating.
constexpr int64_t kDefaultLcmCap = 4096;

// Represent both objects on the equipartition with lcm(n_a, n_b) parts,
// replicating values blockwise. Requires equipartitions.
std::pair<StepKernelSignal, StepKernelSignal> refine_to_common(const StepKernelSignal& a,
                                                               const StepKernelSignal& b,
                                                               int64_t lcm_cap = kDefaultLcmCap);

// Refine a single equipartition object to m parts (m a multiple of n).
StepKernelSignal refine_equipartition(const StepKernelSignal& x, int64_t m);

}  // namespace graphonlab
