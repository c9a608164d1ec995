#pragma once

#include "graphonlab/core.hpp"
#include "graphonlab/mpnn.hpp"

namespace graphonlab {
namespace gen {

// Random step object of the given class: kernel entries uniform in the class
// range (symmetrized when required), signal entries uniform in [-r, r].
StepKernelSignal random_step(KernelClass cls, int n, int d, double r, uint64_t seed,
                             bool uniform_masses = true);

GraphSignal random_graph(bool directed, WeightRange range, int n, int d, double r, uint64_t seed,
                         bool simple_weights = false);

struct MpnnGenOptions {
    int depth = 2;
    int pairs = 1;        // K
    int hidden_dim = 2;   // d_t and p_t
    bool readout = true;
    // Scale presets for the affine entries. "certified" keeps every
    // constituent Lipschitz bound and formal bias in (1, 2], as the growth
    // bounds require; "contractive" keeps them at or below 1 so forward
    // values stay tame.
    bool contractive = false;
};

mpnn::MpnnSpec random_mpnn(int input_dim, const MpnnGenOptions& opts, uint64_t seed);

}  // namespace gen
}  // namespace graphonlab
