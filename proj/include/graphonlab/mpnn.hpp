#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphonlab/core.hpp"

namespace graphonlab {
namespace mpnn {

enum class Activation { Identity, Relu, Tanh, Clamp };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

// One stage of a function chain: an affine map or a 1-Lipschitz scalar
// activation applied elementwise.
struct Stage {
    bool is_affine = false;
    Matrix matrix;             // out_dim x in_dim
    std::vector<double> bias;  // out_dim
    Activation act = Activation::Identity;

    static Stage affine(Matrix m, std::vector<double> b);
    static Stage activation(Activation a);
};

// Composition chain of affine maps and activations. The Lipschitz bound is
// the product of affine infinity operator norms; the formal bias is the
// infinity norm of the chain evaluated at zero. Both are recomputable, never
// merely declared.
struct FuncSpec {
    int input_dim = 0;
    std::vector<Stage> chain;

    int output_dim() const;
    void check() const;
    std::vector<double> apply(const std::vector<double>& x) const;
    double lipschitz_bound() const;
    double formal_bias() const;

    static FuncSpec identity(int dim);
    static FuncSpec constant(int in_dim, std::vector<double> value);
    static FuncSpec affine_map(Matrix m, std::vector<double> b);
};

struct MessagePair {
    FuncSpec receiver;
    FuncSpec transmitter;
};

struct MpnnLayer {
    std::vector<MessagePair> pairs;  // K receiver/transmitter pairs
    FuncSpec update;                 // (d_prev + p) -> d_next
};

struct MpnnSpec {
    std::vector<MpnnLayer> layers;
    std::optional<FuncSpec> readout;

    int depth() const { return static_cast<int>(layers.size()); }
    int input_dim() const;
    void check() const;  // dimension-chain consistency
};

// phi(a, b) = sum_k receiver_k(a) (*) transmitter_k(b), elementwise product.
std::vector<double> message(const MpnnLayer& layer, const std::vector<double>& a,
                            const std::vector<double>& b);

struct ForwardResult {
    std::vector<Matrix> hidden;  // hidden node/part signals per layer, 1..T
    std::optional<std::vector<double>> readout;
};

// Normalized-sum aggregation: agg_i = (1/n) sum_j a_ij phi(f_i, f_j);
// readout psi((1/n) sum_j f_j).
ForwardResult apply_graph(const MpnnSpec& m, const GraphSignal& g);

// Integral aggregation over a step object: agg_i = sum_j mu_j W_ij phi(f_i, f_j).
// For equipartitions this runs the exact same arithmetic as apply_graph.
ForwardResult apply_step(const MpnnSpec& m, const StepKernelSignal& x);

// Hidden layer t as a step kernel-signal on x's partition (kernel unchanged).
StepKernelSignal hidden_as_step(const StepKernelSignal& x, const Matrix& hidden);

struct CommutativityReport {
    std::vector<double> layer_deviation;
    double readout_deviation = 0.0;
    double max_deviation = 0.0;
    bool pass = false;
    double tol = 0.0;
};

// Compares inducing-then-applying against applying-then-inducing, layer by
// layer and at readout.
CommutativityReport check_commutativity(const MpnnSpec& m, const GraphSignal& g, double tol);

struct MpnnMetadata {
    double lipschitz = 0.0;    // max over all constituent Lipschitz bounds
    double formal_bias = 0.0;  // max formal bias
    int message_terms = 0;     // max K over layers
    int depth = 0;
    int max_width = 0;  // max signal dimension entering any layer
    bool has_readout = false;
};

MpnnMetadata lipschitz_metadata(const MpnnSpec& m);

}  // namespace mpnn
}  // namespace graphonlab
