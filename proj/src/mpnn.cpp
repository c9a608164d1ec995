#include "graphonlab/mpnn.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace graphonlab {
namespace mpnn {

std::string activation_name(Activation a) {
    switch (a) {
        case Activation::Identity: return "identity";
        case Activation::Relu: return "relu";
        case Activation::Tanh: return "tanh";
        case Activation::Clamp: return "clamp";
    }
    throw std::logic_error("bad activation");
}

Activation activation_from_name(const std::string& name) {
    if (name == "identity") return Activation::Identity;
    if (name == "relu") return Activation::Relu;
    if (name == "tanh") return Activation::Tanh;
    if (name == "clamp") return Activation::Clamp;
    throw std::invalid_argument("unknown activation: " + name);
}

Stage Stage::affine(Matrix m, std::vector<double> b) {
    if (m.rows != static_cast<int>(b.size()))
        throw std::invalid_argument("affine stage: bias length must match rows");
    Stage s;
    s.is_affine = true;
    s.matrix = std::move(m);
    s.bias = std::move(b);
    return s;
}

Stage Stage::activation(Activation a) {
    Stage s;
    s.act = a;
    return s;
}

namespace {

double apply_activation(Activation a, double x) {
    switch (a) {
        case Activation::Identity: return x;
        case Activation::Relu: return x > 0.0 ? x : 0.0;
        case Activation::Tanh: return std::tanh(x);
        case Activation::Clamp: return std::min(1.0, std::max(-1.0, x));
    }
    return x;
}

double inf_operator_norm(const Matrix& m) {
    double norm = 0.0;
    for (int i = 0; i < m.rows; ++i) {
        double row = 0.0;
        for (int j = 0; j < m.cols; ++j) row += std::abs(m.at(i, j));
        norm = std::max(norm, row);
    }
    return norm;
}

}  // namespace

int FuncSpec::output_dim() const {
    int dim = input_dim;
    for (const auto& s : chain)
        if (s.is_affine) dim = s.matrix.rows;
    return dim;
}

void FuncSpec::check() const {
    if (input_dim < 1) throw std::invalid_argument("function input dimension must be positive");
    int dim = input_dim;
    for (const auto& s : chain) {
        if (s.is_affine) {
            if (s.matrix.cols != dim)
                throw std::invalid_argument("affine stage input dimension mismatch");
            dim = s.matrix.rows;
        }
    }
}

std::vector<double> FuncSpec::apply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != input_dim)
        throw std::invalid_argument("function input dimension mismatch");
    std::vector<double> cur = x;
    for (const auto& s : chain) {
        if (s.is_affine) {
            std::vector<double> next(static_cast<size_t>(s.matrix.rows));
            for (int i = 0; i < s.matrix.rows; ++i) {
                double acc = s.bias[i];
                for (int j = 0; j < s.matrix.cols; ++j) acc += s.matrix.at(i, j) * cur[j];
                next[i] = acc;
            }
            cur = std::move(next);
        } else {
            for (double& v : cur) v = apply_activation(s.act, v);
        }
    }
    return cur;
}

double FuncSpec::lipschitz_bound() const {
    double l = 1.0;
    for (const auto& s : chain)
        if (s.is_affine) l *= inf_operator_norm(s.matrix);
    return l;
}

double FuncSpec::formal_bias() const {
    std::vector<double> z(static_cast<size_t>(input_dim), 0.0);
    std::vector<double> out = apply(z);
    double b = 0.0;
    for (double v : out) b = std::max(b, std::abs(v));
    return b;
}

FuncSpec FuncSpec::identity(int dim) {
    FuncSpec f;
    f.input_dim = dim;
    return f;
}

FuncSpec FuncSpec::constant(int in_dim, std::vector<double> value) {
    FuncSpec f;
    f.input_dim = in_dim;
    Matrix zero(static_cast<int>(value.size()), in_dim);
    f.chain.push_back(Stage::affine(std::move(zero), std::move(value)));
    return f;
}

FuncSpec FuncSpec::affine_map(Matrix m, std::vector<double> b) {
    FuncSpec f;
    f.input_dim = m.cols;
    f.chain.push_back(Stage::affine(std::move(m), std::move(b)));
    return f;
}

int MpnnSpec::input_dim() const {
    if (layers.empty()) throw std::invalid_argument("MPNN needs at least one layer");
    return layers[0].pairs.empty() ? layers[0].update.input_dim
                                   : layers[0].pairs[0].receiver.input_dim;
}

void MpnnSpec::check() const {
    if (layers.empty()) throw std::invalid_argument("MPNN needs at least one layer");
    int d = input_dim();
    for (size_t t = 0; t < layers.size(); ++t) {
        const auto& layer = layers[t];
        if (layer.pairs.empty())
            throw std::invalid_argument("layer " + std::to_string(t) + " has no message pairs");
        int p = layer.pairs[0].receiver.output_dim();
        for (const auto& pr : layer.pairs) {
            pr.receiver.check();
            pr.transmitter.check();
            if (pr.receiver.input_dim != d || pr.transmitter.input_dim != d)
                throw std::invalid_argument("message input dimension mismatch at layer " +
                                            std::to_string(t));
            if (pr.receiver.output_dim() != p || pr.transmitter.output_dim() != p)
                throw std::invalid_argument("message output dimension mismatch at layer " +
                                            std::to_string(t));
        }
        layer.update.check();
        if (layer.update.input_dim != d + p)
            throw std::invalid_argument("update input dimension mismatch at layer " +
                                        std::to_string(t));
        d = layer.update.output_dim();
    }
    if (readout) {
        readout->check();
        if (readout->input_dim != d)
            throw std::invalid_argument("readout input dimension mismatch");
    }
}

std::vector<double> message(const MpnnLayer& layer, const std::vector<double>& a,
                            const std::vector<double>& b) {
    if (layer.pairs.empty()) throw std::invalid_argument("layer has no message pairs");
    int p = layer.pairs[0].receiver.output_dim();
    std::vector<double> out(static_cast<size_t>(p), 0.0);
    for (const auto& pr : layer.pairs) {
        std::vector<double> rec = pr.receiver.apply(a);
        std::vector<double> trans = pr.transmitter.apply(b);
        for (int c = 0; c < p; ++c) out[c] += rec[c] * trans[c];
    }
    return out;
}

namespace {

bool all_equal_masses(const std::vector<double>& mu) {
    for (double m : mu)
        if (m != mu[0]) return false;
    return true;
}

// Shared forward pass. With uniform weights the per-node sums are scaled once
// at the end, so the graph and induced-step paths run identical arithmetic.
ForwardResult forward(const MpnnSpec& m, const Matrix& adj, const std::vector<double>* masses,
                      const Matrix& features) {
    m.check();
    if (features.cols != m.input_dim())
        throw std::invalid_argument("input feature dimension mismatch");
    int n = adj.rows;
    bool uniform = masses == nullptr || all_equal_masses(*masses);
    double scale = 1.0 / n;

    ForwardResult out;
    Matrix cur = features;
    for (const auto& layer : m.layers) {
        int p = layer.pairs[0].receiver.output_dim();
        int dn = layer.update.output_dim();
        Matrix next(n, dn);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int i = 0; i < n; ++i) {
            std::vector<double> fi(cur.row(i), cur.row(i) + cur.cols);
            std::vector<double> agg(static_cast<size_t>(p), 0.0);
            for (int j = 0; j < n; ++j) {
                double w = adj.at(i, j);
                std::vector<double> fj(cur.row(j), cur.row(j) + cur.cols);
                std::vector<double> msg = message(layer, fi, fj);
                if (uniform) {
                    for (int c = 0; c < p; ++c) agg[c] += w * msg[c];
                } else {
                    for (int c = 0; c < p; ++c) agg[c] += (*masses)[j] * w * msg[c];
                }
            }
            if (uniform)
                for (int c = 0; c < p; ++c) agg[c] *= scale;
            std::vector<double> in(fi);
            in.insert(in.end(), agg.begin(), agg.end());
            std::vector<double> updated = layer.update.apply(in);
            for (int c = 0; c < dn; ++c) next.at(i, c) = updated[c];
        }
        out.hidden.push_back(next);
        cur = std::move(next);
    }
    if (m.readout) {
        std::vector<double> mean(static_cast<size_t>(cur.cols), 0.0);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < cur.cols; ++c)
                mean[c] += (uniform ? cur.at(i, c) : (*masses)[i] * cur.at(i, c));
        if (uniform)
            for (double& v : mean) v *= scale;
        out.readout = m.readout->apply(mean);
    }
    return out;
}

}  // namespace

ForwardResult apply_graph(const MpnnSpec& m, const GraphSignal& g) {
    return forward(m, g.adjacency, nullptr, g.features);
}

ForwardResult apply_step(const MpnnSpec& m, const StepKernelSignal& x) {
    return forward(m, x.kernel, &x.partition.masses, x.signal);
}

StepKernelSignal hidden_as_step(const StepKernelSignal& x, const Matrix& hidden) {
    StepKernelSignal out = x;
    out.signal = hidden;
    double r = 0.0;
    for (double v : hidden.data) r = std::max(r, std::abs(v));
    out.signal_radius = std::max(r, 1e-300);
    return out;
}

CommutativityReport check_commutativity(const MpnnSpec& m, const GraphSignal& g, double tol) {
    ForwardResult via_graph = apply_graph(m, g);
    ForwardResult via_step = apply_step(m, induce(g));
    CommutativityReport rep;
    rep.tol = tol;
    for (size_t t = 0; t < via_graph.hidden.size(); ++t) {
        double dev = max_abs(via_graph.hidden[t] - via_step.hidden[t]);
        rep.layer_deviation.push_back(dev);
        rep.max_deviation = std::max(rep.max_deviation, dev);
    }
    if (via_graph.readout && via_step.readout) {
        for (size_t c = 0; c < via_graph.readout->size(); ++c)
            rep.readout_deviation = std::max(
                rep.readout_deviation, std::abs((*via_graph.readout)[c] - (*via_step.readout)[c]));
        rep.max_deviation = std::max(rep.max_deviation, rep.readout_deviation);
    }
    rep.pass = rep.max_deviation <= tol;
    return rep;
}

MpnnMetadata lipschitz_metadata(const MpnnSpec& m) {
    m.check();
    MpnnMetadata meta;
    meta.depth = m.depth();
    meta.has_readout = m.readout.has_value();
    int d = m.input_dim();
    meta.max_width = d;
    auto absorb = [&](const FuncSpec& f) {
        meta.lipschitz = std::max(meta.lipschitz, f.lipschitz_bound());
        meta.formal_bias = std::max(meta.formal_bias, f.formal_bias());
    };
    for (const auto& layer : m.layers) {
        meta.message_terms = std::max(meta.message_terms, static_cast<int>(layer.pairs.size()));
        for (const auto& pr : layer.pairs) {
            absorb(pr.receiver);
            absorb(pr.transmitter);
        }
        absorb(layer.update);
        d = layer.update.output_dim();
        meta.max_width = std::max(meta.max_width, d);
    }
    if (m.readout) absorb(*m.readout);
    return meta;
}

}  // namespace mpnn
}  // namespace graphonlab
