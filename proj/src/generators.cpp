#include "graphonlab/generators.hpp"

#include <algorithm>
#include <cmath>

namespace graphonlab {
namespace gen {

StepKernelSignal random_step(KernelClass cls, int n, int d, double r, uint64_t seed,
                             bool uniform_masses) {
    SplitMix64 rng(seed);
    StepKernelSignal x;
    if (uniform_masses) {
        x.partition = Partition::uniform(n);
    } else {
        std::vector<double> masses(static_cast<size_t>(n));
        double sum = 0.0;
        for (double& m : masses) {
            m = 0.1 + rng.next_double();
            sum += m;
        }
        double acc = 0.0;
        for (int i = 0; i < n - 1; ++i) {
            masses[i] /= sum;
            acc += masses[i];
        }
        masses[n - 1] = 1.0 - acc;  // exact unit total
        x.partition = Partition::general(masses);
    }
    x.kclass = cls;
    x.signal_radius = r;
    double lo = class_value_min(cls);
    x.kernel = Matrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x.kernel.at(i, j) = rng.next_double(lo, 1.0);
    if (class_requires_symmetry(cls))
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) x.kernel.at(j, i) = x.kernel.at(i, j);
    x.signal = Matrix(n, d);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < d; ++c) x.signal.at(i, c) = rng.next_double(-r, r);
    return x;
}

GraphSignal random_graph(bool directed, WeightRange range, int n, int d, double r, uint64_t seed,
                         bool simple_weights) {
    SplitMix64 rng(seed);
    GraphSignal g;
    g.directed = directed;
    g.weight_range = range;
    g.signal_radius = r;
    double lo = range == WeightRange::ZeroOne ? 0.0 : -1.0;
    g.adjacency = Matrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g.adjacency.at(i, j) =
                simple_weights ? (rng.next_bernoulli(0.5) ? 1.0 : 0.0) : rng.next_double(lo, 1.0);
    if (!directed)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) g.adjacency.at(j, i) = g.adjacency.at(i, j);
    g.features = Matrix(n, d);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < d; ++c) g.features.at(i, c) = rng.next_double(-r, r);
    return g;
}

namespace {

// Single affine stage with controlled infinity norms. In certified mode the
// operator norm lands in (1, 1.8] and the bias in (1, 1.5]; in contractive
// mode both stay at or below 1 (bias <= 0.4).
mpnn::FuncSpec random_func(SplitMix64& rng, int in_dim, int out_dim, bool contractive) {
    Matrix m(out_dim, in_dim);
    double target = contractive ? rng.next_double(0.4, 0.95) : rng.next_double(1.1, 1.8);
    for (int i = 0; i < out_dim; ++i) {
        std::vector<double> row(static_cast<size_t>(in_dim));
        double sum = 0.0;
        for (double& v : row) {
            v = rng.next_double(-1.0, 1.0);
            sum += std::abs(v);
        }
        double scale = sum > 0 ? target / sum : 0.0;
        for (int j = 0; j < in_dim; ++j) m.at(i, j) = row[j] * scale;
    }
    std::vector<double> bias(static_cast<size_t>(out_dim));
    double bmax = contractive ? 0.4 : rng.next_double(1.05, 1.5);
    for (size_t i = 0; i < bias.size(); ++i)
        bias[i] = (i == 0 ? bmax : rng.next_double(-bmax, bmax));
    mpnn::FuncSpec f = mpnn::FuncSpec::affine_map(std::move(m), std::move(bias));
    if (rng.next_bernoulli(0.3)) f.chain.insert(f.chain.begin(), mpnn::Stage::activation(
                                      rng.next_bernoulli(0.5) ? mpnn::Activation::Relu
                                                              : mpnn::Activation::Tanh));
    return f;
}

}  // namespace

mpnn::MpnnSpec random_mpnn(int input_dim, const MpnnGenOptions& opts, uint64_t seed) {
    SplitMix64 rng(seed);
    mpnn::MpnnSpec m;
    int d = input_dim;
    for (int t = 0; t < opts.depth; ++t) {
        mpnn::MpnnLayer layer;
        int p = opts.hidden_dim;
        for (int k = 0; k < opts.pairs; ++k)
            layer.pairs.push_back({random_func(rng, d, p, opts.contractive),
                                   random_func(rng, d, p, opts.contractive)});
        int dn = opts.hidden_dim;
        layer.update = random_func(rng, d + p, dn, opts.contractive);
        m.layers.push_back(std::move(layer));
        d = dn;
    }
    if (opts.readout) m.readout = random_func(rng, d, opts.hidden_dim, opts.contractive);
    m.check();
    return m;
}

}  // namespace gen
}  // namespace graphonlab
