#include "graphonlab/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace graphonlab {
namespace regularity {

namespace {

int group_count(const std::vector<int>& grouping) {
    int g = 0;
    for (int v : grouping) {
        if (v < 0) throw std::invalid_argument("negative group index");
        g = std::max(g, v + 1);
    }
    std::vector<uint8_t> seen(static_cast<size_t>(g), 0);
    for (int v : grouping) seen[v] = 1;
    for (uint8_t s : seen)
        if (!s) throw std::invalid_argument("grouping has an empty group");
    return g;
}

}  // namespace

StepKernelSignal stepping(const StepKernelSignal& x, const std::vector<int>& grouping) {
    int n = x.parts();
    if (static_cast<int>(grouping.size()) != n)
        throw std::invalid_argument("grouping size mismatch");
    int g = group_count(grouping);
    const auto& mu = x.partition.masses;

    std::vector<double> gmass(static_cast<size_t>(g), 0.0);
    for (int i = 0; i < n; ++i) gmass[grouping[i]] += mu[i];

    StepKernelSignal out;
    out.partition = Partition::general(gmass);
    out.kclass = x.kclass;
    out.signal_radius = x.signal_radius;
    out.kernel = Matrix(g, g);
    out.signal = Matrix(g, x.channels());

    Matrix ksum(g, g);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            ksum.at(grouping[i], grouping[j]) += mu[i] * mu[j] * x.kernel.at(i, j);
    double lo = class_value_min(x.kclass);
    for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b) {
            double v = ksum.at(a, b) / (gmass[a] * gmass[b]);
            // averages stay in range; rounding noise must not leave it
            out.kernel.at(a, b) = std::min(1.0, std::max(lo, v));
        }
    if (class_requires_symmetry(x.kclass))
        for (int a = 0; a < g; ++a)
            for (int b = a + 1; b < g; ++b) out.kernel.at(b, a) = out.kernel.at(a, b);

    Matrix ssum(g, x.channels());
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < x.channels(); ++c)
            ssum.at(grouping[i], c) += mu[i] * x.signal.at(i, c);
    double r = x.signal_radius;
    for (int a = 0; a < g; ++a)
        for (int c = 0; c < x.channels(); ++c)
            out.signal.at(a, c) = std::min(r, std::max(-r, ssum.at(a, c) / gmass[a]));

    return out;
}

StepKernelSignal expand_grouping(const StepKernelSignal& coarse, const std::vector<int>& grouping,
                                 const Partition& fine) {
    int n = fine.parts();
    if (static_cast<int>(grouping.size()) != n)
        throw std::invalid_argument("grouping size mismatch");
    StepKernelSignal out;
    out.partition = fine;
    out.kclass = coarse.kclass;
    out.signal_radius = coarse.signal_radius;
    out.kernel = Matrix(n, n);
    out.signal = Matrix(n, coarse.channels());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            out.kernel.at(i, j) = coarse.kernel.at(grouping[i], grouping[j]);
        for (int c = 0; c < coarse.channels(); ++c)
            out.signal.at(i, c) = coarse.signal.at(grouping[i], c);
    }
    return out;
}

EquitizeMap equitize(const Partition& p, int n) {
    int k = p.parts();
    if (n <= k) throw std::invalid_argument("equitize needs n > current part count");
    EquitizeMap map;
    map.partition = Partition::uniform(n);
    double slice = 1.0 / n;

    // Full 1/n slices per source part; remainders go to the pool.
    std::vector<std::pair<int, double>> pool;  // (source, residual mass)
    for (int i = 0; i < k; ++i) {
        double m = p.masses[i];
        int full = static_cast<int>(std::floor(m * n + 1e-9));
        double rem = m - full * slice;
        if (rem < 1e-12 && full > 0) {
            // exact multiple: keep the last slice out as the remainder, per
            // the residual-pool construction
            full -= 1;
            rem = slice;
        }
        for (int s = 0; s < full; ++s) {
            EquitizedPart part;
            part.sources.push_back({i, slice});
            map.parts.push_back(std::move(part));
        }
        if (rem > 1e-15) pool.push_back({i, rem});
    }

    int h = n - static_cast<int>(map.parts.size());
    // Cut the concatenated residuals into h slices of mass 1/n.
    size_t cursor = 0;
    double taken = 0.0;
    for (int z = 0; z < h; ++z) {
        EquitizedPart part;
        part.from_pool = true;
        double need = slice;
        while (need > 1e-15 && cursor < pool.size()) {
            double avail = pool[cursor].second - taken;
            double use = std::min(avail, need);
            if (use > 1e-15) part.sources.push_back({pool[cursor].first, use});
            taken += use;
            need -= use;
            if (pool[cursor].second - taken <= 1e-15) {
                ++cursor;
                taken = 0.0;
            }
        }
        map.parts.push_back(std::move(part));
    }
    if (static_cast<int>(map.parts.size()) != n)
        throw std::logic_error("equitize produced wrong part count");
    return map;
}

StepKernelSignal apply_equitize(const StepKernelSignal& x, const EquitizeMap& map) {
    int n = map.partition.parts();
    StepKernelSignal out;
    out.partition = map.partition;
    out.kclass = x.kclass;
    out.signal_radius = x.signal_radius;
    out.kernel = Matrix(n, n);
    out.signal = Matrix(n, x.channels());
    for (int i = 0; i < n; ++i) {
        const auto& pi = map.parts[i];
        if (pi.from_pool) continue;  // zero on pool cells
        int si = pi.sources[0].first;
        for (int j = 0; j < n; ++j) {
            const auto& pj = map.parts[j];
            if (pj.from_pool) continue;
            out.kernel.at(i, j) = x.kernel.at(si, pj.sources[0].first);
        }
        for (int c = 0; c < x.channels(); ++c) out.signal.at(i, c) = x.signal.at(si, c);
    }
    return out;
}

Decomposition weak_regularity_decompose(const StepKernelSignal& x, int m, WitnessMode mode,
                                        const norms::CutNormParams& cut) {
    if (m < 1) throw std::invalid_argument("decomposition needs m >= 1");
    const auto& mu = x.partition.masses;
    Matrix residual = x.kernel;

    auto witness = [&](const Matrix& R) {
        return mode == WitnessMode::Exact ? norms::cut_norm_kernel_exact(R, mu, cut)
                                          : norms::cut_norm_kernel_heuristic(R, mu, cut);
    };

    Decomposition d;
    d.steps = m;
    d.exact_witnesses = mode == WitnessMode::Exact;
    for (int step = 0; step < m; ++step) {
        norms::CutNormResult w = witness(residual);
        d.witness_values.push_back(w.value);
        if (w.witness_S.empty() || w.witness_T.empty()) {
            d.residual_cutnorm_estimate = w.value;
            return d;  // residual already flat
        }
        double ms = 0.0, mt = 0.0;
        for (int i : w.witness_S) ms += mu[i];
        for (int j : w.witness_T) mt += mu[j];
        double integral = norms::rectangle_sum(residual, mu, w.witness_S, w.witness_T);
        double gamma = integral / (ms * mt);
        for (int i : w.witness_S)
            for (int j : w.witness_T) residual.at(i, j) -= gamma;
        d.terms.push_back({gamma, w.witness_S, w.witness_T});
    }
    d.residual_cutnorm_estimate = witness(residual).value;
    d.witness_values.push_back(d.residual_cutnorm_estimate);
    return d;
}

Matrix reconstruct_terms(const Decomposition& d, int parts) {
    Matrix m(parts, parts);
    for (const auto& t : d.terms)
        for (int i : t.S)
            for (int j : t.T) m.at(i, j) += t.gamma;
    return m;
}

namespace {

// Largest epsilon whose regularity part requirement fits within n_target
// parts: coeff * c / eps^2 <= floor(log2 n_target), with c fixed at its
// infimum over c > 1.
double regularity_ceiling(int n_target, double coeff) {
    double bits = std::floor(std::log2(static_cast<double>(n_target)));
    if (bits < 1.0) return kInf;
    return std::sqrt(coeff / bits);
}

}  // namespace

StepApproximation best_step_approximation(const StepKernelSignal& x, int n_target,
                                          int decompose_steps, WitnessMode mode,
                                          const norms::CutNormParams& cut,
                                          double exponent_coefficient) {
    if (n_target < 1) throw std::invalid_argument("n_target must be >= 1");
    int n = x.parts();
    const auto& mu = x.partition.masses;

    // Signature of each part: its kernel row/column and signal values, plus
    // witness-set memberships from the greedy decomposition.
    Decomposition d = weak_regularity_decompose(x, decompose_steps, mode, cut);
    std::vector<std::vector<double>> sig(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& s = sig[i];
        for (int j = 0; j < n; ++j) {
            s.push_back(x.kernel.at(i, j));
            s.push_back(x.kernel.at(j, i));
        }
        for (int c = 0; c < x.channels(); ++c) s.push_back(x.signal.at(i, c));
        for (const auto& t : d.terms) {
            s.push_back(std::binary_search(t.S.begin(), t.S.end(), i) ? 1.0 : 0.0);
            s.push_back(std::binary_search(t.T.begin(), t.T.end(), i) ? 1.0 : 0.0);
        }
    }
    std::map<std::vector<double>, int> groups;
    std::vector<int> grouping(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto [it, inserted] = groups.insert({sig[i], static_cast<int>(groups.size())});
        grouping[i] = it->second;
    }
    int g = static_cast<int>(groups.size());

    // Merge smallest-mass groups until within budget.
    std::vector<double> gmass(static_cast<size_t>(g), 0.0);
    for (int i = 0; i < n; ++i) gmass[grouping[i]] += mu[i];
    std::vector<int> remap(static_cast<size_t>(g));
    std::iota(remap.begin(), remap.end(), 0);
    auto live_groups = [&]() {
        std::vector<int> live;
        for (int a = 0; a < g; ++a)
            if (remap[a] == a) live.push_back(a);
        return live;
    };
    while (static_cast<int>(live_groups().size()) > n_target) {
        auto live = live_groups();
        std::sort(live.begin(), live.end(),
                  [&](int a, int b) { return gmass[a] != gmass[b] ? gmass[a] < gmass[b] : a < b; });
        int a = live[0], b = live[1];
        remap[b] = a;
        gmass[a] += gmass[b];
    }
    // Compress group ids.
    std::vector<int> final_id(static_cast<size_t>(g), -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        int r = grouping[i];
        while (remap[r] != r) r = remap[r];
        if (final_id[r] < 0) final_id[r] = next++;
        grouping[i] = final_id[r];
    }

    StepApproximation out;
    out.grouping = grouping;
    out.stepped = stepping(x, grouping);
    StepKernelSignal back = expand_grouping(out.stepped, grouping, x.partition);
    norms::CutMetricResult gap = norms::cut_metric(x, back, cut);
    out.gap = gap.value;
    out.gap_exact = gap.exact();
    out.exponent_coefficient = exponent_coefficient;
    out.theoretical_epsilon = regularity_ceiling(n_target, exponent_coefficient);
    return out;
}

}  // namespace regularity
}  // namespace graphonlab
