#include "graphonlab/norms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace graphonlab {
namespace norms {

namespace {

// Lexicographic order on witness index sets ({0} < {0,1} < {1}); used as the
// deterministic tie-break everywhere so results do not depend on thread count.
bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool witness_less(const std::vector<int>& s1, const std::vector<int>& t1,
                  const std::vector<int>& s2, const std::vector<int>& t2) {
    if (lex_less(s1, s2)) return true;
    if (lex_less(s2, s1)) return false;
    return lex_less(t1, t2);
}

std::vector<int> mask_to_indices(uint32_t mask) {
    std::vector<int> out;
    while (mask) {
        int b = std::countr_zero(mask);
        out.push_back(b);
        mask &= mask - 1;
    }
    return out;
}

std::vector<int> flags_to_indices(const std::vector<uint8_t>& flags) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(flags.size()); ++i)
        if (flags[i]) out.push_back(i);
    return out;
}

}  // namespace

double rectangle_sum(const Matrix& D, const std::vector<double>& masses,
                     const std::vector<int>& S, const std::vector<int>& T) {
    double total = 0.0;
    for (int i : S) {
        double row = 0.0;
        for (int j : T) row += masses[j] * D.at(i, j);
        total += masses[i] * row;
    }
    return total;
}

std::vector<double> signal_sum(const Matrix& F, const std::vector<double>& masses,
                               const std::vector<int>& S) {
    std::vector<double> acc(static_cast<size_t>(F.cols), 0.0);
    for (int j : S)
        for (int c = 0; c < F.cols; ++c) acc[c] += masses[j] * F.at(j, c);
    return acc;
}

namespace {

struct BlockBest {
    double value = -1.0;
    uint32_t s_mask = 0;
    bool negative_side = false;
};

// Finalize an S-candidate: rebuild column sums from scratch, read off the
// optimal T for the chosen sign, and recompute the value canonically.
CutNormResult finalize_exact(const Matrix& D, const std::vector<double>& masses,
                             uint32_t s_mask, bool negative_side) {
    int n = D.rows;
    auto S = mask_to_indices(s_mask);
    std::vector<int> T;
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i : S) col += masses[i] * masses[j] * D.at(i, j);
        if (negative_side ? (col < 0.0) : (col > 0.0)) T.push_back(j);
    }
    CutNormResult r;
    r.witness_S = std::move(S);
    r.witness_T = std::move(T);
    r.value = std::abs(rectangle_sum(D, masses, r.witness_S, r.witness_T));
    r.exact = true;
    return r;
}

}  // namespace

CutNormResult cut_norm_kernel_exact(const Matrix& D, const std::vector<double>& masses,
                                    const CutNormParams& params) {
    int n = D.rows;
    if (n != D.cols || n != static_cast<int>(masses.size()))
        throw std::invalid_argument("cut norm: shape mismatch");
    if (n > params.exact_cap)
        throw CapExceeded("exact cut norm needs n <= " + std::to_string(params.exact_cap) +
                          ", got n = " + std::to_string(n));

    // Precompute the mass-weighted matrix once.
    Matrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M.at(i, j) = masses[i] * masses[j] * D.at(i, j);

    // Split the 2^n subsets into fixed blocks by the high bits. The block
    // layout depends only on n, so enumeration paths (and hence rounding) are
    // identical for any thread count.
    const int high_bits = std::min(n, 6);
    const int low_bits = n - high_bits;
    const uint32_t blocks = 1u << high_bits;
    const uint32_t block_size = 1u << low_bits;

    std::vector<BlockBest> best(blocks);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int64_t bi = 0; bi < static_cast<int64_t>(blocks); ++bi) {
        uint32_t base = static_cast<uint32_t>(bi) << low_bits;
        std::vector<double> col(static_cast<size_t>(n), 0.0);
        auto rebuild = [&](uint32_t mask) {
            std::fill(col.begin(), col.end(), 0.0);
            for (uint32_t m = mask; m;) {
                int i = std::countr_zero(m);
                m &= m - 1;
                for (int j = 0; j < n; ++j) col[j] += M.at(i, j);
            }
        };
        uint32_t s_mask = base;
        rebuild(s_mask);
        BlockBest b;
        auto consider = [&](uint32_t mask) {
            double pos = 0.0, neg = 0.0;
            for (int j = 0; j < n; ++j) {
                if (col[j] > 0.0) pos += col[j];
                else neg -= col[j];
            }
            double v = std::max(pos, neg);
            if (v > b.value) {
                b.value = v;
                b.s_mask = mask;
                b.negative_side = neg > pos;
            }
        };
        consider(s_mask);
        for (uint32_t step = 1; step < block_size; ++step) {
            if ((step & 0xFFFu) == 0) {
                // periodic refresh bounds incremental rounding drift
                s_mask = base | (step ^ (step >> 1));
                rebuild(s_mask);
            } else {
                int flip = std::countr_zero(step);
                uint32_t gray = step ^ (step >> 1);
                s_mask = base | gray;
                if (gray & (1u << flip))
                    for (int j = 0; j < n; ++j) col[j] += M.at(flip, j);
                else
                    for (int j = 0; j < n; ++j) col[j] -= M.at(flip, j);
            }
            consider(s_mask);
        }
        best[bi] = b;
    }

    // Deterministic reduction in block order; every block winner is
    // re-evaluated canonically from its witness pair, so incremental rounding
    // never leaks into the reported value.
    CutNormResult result = finalize_exact(D, masses, best[0].s_mask, best[0].negative_side);
    for (uint32_t bi = 1; bi < blocks; ++bi) {
        CutNormResult cand = finalize_exact(D, masses, best[bi].s_mask, best[bi].negative_side);
        if (cand.value > result.value ||
            (cand.value == result.value &&
             witness_less(cand.witness_S, cand.witness_T, result.witness_S, result.witness_T))) {
            result = std::move(cand);
        }
    }
    return result;
}

namespace {

struct AltState {
    std::vector<uint8_t> in_S, in_T;
};

// One alternating-maximization run for a fixed sign orientation. Monotone in
// the signed rectangle sum; terminates when neither side changes.
CutNormResult alternate_from(const Matrix& M, const Matrix& D, const std::vector<double>& masses,
                             std::vector<uint8_t> in_S, double sign, int max_iters) {
    int n = D.rows;
    std::vector<uint8_t> in_T(static_cast<size_t>(n), 0);
    for (int iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        // optimal T given S
        for (int j = 0; j < n; ++j) {
            double col = 0.0;
            for (int i = 0; i < n; ++i)
                if (in_S[i]) col += M.at(i, j);
            uint8_t want = (sign * col > 0.0) ? 1 : 0;
            if (want != in_T[j]) {
                in_T[j] = want;
                changed = true;
            }
        }
        // optimal S given T
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j)
                if (in_T[j]) row += M.at(i, j);
            uint8_t want = (sign * row > 0.0) ? 1 : 0;
            if (want != in_S[i]) {
                in_S[i] = want;
                changed = true;
            }
        }
        if (!changed) break;
    }
    CutNormResult r;
    r.witness_S = flags_to_indices(in_S);
    r.witness_T = flags_to_indices(in_T);
    r.value = std::abs(rectangle_sum(D, masses, r.witness_S, r.witness_T));
    r.exact = false;
    return r;
}

}  // namespace

CutNormResult cut_norm_kernel_heuristic(const Matrix& D, const std::vector<double>& masses,
                                        const CutNormParams& params) {
    int n = D.rows;
    if (n != D.cols || n != static_cast<int>(masses.size()))
        throw std::invalid_argument("cut norm: shape mismatch");

    Matrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M.at(i, j) = masses[i] * masses[j] * D.at(i, j);

    int restarts = std::max(1, params.restarts);
    std::vector<CutNormResult> per_restart(static_cast<size_t>(restarts));

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int r = 0; r < restarts; ++r) {
        SplitMix64 rng(derive_seed(params.seed, static_cast<uint64_t>(r)));
        std::vector<uint8_t> start(static_cast<size_t>(n), 0);
        int count = 0;
        for (int i = 0; i < n; ++i) {
            start[i] = rng.next_bernoulli(0.5) ? 1 : 0;
            count += start[i];
        }
        if (count == 0) start[static_cast<int>(rng.next_below(static_cast<uint64_t>(n)))] = 1;
        CutNormResult plus = alternate_from(M, D, masses, start, +1.0, params.max_iters);
        CutNormResult minus = alternate_from(M, D, masses, start, -1.0, params.max_iters);
        per_restart[r] = (minus.value > plus.value ||
                          (minus.value == plus.value &&
                           witness_less(minus.witness_S, minus.witness_T, plus.witness_S,
                                        plus.witness_T)))
                             ? minus
                             : plus;
    }

    CutNormResult best = per_restart[0];
    for (int r = 1; r < restarts; ++r) {
        const CutNormResult& c = per_restart[r];
        if (c.value > best.value ||
            (c.value == best.value &&
             witness_less(c.witness_S, c.witness_T, best.witness_S, best.witness_T)))
            best = c;
    }
    return best;
}

CutNormResult cut_norm_kernel(const Matrix& D, const std::vector<double>& masses,
                              const CutNormParams& params) {
    if (D.rows <= params.exact_cap) return cut_norm_kernel_exact(D, masses, params);
    if (!params.allow_heuristic)
        throw CapExceeded("kernel cut norm: n = " + std::to_string(D.rows) +
                          " exceeds exact cap and heuristic is disabled");
    return cut_norm_kernel_heuristic(D, masses, params);
}

namespace {

double positive_part_sum(const Matrix& F, const std::vector<double>& masses,
                         const std::vector<double>& eps) {
    double total = 0.0;
    for (int j = 0; j < F.rows; ++j) {
        double s = 0.0;
        for (int c = 0; c < F.cols; ++c) s += eps[c] * masses[j] * F.at(j, c);
        if (s > 0.0) total += s;
    }
    return total;
}

SignalCutNormResult signal_cut_norm_signs(const Matrix& F, const std::vector<double>& masses) {
    int d = F.cols, n = F.rows;
    uint32_t count = 1u << d;
    std::vector<double> eps(static_cast<size_t>(d));
    std::vector<double> block_val(count);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) firstprivate(eps)
#endif
    for (int64_t mask = 0; mask < static_cast<int64_t>(count); ++mask) {
        for (int c = 0; c < d; ++c) eps[c] = (mask >> c) & 1 ? -1.0 : 1.0;
        block_val[mask] = positive_part_sum(F, masses, eps);
    }
    double best_val = -1.0;
    for (uint32_t mask = 0; mask < count; ++mask) best_val = std::max(best_val, block_val[mask]);

    auto witness_for = [&](uint32_t mask) {
        std::vector<int> S;
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int c = 0; c < d; ++c)
                s += ((mask >> c) & 1 ? -1.0 : 1.0) * masses[j] * F.at(j, c);
            if (s > 0.0) S.push_back(j);
        }
        return S;
    };
    // lexicographically smallest witness among value ties
    std::vector<int> best_S;
    bool have = false;
    for (uint32_t mask = 0; mask < count; ++mask) {
        if (block_val[mask] != best_val) continue;
        auto S = witness_for(mask);
        if (!have || lex_less(S, best_S)) {
            best_S = std::move(S);
            have = true;
        }
    }
    SignalCutNormResult r;
    r.witness_S = std::move(best_S);
    auto acc = signal_sum(F, masses, r.witness_S);
    double v = 0.0;
    for (double a : acc) v += std::abs(a);
    r.value = v / d;
    r.exact = true;
    return r;
}

SignalCutNormResult signal_cut_norm_subsets(const Matrix& F, const std::vector<double>& masses) {
    int d = F.cols, n = F.rows;
    uint32_t count = 1u << n;
    double best_val = -1.0;
    uint32_t best_mask = 0;
    std::vector<double> acc(static_cast<size_t>(d), 0.0);
    for (uint32_t step = 0; step < count; ++step) {
        if (step != 0) {
            int flip = std::countr_zero(step);
            uint32_t gray = step ^ (step >> 1);
            double sign = (gray & (1u << flip)) ? 1.0 : -1.0;
            for (int c = 0; c < d; ++c) acc[c] += sign * masses[flip] * F.at(flip, c);
        }
        double v = 0.0;
        for (int c = 0; c < d; ++c) v += std::abs(acc[c]);
        if (v > best_val) {
            best_val = v;
            best_mask = step == 0 ? 0 : (step ^ (step >> 1));
        }
    }
    SignalCutNormResult r;
    r.witness_S = mask_to_indices(best_mask);
    auto final_acc = signal_sum(F, masses, r.witness_S);
    double v = 0.0;
    for (double a : final_acc) v += std::abs(a);
    r.value = v / d;
    r.exact = true;
    return r;
}

SignalCutNormResult signal_cut_norm_heuristic(const Matrix& F, const std::vector<double>& masses,
                                              const CutNormParams& params) {
    int d = F.cols, n = F.rows;
    int restarts = std::max(1, params.restarts);
    std::vector<SignalCutNormResult> per_restart(static_cast<size_t>(restarts));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int r = 0; r < restarts; ++r) {
        SplitMix64 rng(derive_seed(params.seed ^ 0x51Bull, static_cast<uint64_t>(r)));
        std::vector<double> eps(static_cast<size_t>(d));
        for (int c = 0; c < d; ++c) eps[c] = rng.next_bernoulli(0.5) ? 1.0 : -1.0;
        std::vector<uint8_t> in_S(static_cast<size_t>(n), 0);
        for (int iter = 0; iter < params.max_iters; ++iter) {
            bool changed = false;
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int c = 0; c < d; ++c) s += eps[c] * masses[j] * F.at(j, c);
                uint8_t want = s > 0.0 ? 1 : 0;
                if (want != in_S[j]) {
                    in_S[j] = want;
                    changed = true;
                }
            }
            for (int c = 0; c < d; ++c) {
                double s = 0.0;
                for (int j = 0; j < n; ++j)
                    if (in_S[j]) s += masses[j] * F.at(j, c);
                double want = s >= 0.0 ? 1.0 : -1.0;
                if (want != eps[c]) {
                    eps[c] = want;
                    changed = true;
                }
            }
            if (!changed) break;
        }
        SignalCutNormResult res;
        res.witness_S = flags_to_indices(in_S);
        auto acc = signal_sum(F, masses, res.witness_S);
        double v = 0.0;
        for (double a : acc) v += std::abs(a);
        res.value = v / d;
        res.exact = false;
        per_restart[r] = res;
    }
    SignalCutNormResult best = per_restart[0];
    for (int r = 1; r < restarts; ++r) {
        const auto& c = per_restart[r];
        if (c.value > best.value ||
            (c.value == best.value && lex_less(c.witness_S, best.witness_S)))
            best = c;
    }
    return best;
}

}  // namespace

SignalCutNormResult signal_cut_norm(const Matrix& F, const std::vector<double>& masses,
                                    const CutNormParams& params) {
    if (F.rows != static_cast<int>(masses.size()))
        throw std::invalid_argument("signal cut norm: shape mismatch");
    if (F.cols <= params.sign_cap) return signal_cut_norm_signs(F, masses);
    if (F.rows <= params.exact_cap) return signal_cut_norm_subsets(F, masses);
    if (!params.allow_heuristic)
        throw CapExceeded("signal cut norm: both exact paths exceed caps and heuristic disabled");
    return signal_cut_norm_heuristic(F, masses, params);
}

double product_cut_norm(const Matrix& F, const std::vector<double>& masses) {
    if (F.rows != static_cast<int>(masses.size()))
        throw std::invalid_argument("product cut norm: shape mismatch");
    double total = 0.0;
    for (int c = 0; c < F.cols; ++c) {
        double pos = 0.0, neg = 0.0;
        for (int j = 0; j < F.rows; ++j) {
            double v = masses[j] * F.at(j, c);
            if (v > 0.0) pos += v;
            else neg -= v;
        }
        total += std::max(pos, neg);
    }
    return total / F.cols;
}

LpNorms lp_norms(const StepKernelSignal& x) {
    LpNorms out;
    int n = x.parts();
    const auto& mu = x.partition.masses;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double w = mu[i] * mu[j];
            double v = x.kernel.at(i, j);
            out.kernel_l1 += w * std::abs(v);
            out.kernel_l2 += w * v * v;
            out.kernel_linf = std::max(out.kernel_linf, std::abs(v));
        }
    out.kernel_l2 = std::sqrt(out.kernel_l2);
    for (int i = 0; i < n; ++i) {
        double row1 = 0.0;
        for (int c = 0; c < x.channels(); ++c) {
            double v = x.signal.at(i, c);
            row1 += std::abs(v);
            out.signal_linf = std::max(out.signal_linf, std::abs(v));
        }
        out.signal_l1 += mu[i] * row1;
    }
    return out;
}

CutMetricResult cut_metric(const StepKernelSignal& a, const StepKernelSignal& b,
                           const CutNormParams& params) {
    if (a.parts() != b.parts() || a.channels() != b.channels())
        throw std::invalid_argument("cut metric: objects must share a partition and dimension");
    for (int i = 0; i < a.parts(); ++i)
        if (std::abs(a.partition.masses[i] - b.partition.masses[i]) > 1e-12)
            throw std::invalid_argument("cut metric: partition masses differ");
    CutMetricResult r;
    Matrix dk = a.kernel - b.kernel;
    Matrix ds = a.signal - b.signal;
    r.kernel = cut_norm_kernel(dk, a.partition.masses, params);
    r.signal = signal_cut_norm(ds, a.partition.masses, params);
    r.value = r.kernel.value + r.signal.value;
    return r;
}

}  // namespace norms
}  // namespace graphonlab
