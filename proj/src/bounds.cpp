#include "graphonlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace graphonlab {
namespace bounds {

Log2Value Log2Value::from_linear(double v) {
    if (v < 0.0) throw std::invalid_argument("Log2Value needs nonnegative input");
    return Log2Value{v == 0.0 ? -kInf : std::log2(v)};
}

Log2Value operator*(Log2Value a, Log2Value b) { return Log2Value{a.log2 + b.log2}; }

Log2Value operator+(Log2Value a, Log2Value b) {
    if (a.log2 == -kInf) return b;
    if (b.log2 == -kInf) return a;
    double hi = std::max(a.log2, b.log2), lo = std::min(a.log2, b.log2);
    return Log2Value{hi + std::log2(1.0 + std::exp2(lo - hi))};
}

Log2Value log2_max(Log2Value a, Log2Value b) { return a.log2 >= b.log2 ? a : b; }

Log2Value log2_pow(Log2Value a, double e) { return Log2Value{a.log2 * e}; }

void BoundReport::add(const std::string& name, Log2Value v) {
    entries.push_back({name, v.log2, v.linear()});
}

void BoundReport::add_linear(const std::string& name, double v) {
    add(name, Log2Value::from_linear(v));
}

const BoundEntry* BoundReport::find(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return &e;
    return nullptr;
}

std::vector<double> recurrence_Z(const std::vector<double>& a, const std::vector<double>& b,
                                 double e0) {
    if (a.size() != b.size()) throw std::invalid_argument("recurrence needs equal-length inputs");
    std::vector<double> e;
    e.reserve(a.size() + 1);
    e.push_back(e0);
    for (size_t t = 0; t < a.size(); ++t) e.push_back(a[t] * e.back() + b[t]);
    return e;
}

double recurrence_Z_constant(double a, double b, double e0, int t) {
    double geom = a == 1.0 ? static_cast<double>(t) : (std::pow(a, t) - 1.0) / (a - 1.0);
    return std::pow(a, t) * e0 + b * geom;
}

HiddenFeatureBound hidden_feature_bound(double K, double L, double B, double r, int t,
                                        double coeff) {
    if (t < 0) throw std::invalid_argument("layer index must be nonnegative");
    HiddenFeatureBound out;
    out.hypotheses_ok = K > 1.0 && L > 1.0 && B > 1.0 && r > 0.0;
    if (t == 0) {
        out.value = Log2Value::from_linear(r);
        return out;
    }
    double a_log2 = std::log2(coeff * K) + 3.0 * std::log2(L) + 2.0 * std::log2(B);
    out.value = Log2Value::from_log2(std::exp2(t) * (a_log2 + std::log2(r)));
    return out;
}

MpnnConstants mpnn_lipschitz_constants(const MpnnConstantsInput& in) {
    MpnnConstants out;
    out.input = in;
    out.hypotheses_ok = in.L > 1.0 && in.B > 1.0 && in.K >= 1.0 && in.r > 0.0;

    Log2Value L = Log2Value::from_linear(in.L);
    Log2Value B = Log2Value::from_linear(in.B);
    Log2Value fourKd = Log2Value::from_linear(4.0 * in.K * in.d);
    Log2Value fourK = Log2Value::from_linear(4.0 * in.K);

    Log2Value s = Log2Value::from_linear(1.0);  // signal coefficient, layer 0
    Log2Value kc = Log2Value::from_linear(0.0);
    out.signal_coeff.push_back(s);
    out.kernel_coeff.push_back(kc);
    out.L_Ht.push_back(log2_max(s, kc));

    for (int t = 0; t < in.T; ++t) {
        Log2Value rt = hidden_feature_bound(in.K, in.L, in.B, in.r, t, in.hidden_coeff).value;
        Log2Value a = fourKd * (log2_pow(L, 3) * rt + log2_pow(L, 2) * B) + L;
        Log2Value inner = log2_pow(L, 2) * rt + L * B;
        Log2Value b = fourK * log2_pow(inner, 2);
        s = a * s;
        kc = a * kc + b;
        out.signal_coeff.push_back(s);
        out.kernel_coeff.push_back(kc);
        out.L_Ht.push_back(log2_max(s, kc));
    }

    Log2Value lht = out.L_Ht.back();
    out.L_H = in.readout ? L * lht : lht;
    Log2Value rT = hidden_feature_bound(in.K, in.L, in.B, in.r, in.T, in.hidden_coeff).value;
    out.B_H = in.readout ? L * rT + B : rT;
    return out;
}

namespace {
std::string fmt_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}
}  // namespace

BoundReport MpnnConstants::to_report() const {
    BoundReport rep;
    rep.provenance = "mpnn-lipschitz-constants(K=" + fmt_param(input.K) +
                     ",L=" + fmt_param(input.L) + ",B=" + fmt_param(input.B) +
                     ",T=" + std::to_string(input.T) + ",d=" + fmt_param(input.d) +
                     ",r=" + fmt_param(input.r) + ",coeff=" + fmt_param(input.hidden_coeff) +
                     (input.readout ? ",readout" : "") + ")";
    for (size_t t = 0; t < L_Ht.size(); ++t) {
        rep.add("signal_coeff[" + std::to_string(t) + "]", signal_coeff[t]);
        rep.add("kernel_coeff[" + std::to_string(t) + "]", kernel_coeff[t]);
        rep.add("L_H" + std::to_string(t), L_Ht[t]);
    }
    rep.add("L_H", L_H);
    rep.add("B_H", B_H);
    if (!hypotheses_ok) rep.flags.push_back("hypotheses violated: need L, B > 1");
    return rep;
}

std::pair<double, double> simplified_mpnn_bound(double r, bool nonneg) {
    return {1.0, nonneg ? r : 2.0 * r};
}

CoveringNumber covering_number_log2(double eps, double c, double coeff) {
    if (!(eps > 0.0) || !(c > 1.0))
        throw std::invalid_argument("covering number needs eps > 0 and c > 1");
    CoveringNumber out;
    double x = coeff * c / (eps * eps);
    if (x <= 62.0) {
        long double k = ceill(exp2l(static_cast<long double>(x)));
        out.k = static_cast<double>(k);
        out.log2_kappa = static_cast<double>(k * k);
        out.ceil_path = true;
    } else {
        out.k = std::exp2(x);  // may be inf
        out.log2_kappa = std::exp2(2.0 * x);
        out.ceil_path = false;
    }
    return out;
}

double xi_of(double r, double c, double coeff) {
    // ln xi(r) = ln(ln 2) + 2 ln k(r) - 2 ln r, with k(r) = 2^{coeff*c/r^2}
    double ln_xi = std::log(std::log(2.0)) + 2.0 * (coeff * c / (r * r)) * std::log(2.0) -
                   2.0 * std::log(r);
    return std::exp(ln_xi);
}

namespace {
double ln_xi_of(double r, double c, double coeff) {
    return std::log(std::log(2.0)) + 2.0 * (coeff * c / (r * r)) * std::log(2.0) -
           2.0 * std::log(r);
}
}  // namespace

XiInverse xi_inverse(double N, double c, double coeff, double validity_eps_max) {
    if (!(N >= 1.0)) throw std::invalid_argument("xi_inverse needs N >= 1");
    double target = std::log(N);
    double lo = 1e-8, hi = 1e8;
    if (!(ln_xi_of(lo, c, coeff) > target && ln_xi_of(hi, c, coeff) < target))
        throw std::invalid_argument("xi_inverse: target not bracketed");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (ln_xi_of(mid, c, coeff) > target)
            lo = mid;
        else
            hi = mid;
    }
    XiInverse out;
    out.r = 0.5 * (lo + hi);
    out.achieved_rel_error = std::abs(xi_of(out.r, c, coeff) - N) / N;
    double x = coeff * c / (out.r * out.r);
    if (x <= 62.0) {
        long double k = ceill(exp2l(static_cast<long double>(x)));
        double xi_ceiled = std::log(2.0) * static_cast<double>(k * k) / (out.r * out.r);
        double xi_plain = xi_of(out.r, c, coeff);
        out.ceiling_gap_rel = std::abs(xi_ceiled - xi_plain) / xi_plain;
    }
    out.in_validity_window = out.r <= validity_eps_max;
    return out;
}

GeneralizationBound generalization_bound(double N, double p, double L_E, double L_H, double B_H,
                                         double E00, double c, double coeff) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("need 0 < p <= 1");
    GeneralizationBound out;
    out.xi_inv = xi_inverse(N, c, coeff).r;
    out.lipschitz_term = out.xi_inv * 2.0 * L_H;
    out.deviation_term =
        out.xi_inv * std::sqrt(2.0) * B_H * std::sqrt((std::log(2.0) + 2.0 * std::log(1.0 / p)) / N);
    out.value = out.lipschitz_term + out.deviation_term;
    out.loss_lipschitz = L_E * std::max(L_H, 1.0);
    out.loss_bound = L_E * (B_H + 1.0) + std::abs(E00);
    return out;
}

BoundReport GeneralizationBound::to_report() const {
    BoundReport rep;
    rep.provenance = "generalization-bound";
    rep.add_linear("value", value);
    rep.add_linear("xi_inverse", xi_inv);
    rep.add_linear("lipschitz_term", lipschitz_term);
    rep.add_linear("deviation_term", deviation_term);
    rep.add_linear("loss_lipschitz", loss_lipschitz);
    rep.add_linear("loss_bound", loss_bound);
    return rep;
}

SamplingBounds sampling_bounds(int k, double r, double L, LogBase base) {
    if (k < 2) throw std::invalid_argument("sampling bounds need k >= 2");
    SamplingBounds out;
    double lg = base == LogBase::Two ? std::log2(static_cast<double>(k))
                                     : std::log(static_cast<double>(k));
    out.weighted_rate = 15.0 / std::sqrt(lg);
    out.cutnorm_rate = 14.0 / std::pow(static_cast<double>(k), 0.25);
    out.simple_graph_rate = 11.0 / std::sqrt(static_cast<double>(k));
    out.signal_rate = r / std::sqrt(static_cast<double>(k));
    out.mpnn_rate = 15.0 * L / std::sqrt(lg);
    return out;
}

BoundReport SamplingBounds::to_report() const {
    BoundReport rep;
    rep.provenance = "sampling-rate-bounds";
    rep.add_linear("weighted_rate", weighted_rate);
    rep.add_linear("cutnorm_rate", cutnorm_rate);
    rep.add_linear("simple_graph_rate", simple_graph_rate);
    rep.add_linear("signal_rate", signal_rate);
    rep.add_linear("mpnn_rate", mpnn_rate);
    return rep;
}

BhcTail bhc_tail(int J, int N, double lambda) {
    if (J < 1 || N < 1 || !(lambda > 0.0))
        throw std::invalid_argument("bhc_tail needs J, N >= 1 and lambda > 0");
    BhcTail out;
    out.lambda = lambda;
    out.tail = std::exp(J * std::log(2.0) - 2.0 * lambda * lambda);
    out.normalized_threshold = 2.0 * lambda / std::sqrt(static_cast<double>(N));
    return out;
}

BhcTail bhc_lambda_for(int J, int N, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("need 0 < p <= 1");
    double threshold = std::sqrt((2.0 * J * std::log(2.0) + 2.0 * std::log(1.0 / p)) / N);
    double lambda = 0.5 * std::sqrt(static_cast<double>(N)) * threshold;
    BhcTail out = bhc_tail(J, N, lambda);
    return out;
}

MultinomialCheck multinomial_check(int J, int N, const std::vector<double>& probs, int sims,
                                   double p, uint64_t seed) {
    if (static_cast<int>(probs.size()) != J)
        throw std::invalid_argument("multinomial check: J probabilities expected");
    double total = 0.0;
    for (double q : probs) total += q;
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("multinomial check: probabilities must sum to 1");

    MultinomialCheck out;
    out.threshold = bhc_lambda_for(J, N, p).normalized_threshold;
    out.simulations = sims;

    std::vector<double> cumulative(probs.size());
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cumulative[i] = acc;
    }
    cumulative.back() = 1.0;

    std::vector<uint8_t> violated(static_cast<size_t>(sims), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int s = 0; s < sims; ++s) {
        SplitMix64 rng(derive_seed(seed, static_cast<uint64_t>(s)));
        std::vector<int> counts(static_cast<size_t>(J), 0);
        for (int i = 0; i < N; ++i) {
            double u = rng.next_double();
            int cell =
                static_cast<int>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                 cumulative.begin());
            cell = std::min(cell, J - 1);
            counts[cell] += 1;
        }
        double dev = 0.0;
        for (int j = 0; j < J; ++j)
            dev += std::abs(static_cast<double>(counts[j]) / N - probs[j]);
        violated[s] = dev >= out.threshold ? 1 : 0;
    }
    int count = 0;
    for (uint8_t v : violated) count += v;
    out.violation_rate = static_cast<double>(count) / sims;
    return out;
}

}  // namespace bounds
}  // namespace graphonlab
