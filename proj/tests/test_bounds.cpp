#include <doctest.h>

#include <cmath>

#include "graphonlab/bounds.hpp"

using namespace graphonlab;
using namespace graphonlab::bounds;

TEST_SUITE_BEGIN("bounds");

TEST_CASE("recurrence examples") {
    auto e = recurrence_Z({2, 2, 2}, {1, 1, 1}, 0.0);
    REQUIRE(e.size() == 4);
    CHECK(e[1] == 1.0);
    CHECK(e[2] == 3.0);
    CHECK(e[3] == 7.0);
    CHECK(recurrence_Z_constant(2.0, 1.0, 0.0, 3) == 7.0);

    auto no_b = recurrence_Z({1.5, 2.0, 0.5}, {0, 0, 0}, 3.0);
    CHECK(no_b[3] == doctest::Approx(3.0 * 1.5 * 2.0 * 0.5).epsilon(1e-12));

    auto unit_a = recurrence_Z({1, 1, 1, 1}, {0.25, 0.5, 0.125, 0.1}, 2.0);
    CHECK(unit_a[4] == doctest::Approx(2.0 + 0.975).epsilon(1e-12));
    CHECK(recurrence_Z_constant(1.0, 0.5, 2.0, 4) == doctest::Approx(4.0).epsilon(1e-12));

    // closed form agrees with iteration for constant sequences
    for (double a : {0.5, 1.0, 1.75}) {
        std::vector<double> av(6, a), bv(6, 0.3);
        auto seq = recurrence_Z(av, bv, 1.2);
        for (int t = 0; t <= 6; ++t)
            CHECK(seq[t] == doctest::Approx(recurrence_Z_constant(a, 0.3, 1.2, t)).epsilon(1e-12));
    }
}

TEST_CASE("hidden feature bound") {
    auto r0 = hidden_feature_bound(2, 2, 2, 1.5, 0);
    CHECK(r0.value.linear() == doctest::Approx(1.5).epsilon(1e-12));

    // K=L=B=r=2, one layer: (6*2*8*4)^2 * 2^2 = 384^2 * 4
    auto r1 = hidden_feature_bound(2, 2, 2, 2, 1);
    CHECK(r1.value.linear() == doctest::Approx(589824.0).epsilon(1e-9));
    CHECK(r1.hypotheses_ok);

    // deep: the log2 path stays finite while the linear view overflows
    auto r10 = hidden_feature_bound(2, 2, 2, 2, 10);
    CHECK(r10.value.log2 == doctest::Approx(1024.0 * std::log2(768.0)).epsilon(1e-9));
    CHECK_FALSE(std::isfinite(r10.value.linear()));

    auto weak = hidden_feature_bound(1, 0.5, 2, 2, 1);
    CHECK_FALSE(weak.hypotheses_ok);

    // the alternate coefficient preset is smaller
    auto alt = hidden_feature_bound(2, 2, 2, 2, 1, 4.0);
    CHECK(alt.value.linear() == doctest::Approx((4 * 2 * 8 * 4) * (4 * 2 * 8 * 4) * 4.0)
                                    .epsilon(1e-9));
}

TEST_CASE("mpnn lipschitz constants, one layer unrolled by hand") {
    MpnnConstantsInput in;
    in.K = 1;
    in.L = 2;
    in.B = 2;
    in.T = 1;
    in.d = 1;
    in.r = 2;
    in.readout = false;
    auto c = mpnn_lipschitz_constants(in);
    // a_0 = 4*K*d*(L^3 r + L^2 B) + L = 4*(16+8) + 2 = 98
    CHECK(c.signal_coeff[1].linear() == doctest::Approx(98.0).epsilon(1e-9));
    // b_0 = 4*K*(L^2 r + L B)^2 = 4 * 144 = 576
    CHECK(c.kernel_coeff[1].linear() == doctest::Approx(576.0).epsilon(1e-9));
    CHECK(c.L_Ht[1].linear() == doctest::Approx(576.0).epsilon(1e-9));
    CHECK(c.L_H.linear() == doctest::Approx(576.0).epsilon(1e-9));
    // no readout: B_H is the layer-1 feature bound (6*1*8*4)^2 * 4
    CHECK(c.B_H.linear() == doctest::Approx(192.0 * 192.0 * 4.0).epsilon(1e-9));

    in.readout = true;
    auto cr = mpnn_lipschitz_constants(in);
    CHECK(cr.L_H.linear() == doctest::Approx(2.0 * 576.0).epsilon(1e-9));
    CHECK(cr.B_H.linear() == doctest::Approx(2.0 * 192.0 * 192.0 * 4.0 + 2.0).epsilon(1e-9));

    // depth 0: signal coefficient 1, kernel coefficient 0
    in.T = 0;
    in.readout = false;
    auto c0 = mpnn_lipschitz_constants(in);
    CHECK(c0.L_Ht[0].linear() == 1.0);
    CHECK(c0.kernel_coeff[0].linear() == 0.0);
    CHECK(c0.B_H.linear() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("lipschitz constants match a direct linear evaluation") {
    MpnnConstantsInput in;
    in.K = 2;
    in.L = 1.5;
    in.B = 1.25;
    in.T = 3;
    in.d = 2;
    in.r = 2;
    in.readout = true;
    auto c = mpnn_lipschitz_constants(in);
    // straight-line recurrence in plain doubles
    double s = 1.0, k = 0.0;
    double rt = in.r;
    for (int t = 0; t < 3; ++t) {
        if (t > 0)
            rt = std::pow(6.0 * in.K * std::pow(in.L, 3) * in.B * in.B, std::exp2(t)) *
                 std::pow(in.r, std::exp2(t));
        double a = 4 * in.K * in.d * (std::pow(in.L, 3) * rt + in.L * in.L * in.B) + in.L;
        double b = 4 * in.K * std::pow(in.L * in.L * rt + in.L * in.B, 2.0);
        k = a * k + b;
        s = a * s;
    }
    CHECK(c.signal_coeff[3].linear() == doctest::Approx(s).epsilon(1e-9));
    CHECK(c.kernel_coeff[3].linear() == doctest::Approx(k).epsilon(1e-9));
    CHECK(c.L_H.linear() == doctest::Approx(in.L * std::max(s, k)).epsilon(1e-9));
}

TEST_CASE("simplified mpnn bound") {
    CHECK(simplified_mpnn_bound(1.0, false) == std::pair<double, double>{1.0, 2.0});
    CHECK(simplified_mpnn_bound(1.0, true) == std::pair<double, double>{1.0, 1.0});
    CHECK(simplified_mpnn_bound(0.0, false) == std::pair<double, double>{1.0, 0.0});
}

TEST_CASE("covering number") {
    auto c1 = covering_number_log2(1.0, 2.0, 2.0);
    CHECK(c1.k == 16.0);
    CHECK(c1.log2_kappa == 256.0);
    CHECK(c1.ceil_path);

    auto c2 = covering_number_log2(2.0, 2.0, 2.0);
    CHECK(c2.k == 2.0);
    CHECK(c2.log2_kappa == 4.0);

    // monotone: smaller radius needs at least as many balls
    double prev = kInf;
    for (double eps : {0.5, 0.75, 1.0, 1.5, 2.0}) {
        double v = covering_number_log2(eps, 2.0, 2.0).log2_kappa;
        CHECK(v <= prev);
        prev = v;
    }

    auto big = covering_number_log2(0.1, 2.0, 2.0);  // exponent ~400: analytic path
    CHECK_FALSE(big.ceil_path);
    CHECK(big.log2_kappa == doctest::Approx(std::exp2(2.0 * 400.0)).epsilon(1e-9));
    CHECK_THROWS_AS(covering_number_log2(0.0, 2.0, 2.0), std::invalid_argument);
}

TEST_CASE("xi inverse round trips against a grid-scan oracle") {
    for (double N : {10.0, 1e3, 1e6}) {
        auto inv = xi_inverse(N, 2.0);
        CHECK(inv.achieved_rel_error <= 1e-6);
        CHECK(std::abs(xi_of(inv.r, 2.0) - N) / N <= 1e-6);

        // oracle: dense grid scan for the crossing point
        double best_r = 0, best_gap = kInf;
        for (int i = 1; i <= 200000; ++i) {
            double r = i * 2e-5 * 10.0;  // up to 2.0... extended below if needed
            double gap = std::abs(xi_of(r, 2.0) - N);
            if (gap < best_gap) {
                best_gap = gap;
                best_r = r;
            }
        }
        CHECK(std::abs(inv.r - best_r) <= 2e-4 * 10.0);
    }

    CHECK(xi_inverse(10.0, 2.0).r >= xi_inverse(1e3, 2.0).r);
    CHECK(xi_inverse(1e3, 2.0).r >= xi_inverse(1e6, 2.0).r);
    CHECK_FALSE(xi_inverse(10.0, 2.0).in_validity_window);  // r > 1 gets flagged

    // dropping the ceiling costs at most one step: (ceil(k)/k)^2 - 1
    auto inv = xi_inverse(1e3, 2.0);
    double x = 2.0 * 2.0 / (inv.r * inv.r);
    double k = std::exp2(x);
    double one_step = (std::ceil(k) * std::ceil(k)) / (k * k) - 1.0;
    CHECK(inv.ceiling_gap_rel >= 0.0);
    CHECK(inv.ceiling_gap_rel <= one_step + 1e-12);
}

TEST_CASE("generalization bound") {
    // p = 1: the deviation term reduces to sqrt2 B_H sqrt(ln2 / N) xi_inv
    auto g1 = generalization_bound(1e4, 1.0, 1.0, 1.0, 1.0, 0.0, 2.0);
    CHECK(g1.deviation_term ==
          doctest::Approx(g1.xi_inv * std::sqrt(2.0) * std::sqrt(std::log(2.0) / 1e4))
              .epsilon(1e-12));

    // quadrupling N halves the 1/sqrt(N) factor
    auto ga = generalization_bound(1e4, 0.05, 1.0, 1.0, 1.0, 0.0, 2.0);
    auto gb = generalization_bound(4e4, 0.05, 1.0, 1.0, 1.0, 0.0, 2.0);
    double fa = ga.deviation_term / (ga.xi_inv * std::sqrt(2.0));
    double fb = gb.deviation_term / (gb.xi_inv * std::sqrt(2.0));
    CHECK(fb == doctest::Approx(fa / 2.0).epsilon(1e-12));

    // desk parameters, cross-checked against a straight-line reimplementation
    auto g = generalization_bound(1e4, 0.05, 1.0, 1.0, 1.0, 0.0, 2.0);
    double lo = 1e-8, hi = 1e8;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double xi = std::log(2.0) * std::exp2(2.0 * 2.0 * 2.0 / (mid * mid)) / (mid * mid);
        (xi > 1e4 ? lo : hi) = mid;
    }
    double r = 0.5 * (lo + hi);
    double expect = r * (2.0 * 1.0 + std::sqrt(2.0) * 1.0 *
                                         std::sqrt((std::log(2.0) + 2.0 * std::log(20.0)) / 1e4));
    CHECK(g.value == doctest::Approx(expect).epsilon(1e-9));
    CHECK(g.loss_lipschitz == 1.0);
    CHECK(g.loss_bound == 2.0);
}

TEST_CASE("sampling rate constants") {
    auto sb = sampling_bounds(1024, 1.0);
    CHECK(sb.weighted_rate == doctest::Approx(15.0 / std::sqrt(10.0)).epsilon(1e-12));
    CHECK(sampling_bounds(16, 1.0).simple_graph_rate == doctest::Approx(2.75).epsilon(1e-12));
    CHECK(sampling_bounds(100, 1.0).signal_rate == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(sampling_bounds(1024, 1.0, 3.0).mpnn_rate ==
          doctest::Approx(3.0 * 15.0 / std::sqrt(10.0)).epsilon(1e-12));

    double prev_w = kInf, prev_c = kInf, prev_s = kInf;
    for (int k : {4, 16, 64, 256, 1024}) {
        auto b = sampling_bounds(k, 1.0);
        CHECK(b.weighted_rate <= prev_w);
        CHECK(b.cutnorm_rate <= prev_c);
        CHECK(b.simple_graph_rate <= prev_s);
        prev_w = b.weighted_rate;
        prev_c = b.cutnorm_rate;
        prev_s = b.simple_graph_rate;
    }

    auto nat = sampling_bounds(1024, 1.0, 1.0, LogBase::Natural);
    CHECK(nat.weighted_rate ==
          doctest::Approx(15.0 / std::sqrt(std::log(1024.0))).epsilon(1e-12));
}

TEST_CASE("bretagnolle-huber-carol tail") {
    CHECK(bhc_tail(4, 100, 2.0).tail == doctest::Approx(16.0 * std::exp(-8.0)).epsilon(1e-12));
    CHECK(bhc_tail(4, 100, 50.0).tail <= 1e-300);

    auto matched = bhc_lambda_for(4, 10000, 0.05);
    CHECK(matched.tail == doctest::Approx(0.05).epsilon(1e-9));

    // J = 1: the deviation is identically zero, every simulation passes
    auto trivial = multinomial_check(1, 100, {1.0}, 50, 0.5, 9);
    CHECK(trivial.violation_rate == 0.0);

    auto check = multinomial_check(4, 10000, {0.1, 0.2, 0.3, 0.4}, 200, 0.05, 10);
    double sigma = std::sqrt(0.05 * 0.95 / 200);
    CHECK(check.violation_rate <= 0.05 + 3.0 * sigma);
}

TEST_CASE("log2 and linear representations agree when finite") {
    for (double v : {1e-6, 0.5, 1.0, 3.25, 1e12, 1e150}) {
        auto l = Log2Value::from_linear(v);
        CHECK(std::abs(l.linear() - v) / v <= 1e-9);
    }
    auto prod = Log2Value::from_linear(3.0) * Log2Value::from_linear(7.0);
    CHECK(prod.linear() == doctest::Approx(21.0).epsilon(1e-12));
    auto sum = Log2Value::from_linear(3.0) + Log2Value::from_linear(7.0);
    CHECK(sum.linear() == doctest::Approx(10.0).epsilon(1e-12));
    auto zero_sum = Log2Value::from_linear(0.0) + Log2Value::from_linear(2.5);
    CHECK(zero_sum.linear() == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_SUITE_END();
