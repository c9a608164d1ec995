#include <doctest.h>

#include <cmath>
#include <numeric>

#include "graphonlab/generators.hpp"
#include "graphonlab/norms.hpp"
#include "graphonlab/reference.hpp"

using namespace graphonlab;

TEST_SUITE_BEGIN("norms");

namespace {
const std::vector<double> kHalf = {0.5, 0.5};
}

TEST_CASE("exact cut norm on flat and constant kernels") {
    Matrix zero(3, 3, 0.0);
    auto r = norms::cut_norm_kernel_exact(zero, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(r.value == 0.0);
    CHECK(r.witness_S.empty());
    CHECK(r.witness_T.empty());
    CHECK(r.exact);

    Matrix c(2, 2, -0.7);
    auto rc = norms::cut_norm_kernel_exact(c, kHalf);
    CHECK(rc.value == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(rc.witness_S == std::vector<int>{0, 1});
    CHECK(rc.witness_T == std::vector<int>{0, 1});
}

TEST_CASE("exact cut norm of the alternating 2x2 kernel") {
    // exhaustive check over all 16 subset pairs gives 0.25 at S={0}, T={0}
    Matrix d = Matrix::from_rows({{1, -1}, {-1, 1}});
    auto r = norms::cut_norm_kernel_exact(d, kHalf);
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.witness_S == std::vector<int>{0});
    CHECK(r.witness_T == std::vector<int>{0});
}

TEST_CASE("exact cut norm matches the serial reference") {
    for (uint64_t seed = 0; seed < 25; ++seed) {
        int n = 2 + static_cast<int>(seed % 9);
        auto x = gen::random_step(KernelClass::GeneralKernel, n, 1, 1.0, 100 + seed,
                                  seed % 2 == 0);
        auto fast = norms::cut_norm_kernel_exact(x.kernel, x.partition.masses);
        auto ref = reference::cut_norm_exact(x.kernel, x.partition.masses);
        CHECK(fast.value == doctest::Approx(ref.value).epsilon(1e-12));
        double recomputed = std::abs(norms::rectangle_sum(x.kernel, x.partition.masses,
                                                          fast.witness_S, fast.witness_T));
        CHECK(std::abs(recomputed - fast.value) <= 1e-12);
    }
}

TEST_CASE("exact cut norm respects the cap") {
    norms::CutNormParams p;
    p.exact_cap = 4;
    Matrix d(5, 5, 0.1);
    CHECK_THROWS_AS(norms::cut_norm_kernel_exact(d, {0.2, 0.2, 0.2, 0.2, 0.2}, p), CapExceeded);
}

TEST_CASE("heuristic cut norm basics") {
    Matrix zero(4, 4, 0.0);
    std::vector<double> q(4, 0.25);
    auto r = norms::cut_norm_kernel_heuristic(zero, q);
    CHECK(r.value == 0.0);
    CHECK_FALSE(r.exact);

    Matrix d = Matrix::from_rows({{1, -1}, {-1, 1}});
    auto ra = norms::cut_norm_kernel_heuristic(d, kHalf);
    CHECK(ra.value == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("heuristic never exceeds exact and is deterministic") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        int n = 2 + static_cast<int>(seed % 9);  // up to 10 parts
        auto x = gen::random_step(KernelClass::GeneralKernel, n, 1, 1.0, 200 + seed);
        norms::CutNormParams p;
        p.seed = seed;
        auto ex = norms::cut_norm_kernel_exact(x.kernel, x.partition.masses, p);
        auto h1 = norms::cut_norm_kernel_heuristic(x.kernel, x.partition.masses, p);
        auto h2 = norms::cut_norm_kernel_heuristic(x.kernel, x.partition.masses, p);
        CHECK(h1.value <= ex.value + 1e-12);
        CHECK(h1.value == h2.value);
        CHECK(h1.witness_S == h2.witness_S);
        double recomputed = std::abs(norms::rectangle_sum(x.kernel, x.partition.masses,
                                                          h1.witness_S, h1.witness_T));
        CHECK(std::abs(recomputed - h1.value) <= 1e-12);
    }
}

TEST_CASE("signal cut norm examples") {
    // d=1, step values (1,-1): both candidate supports give 1/2
    Matrix f1 = Matrix::from_rows({{1}, {-1}});
    auto r1 = norms::signal_cut_norm(f1, kHalf);
    CHECK(r1.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r1.witness_S == std::vector<int>{0});
    CHECK(r1.exact);

    Matrix zero(3, 2, 0.0);
    CHECK(norms::signal_cut_norm(zero, {0.2, 0.3, 0.5}).value == 0.0);

    // d=2, rows (1,-1) and (-1,1): best sign vector (+,-), S={0}, value 1/2
    Matrix f2 = Matrix::from_rows({{1, -1}, {-1, 1}});
    auto r2 = norms::signal_cut_norm(f2, kHalf);
    CHECK(r2.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r2.witness_S == std::vector<int>{0});
}

TEST_CASE("signal cut norm: sign and subset paths agree with the reference") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        int n = 2 + static_cast<int>(seed % 7);
        int d = 1 + static_cast<int>(seed % 4);
        auto x = gen::random_step(KernelClass::Graphon, n, d, 1.5, 300 + seed, seed % 2 == 0);
        auto by_signs = norms::signal_cut_norm(x.signal, x.partition.masses);
        norms::CutNormParams force_subsets;
        force_subsets.sign_cap = 0;
        auto by_subsets = norms::signal_cut_norm(x.signal, x.partition.masses, force_subsets);
        double ref = reference::signal_cut_norm(x.signal, x.partition.masses);
        CHECK(by_signs.value == doctest::Approx(ref).epsilon(1e-12));
        CHECK(by_subsets.value == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("signal cut norm heuristic path on wide signals") {
    // d and n both above the exact caps force the alternating heuristic
    int n = 26, d = 23;
    SplitMix64 rng(314);
    Matrix f(n, d);
    for (double& v : f.data) v = rng.next_double();  // nonnegative signal
    std::vector<double> masses(n, 1.0 / n);
    norms::CutNormParams p;
    p.exact_cap = 22;
    p.sign_cap = 20;
    auto h = norms::signal_cut_norm(f, masses, p);
    CHECK_FALSE(h.exact);
    // for a nonnegative signal the supremum sits at the full support
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    auto acc = norms::signal_sum(f, masses, all);
    double exact = 0.0;
    for (double a : acc) exact += std::abs(a);
    exact /= d;
    CHECK(h.value == doctest::Approx(exact).epsilon(1e-12));

    auto h2 = norms::signal_cut_norm(f, masses, p);
    CHECK(h.value == h2.value);
    CHECK(h.witness_S == h2.witness_S);
}

TEST_CASE("kernel cut norm dispatch respects caps") {
    Matrix d(30, 30, 0.25);
    std::vector<double> masses(30, 1.0 / 30);
    norms::CutNormParams p;
    auto r = norms::cut_norm_kernel(d, masses, p);  // falls back to the heuristic
    CHECK_FALSE(r.exact);
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-12));
    p.allow_heuristic = false;
    CHECK_THROWS_AS(norms::cut_norm_kernel(d, masses, p), CapExceeded);
}

TEST_CASE("signal cut norm cap error") {
    norms::CutNormParams p;
    p.sign_cap = 0;
    p.exact_cap = 0;
    p.allow_heuristic = false;
    Matrix f(2, 1, 0.5);
    CHECK_THROWS_AS(norms::signal_cut_norm(f, kHalf, p), CapExceeded);
}

TEST_CASE("product cut norm") {
    // d=1: coincides with the signal cut norm
    Matrix f1 = Matrix::from_rows({{0.8}, {-0.3}, {0.1}});
    std::vector<double> m3 = {0.25, 0.5, 0.25};
    CHECK(norms::product_cut_norm(f1, m3) ==
          doctest::Approx(norms::signal_cut_norm(f1, m3).value).epsilon(1e-12));

    Matrix f2 = Matrix::from_rows({{1, -1}, {-1, 1}});
    CHECK(norms::product_cut_norm(f2, kHalf) == doctest::Approx(0.5).epsilon(1e-12));

    // nonnegative signals: (1/d) ||f||_1
    auto x = gen::random_step(KernelClass::Graphon, 5, 3, 1.0, 303);
    for (double& v : x.signal.data) v = std::abs(v);
    auto lp = norms::lp_norms(x);
    CHECK(norms::product_cut_norm(x.signal, x.partition.masses) ==
          doctest::Approx(lp.signal_l1 / 3).epsilon(1e-12));
}

TEST_CASE("lp norms") {
    StepKernelSignal x;
    x.partition = Partition::uniform(2);
    x.kclass = KernelClass::Graphon;
    x.signal_radius = 1.0;
    x.kernel = Matrix::from_rows({{1, 0}, {0, 0}});
    x.signal = Matrix::from_rows({{1}, {-1}});
    auto lp = norms::lp_norms(x);
    CHECK(lp.kernel_l1 == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(lp.kernel_l2 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(lp.kernel_linf == 1.0);
    CHECK(lp.signal_l1 == doctest::Approx(1.0).epsilon(1e-12));

    StepKernelSignal ones;
    ones.partition = Partition::uniform(3);
    ones.kclass = KernelClass::Graphon;
    ones.kernel = Matrix(3, 3, 1.0);
    ones.signal = Matrix(3, 1, 0.0);
    auto lo = norms::lp_norms(ones);
    CHECK(lo.kernel_l1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lo.kernel_l2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lo.kernel_linf == 1.0);
}

TEST_CASE("norm chains hold on seeded instances") {
    for (uint64_t seed = 0; seed < 50; ++seed) {
        int n = 2 + static_cast<int>(seed % 15);
        int d = 1 + static_cast<int>(seed % 5);
        auto x = gen::random_step(seed % 2 ? KernelClass::GeneralKernel : KernelClass::Graphon, n,
                                  d, 1.0, 400 + seed, seed % 3 == 0);
        auto lp = norms::lp_norms(x);
        double cut = norms::cut_norm_kernel_exact(x.kernel, x.partition.masses).value;
        CHECK(cut >= -1e-9);
        CHECK(cut <= lp.kernel_l1 + 1e-9);
        CHECK(lp.kernel_l1 <= lp.kernel_l2 + 1e-9);
        CHECK(lp.kernel_l2 <= lp.kernel_linf + 1e-9);
        CHECK(lp.kernel_linf <= 1.0 + 1e-9);

        double scut = norms::signal_cut_norm(x.signal, x.partition.masses).value;
        double sprod = norms::product_cut_norm(x.signal, x.partition.masses);
        CHECK(lp.signal_l1 / (2 * d) <= sprod + 1e-9);
        CHECK(sprod / d <= scut + 1e-9);
        CHECK(scut <= sprod + 1e-9);
        CHECK(sprod <= lp.signal_l1 + 1e-9);
    }
}

TEST_CASE("cut metric examples and properties") {
    StepKernelSignal one;
    one.partition = Partition::uniform(1);
    one.kclass = KernelClass::Graphon;
    one.kernel = Matrix(1, 1, 1.0);
    one.signal = Matrix(1, 1, 0.0);
    StepKernelSignal zero = one;
    zero.kernel.at(0, 0) = 0.0;
    CHECK(norms::cut_metric(one, zero).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norms::cut_metric(one, one).value == 0.0);

    auto a = gen::random_step(KernelClass::SymmetricKernel, 5, 2, 1.0, 500);
    auto b = gen::random_step(KernelClass::SymmetricKernel, 5, 2, 1.0, 501);
    CHECK(norms::cut_metric(a, b).value ==
          doctest::Approx(norms::cut_metric(b, a).value).epsilon(1e-12));

    auto mism = gen::random_step(KernelClass::SymmetricKernel, 4, 2, 1.0, 502);
    CHECK_THROWS_AS(norms::cut_metric(a, mism), std::invalid_argument);
}

TEST_CASE("cut metric triangle inequality on seeded triples") {
    for (uint64_t seed = 0; seed < 300; ++seed) {
        int n = 2 + static_cast<int>(seed % 7);  // up to 8 parts, exact mode
        int d = 1 + static_cast<int>(seed % 2);
        auto a = gen::random_step(KernelClass::GeneralKernel, n, d, 1.0, 600 + 3 * seed);
        auto b = gen::random_step(KernelClass::GeneralKernel, n, d, 1.0, 601 + 3 * seed);
        auto c = gen::random_step(KernelClass::GeneralKernel, n, d, 1.0, 602 + 3 * seed);
        double ab = norms::cut_metric(a, b).value;
        double bc = norms::cut_metric(b, c).value;
        double ac = norms::cut_metric(a, c).value;
        CHECK(ac <= ab + bc + 1e-9);
    }
}

TEST_SUITE_END();
