#include <doctest.h>

#include <cmath>
#include <numeric>

#include "graphonlab/generators.hpp"
#include "graphonlab/regularity.hpp"

using namespace graphonlab;

TEST_SUITE_BEGIN("regularity");

TEST_CASE("stepping examples") {
    auto x = gen::random_step(KernelClass::SymmetricKernel, 4, 2, 1.0, 5);
    std::vector<int> singletons = {0, 1, 2, 3};
    auto same = regularity::stepping(x, singletons);
    for (size_t i = 0; i < x.kernel.data.size(); ++i)
        CHECK(same.kernel.data[i] == doctest::Approx(x.kernel.data[i]).epsilon(1e-12));

    StepKernelSignal block;
    block.partition = Partition::uniform(4);
    block.kclass = KernelClass::Graphon;
    block.kernel = Matrix::from_rows(
        {{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}});
    block.signal = Matrix(4, 1, 0.0);
    auto stepped = regularity::stepping(block, {0, 0, 1, 1});
    CHECK(stepped.parts() == 2);
    CHECK(stepped.kernel.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(stepped.kernel.at(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(stepped.kernel.at(1, 1) == doctest::Approx(1.0).epsilon(1e-12));

    StepKernelSignal constant;
    constant.partition = Partition::general({0.1, 0.4, 0.5});
    constant.kclass = KernelClass::Graphon;
    constant.kernel = Matrix(3, 3, 0.3);
    constant.signal = Matrix(3, 1, 0.7);
    auto grouped = regularity::stepping(constant, {0, 1, 0});
    for (double v : grouped.kernel.data) CHECK(v == doctest::Approx(0.3).epsilon(1e-12));
    for (double v : grouped.signal.data) CHECK(v == doctest::Approx(0.7).epsilon(1e-12));

    CHECK_THROWS_AS(regularity::stepping(constant, {0, 2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(regularity::stepping(constant, {0, 1}), std::invalid_argument);
}

TEST_CASE("stepping is idempotent, bounded, and class preserving") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        auto x = gen::random_step(seed % 2 ? KernelClass::SymmetricKernel : KernelClass::Graphon,
                                  6, 2, 1.0, 40 + seed, seed % 3 == 0);
        std::vector<int> grouping = {0, 1, 0, 2, 1, 2};
        auto once = regularity::stepping(x, grouping);
        std::vector<int> singletons(once.parts());
        std::iota(singletons.begin(), singletons.end(), 0);
        auto twice = regularity::stepping(once, singletons);
        for (size_t i = 0; i < once.kernel.data.size(); ++i)
            CHECK(std::abs(once.kernel.data[i] - twice.kernel.data[i]) <= 1e-12);

        auto lp_before = norms::lp_norms(x);
        auto lp_after = norms::lp_norms(once);
        CHECK(lp_after.kernel_linf <= lp_before.kernel_linf + 1e-12);
        CHECK(lp_after.signal_linf <= lp_before.signal_linf + 1e-12);
        CHECK(validate(once).empty());  // value range and symmetry survive
    }
}

TEST_CASE("equitize constructions") {
    auto map = regularity::equitize(Partition::general({0.5, 0.3, 0.2}), 5);
    CHECK(map.partition.parts() == 5);
    for (double m : map.partition.masses) CHECK(m == doctest::Approx(0.2).epsilon(1e-12));
    // hand-executing the construction: 0.5 -> two full slices + residual 0.1,
    // 0.3 -> one full slice + residual 0.1, 0.2 -> residual 0.2 (the last
    // slice of every part is a remainder); the pool re-cuts into two parts
    int pool_parts = 0;
    for (const auto& p : map.parts) pool_parts += p.from_pool ? 1 : 0;
    CHECK(pool_parts == 2);
    const auto& pool1 = map.parts[3];
    const auto& pool2 = map.parts[4];
    REQUIRE(pool1.sources.size() == 2);
    CHECK(pool1.sources[0].first == 0);
    CHECK(pool1.sources[0].second == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(pool1.sources[1].first == 1);
    CHECK(pool1.sources[1].second == doctest::Approx(0.1).epsilon(1e-9));
    REQUIRE(pool2.sources.size() == 1);
    CHECK(pool2.sources[0].first == 2);
    CHECK(pool2.sources[0].second == doctest::Approx(0.2).epsilon(1e-9));

    // equal masses, n = 2k: every part ends up split in half (one full slice
    // plus its own remainder slice in the pool)
    auto halves = regularity::equitize(Partition::uniform(3), 6);
    std::vector<int> slices_per_source(3, 0);
    for (const auto& p : halves.parts) {
        REQUIRE(p.sources.size() == 1);
        CHECK(p.sources[0].second == doctest::Approx(1.0 / 6).epsilon(1e-9));
        slices_per_source[p.sources[0].first] += 1;
    }
    CHECK(slices_per_source == std::vector<int>{2, 2, 2});

    auto quarters = regularity::equitize(Partition::uniform(1), 4);
    CHECK(quarters.partition.parts() == 4);
    for (const auto& p : quarters.parts) CHECK(p.sources[0].first == 0);

    CHECK_THROWS_AS(regularity::equitize(Partition::uniform(4), 4), std::invalid_argument);
}

TEST_CASE("equitize perturbation bound on seeded step functions") {
    for (uint64_t seed = 0; seed < 100; ++seed) {
        int k = 2 + static_cast<int>(seed % 5);
        int n = k + 1 + static_cast<int>(seed % 9);
        auto x = gen::random_step(KernelClass::GeneralKernel, k, 2, 1.0, 700 + seed,
                                  /*uniform_masses=*/false);
        auto map = regularity::equitize(x.partition, n);
        auto moved = regularity::apply_equitize(x, map);
        CHECK(validate(moved).empty());

        // rebuild the fine-grained difference through the mapping weights
        auto lp = norms::lp_norms(x);
        double kernel_l1_diff = 0.0;
        double signal_l1_diff = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                // integrate |F - F'| over the new cell (i, j)
                double cell = 0.0;
                for (const auto& [si, wi] : map.parts[i].sources)
                    for (const auto& [sj, wj] : map.parts[j].sources) {
                        double orig = x.kernel.at(si, sj);
                        cell += wi * wj * std::abs(orig - moved.kernel.at(i, j));
                    }
                kernel_l1_diff += cell;
            }
        for (int i = 0; i < n; ++i) {
            for (const auto& [si, wi] : map.parts[i].sources)
                for (int c = 0; c < 2; ++c)
                    signal_l1_diff +=
                        wi * std::abs(x.signal.at(si, c) - moved.signal.at(i, c));
        }
        double k_over_n = static_cast<double>(k) / n;
        double sup_row_l1 = 0.0;  // signal sup norm measured channelwise in l1
        for (int i = 0; i < k; ++i) {
            double row = 0.0;
            for (int c = 0; c < 2; ++c) row += std::abs(x.signal.at(i, c));
            sup_row_l1 = std::max(sup_row_l1, row);
        }
        CHECK(kernel_l1_diff <= 2.0 * lp.kernel_linf * k_over_n + 1e-9);
        CHECK(signal_l1_diff <= 1.0 * sup_row_l1 * k_over_n + 1e-9);
    }
}

TEST_CASE("greedy decomposition recovers a single block") {
    StepKernelSignal x;
    x.partition = Partition::uniform(4);
    x.kclass = KernelClass::GeneralKernel;
    x.kernel = Matrix(4, 4, 0.0);
    // gamma * 1_{S x T} with S = {0,1}, T = {1,2}
    for (int i : {0, 1})
        for (int j : {1, 2}) x.kernel.at(i, j) = 0.6;
    x.signal = Matrix(4, 1, 0.0);
    auto d = regularity::weak_regularity_decompose(x, 1, regularity::WitnessMode::Exact);
    REQUIRE(d.terms.size() == 1);
    CHECK(d.terms[0].gamma == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(d.terms[0].S == std::vector<int>{0, 1});
    CHECK(d.terms[0].T == std::vector<int>{1, 2});
    CHECK(d.residual_cutnorm_estimate <= 1e-12);
}

TEST_CASE("greedy decomposition of the zero kernel") {
    StepKernelSignal x;
    x.partition = Partition::uniform(3);
    x.kclass = KernelClass::GeneralKernel;
    x.kernel = Matrix(3, 3, 0.0);
    x.signal = Matrix(3, 1, 0.0);
    auto d = regularity::weak_regularity_decompose(x, 4, regularity::WitnessMode::Exact);
    CHECK(d.terms.empty());
    CHECK(d.residual_cutnorm_estimate == 0.0);
}

TEST_CASE("greedy residual obeys the 1/sqrt(m) guarantee on seeded graphons") {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        auto x = gen::random_step(KernelClass::Graphon, 8, 1, 1.0, 800 + seed);
        for (int m : {4, 9, 16}) {
            auto d = regularity::weak_regularity_decompose(x, m, regularity::WitnessMode::Exact);
            CHECK(d.residual_cutnorm_estimate <= 1.0 / std::sqrt(static_cast<double>(m)) + 1e-12);
            // each step removes at least (witness value)^2 of squared L2 mass,
            // which is what drives the residual below 1/sqrt(m)
            auto lp = norms::lp_norms(x);
            double energy = 0.0;
            for (double v : d.witness_values) energy += v * v;
            CHECK(energy <= lp.kernel_l2 * lp.kernel_l2 + 1e-9);
            // terms plus residual reproduce the kernel
            Matrix recon = regularity::reconstruct_terms(d, 8);
            Matrix resid = x.kernel - recon;
            for (size_t i = 0; i < recon.data.size(); ++i)
                CHECK(std::abs(recon.data[i] + resid.data[i] - x.kernel.data[i]) <= 1e-10);
        }
    }
}

TEST_CASE("heuristic witnesses also drive the residual down") {
    auto x = gen::random_step(KernelClass::Graphon, 10, 1, 1.0, 900);
    norms::CutNormParams p;
    p.seed = 4;
    auto d = regularity::weak_regularity_decompose(x, 16, regularity::WitnessMode::Heuristic, p);
    CHECK_FALSE(d.exact_witnesses);
    CHECK(d.residual_cutnorm_estimate <= 0.3);
}

TEST_CASE("best step approximation") {
    // already a step function over 2 groups of 4 parts
    StepKernelSignal coarse;
    coarse.partition = Partition::uniform(2);
    coarse.kclass = KernelClass::Graphon;
    coarse.kernel = Matrix::from_rows({{0.9, 0.2}, {0.2, 0.4}});
    coarse.signal = Matrix::from_rows({{0.5}, {-0.5}});
    StepKernelSignal fine = refine_equipartition(coarse, 4);
    auto approx = regularity::best_step_approximation(fine, 2, 4);
    CHECK(approx.gap <= 1e-12);
    CHECK(approx.stepped.parts() <= 2);

    StepKernelSignal constant;
    constant.partition = Partition::uniform(5);
    constant.kclass = KernelClass::Graphon;
    constant.kernel = Matrix(5, 5, 0.42);
    constant.signal = Matrix(5, 1, 0.1);
    auto one_group = regularity::best_step_approximation(constant, 1, 2);
    CHECK(one_group.stepped.parts() == 1);
    CHECK(one_group.gap <= 1e-12);

    // gap equals an independent recomputation of the cut metric
    auto x = gen::random_step(KernelClass::Graphon, 8, 1, 1.0, 901);
    auto a = regularity::best_step_approximation(x, 4, 8);
    CHECK(static_cast<int>(a.stepped.parts()) <= 4);
    auto back = regularity::expand_grouping(a.stepped, a.grouping, x.partition);
    double gap = norms::cut_metric(x, back).value;
    CHECK(a.gap == doctest::Approx(gap).epsilon(1e-12));
    CHECK(a.theoretical_epsilon == doctest::Approx(std::sqrt(8.0 / 2.0)).epsilon(1e-12));
}

TEST_SUITE_END();
