#include <doctest.h>

#include <cmath>
#include <numeric>

#include "graphonlab/alignment.hpp"
#include "graphonlab/generators.hpp"
#include "graphonlab/reference.hpp"

using namespace graphonlab;

TEST_SUITE_BEGIN("alignment");

TEST_CASE("permute basics") {
    auto x = gen::random_step(KernelClass::DirectedGraphon, 4, 2, 1.0, 7);
    std::vector<int> id = {0, 1, 2, 3};
    auto same = alignment::permute(x, id);
    CHECK(same.kernel.data == x.kernel.data);

    std::vector<int> swap01 = {1, 0, 2, 3};
    auto once = alignment::permute(x, swap01);
    auto twice = alignment::permute(once, swap01);
    CHECK(twice.kernel.data == x.kernel.data);
    CHECK(twice.signal.data == x.signal.data);

    // norms are rearrangement invariant
    auto lp_orig = norms::lp_norms(x);
    auto lp_perm = norms::lp_norms(once);
    CHECK(lp_orig.kernel_l1 == doctest::Approx(lp_perm.kernel_l1).epsilon(1e-12));
    double cut_orig = norms::cut_norm_kernel_exact(x.kernel, x.partition.masses).value;
    double cut_perm = norms::cut_norm_kernel_exact(once.kernel, once.partition.masses).value;
    CHECK(cut_orig == doctest::Approx(cut_perm).epsilon(1e-12));

    CHECK_THROWS_AS(alignment::permute(x, {0, 0, 1, 2}), std::invalid_argument);
}

TEST_CASE("permute rejects mass-incompatible mappings") {
    auto x = gen::random_step(KernelClass::Graphon, 3, 1, 1.0, 8, /*uniform_masses=*/false);
    CHECK_THROWS_AS(alignment::permute(x, {1, 0, 2}), std::invalid_argument);
}

TEST_CASE("cut distance of a relabeling is zero") {
    auto a = gen::random_step(KernelClass::Graphon, 5, 2, 1.0, 17);
    std::vector<int> p = {2, 0, 4, 1, 3};
    auto b = alignment::permute(a, p);
    alignment::AlignmentParams ap;
    ap.mode = alignment::DistanceMode::Exact;
    auto r = alignment::cut_distance(a, b, ap);
    CHECK(r.distance <= 1e-12);
    CHECK(r.exact);

    auto self = alignment::cut_distance(a, a, ap);
    CHECK(self.distance == 0.0);
    std::vector<int> identity(5);
    std::iota(identity.begin(), identity.end(), 0);
    CHECK(self.permutation == identity);
}

TEST_CASE("exact distance for the two-permutation example") {
    StepKernelSignal a, b;
    a.partition = b.partition = Partition::uniform(2);
    a.kclass = b.kclass = KernelClass::Graphon;
    a.kernel = Matrix::from_rows({{0, 1}, {1, 0}});
    b.kernel = Matrix::from_rows({{1, 0}, {0, 1}});
    a.signal = b.signal = Matrix(2, 1, 0.0);
    alignment::AlignmentParams ap;
    ap.mode = alignment::DistanceMode::Exact;
    auto r = alignment::cut_distance(a, b, ap);
    // brute force over both permutations and all 16 witness pairs gives 1/4
    CHECK(r.distance == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.exact);
}

TEST_CASE("exact distance matches the serial reference after refinement") {
    for (uint64_t seed = 0; seed < 8; ++seed) {
        auto a = gen::random_step(KernelClass::GeneralKernel, 2, 1, 1.0, 900 + seed);
        auto b = gen::random_step(KernelClass::GeneralKernel, 3, 1, 1.0, 950 + seed);
        alignment::AlignmentParams ap;
        ap.mode = alignment::DistanceMode::Exact;
        auto fast = alignment::cut_distance(a, b, ap);
        auto [ra, rb] = refine_to_common(a, b);
        double ref = reference::cut_distance_exact(ra, rb);
        CHECK(fast.refinement_parts == 6);
        CHECK(fast.distance == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("exact mode enforces caps and class checks") {
    auto a = gen::random_step(KernelClass::Graphon, 9, 1, 1.0, 31);
    auto b = gen::random_step(KernelClass::Graphon, 9, 1, 1.0, 32);
    alignment::AlignmentParams ap;
    ap.mode = alignment::DistanceMode::Exact;
    CHECK_THROWS_AS(alignment::cut_distance(a, b, ap), CapExceeded);

    auto c = gen::random_step(KernelClass::SymmetricKernel, 4, 1, 1.0, 33);
    auto d = gen::random_step(KernelClass::Graphon, 4, 1, 1.0, 34);
    CHECK_THROWS_AS(alignment::cut_distance(c, d, ap), std::invalid_argument);
    auto e = gen::random_step(KernelClass::Graphon, 4, 2, 1.0, 35);
    CHECK_THROWS_AS(alignment::cut_distance(d, e, ap), std::invalid_argument);
}

TEST_CASE("local search upper-bounds the exact distance") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        auto a = gen::random_step(KernelClass::Graphon, 6, 1, 1.0, 1000 + seed);
        auto b = gen::random_step(KernelClass::Graphon, 6, 1, 1.0, 1100 + seed);
        alignment::AlignmentParams exact;
        exact.mode = alignment::DistanceMode::Exact;
        alignment::AlignmentParams search;
        search.mode = alignment::DistanceMode::LocalSearch;
        search.restarts = 4;
        search.seed = seed;
        double ed = alignment::cut_distance(a, b, exact).distance;
        auto sr = alignment::cut_distance(a, b, search);
        CHECK_FALSE(sr.exact);
        CHECK(sr.distance >= ed - 1e-12);
        // identity permutation is always a feasible start, so the search never
        // exceeds the unaligned metric
        CHECK(sr.distance <= norms::cut_metric(a, b).value + 1e-12);
    }
}

TEST_CASE("local search is monotone non-increasing across restarts") {
    auto a = gen::random_step(KernelClass::GeneralKernel, 8, 2, 1.0, 77);
    auto b = gen::random_step(KernelClass::GeneralKernel, 8, 2, 1.0, 78);
    double prev = kInf;
    for (int restarts = 1; restarts <= 5; ++restarts) {
        alignment::AlignmentParams p;
        p.mode = alignment::DistanceMode::LocalSearch;
        p.restarts = restarts;
        p.seed = 5;  // restart r derives its stream from (seed, r), so each
                     // budget extends the previous one
        double d = alignment::cut_distance(a, b, p).distance;
        CHECK(d <= prev + 1e-15);
        prev = d;
    }
}

TEST_CASE("pseudometric properties in exact mode") {
    alignment::AlignmentParams ap;
    ap.mode = alignment::DistanceMode::Exact;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        int n = 2 + static_cast<int>(seed % 3);
        auto a = gen::random_step(KernelClass::GeneralKernel, n, 1, 1.0, 2000 + 3 * seed);
        auto b = gen::random_step(KernelClass::GeneralKernel, n, 1, 1.0, 2001 + 3 * seed);
        auto c = gen::random_step(KernelClass::GeneralKernel, n, 1, 1.0, 2002 + 3 * seed);
        double ab = alignment::cut_distance(a, b, ap).distance;
        double ba = alignment::cut_distance(b, a, ap).distance;
        double bc = alignment::cut_distance(b, c, ap).distance;
        double ac = alignment::cut_distance(a, c, ap).distance;
        CHECK(std::abs(ab - ba) <= 1e-12);
        CHECK(ac <= ab + bc + 1e-9);
        CHECK(ab <= norms::cut_metric(a, b).value + 1e-12);
    }
}

TEST_SUITE_END();
