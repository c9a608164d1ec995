#include "graphonlab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "graphonlab/alignment.hpp"
#include "graphonlab/bounds.hpp"
#include "graphonlab/generators.hpp"
#include "graphonlab/io.hpp"
#include "graphonlab/mpnn.hpp"
#include "graphonlab/regularity.hpp"
#include "graphonlab/sampling.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace graphonlab {
namespace suites {

namespace fs = std::filesystem;
using nlohmann::json;

json SuiteConfig::to_json() const {
    return json{{"suite", suite},     {"seed", seed},
                {"jobs", jobs},       {"out_dir", out_dir},
                {"tol_profile", tol_profile}, {"cases", cases},
                {"k_grid", k_grid},   {"trials", trials},
                {"m_steps", m_steps}, {"hidden_coeff", hidden_coeff},
                {"cover_coeff", cover_coeff}, {"natural_log", natural_log}};
}

SuiteConfig SuiteConfig::from_json(const json& j) {
    SuiteConfig c;
    c.suite = j.value("suite", c.suite);
    c.seed = j.value("seed", c.seed);
    c.jobs = j.value("jobs", c.jobs);
    c.out_dir = j.value("out_dir", c.out_dir);
    c.tol_profile = j.value("tol_profile", c.tol_profile);
    c.cases = j.value("cases", c.cases);
    c.k_grid = j.value("k_grid", c.k_grid);
    c.trials = j.value("trials", c.trials);
    c.m_steps = j.value("m_steps", c.m_steps);
    c.hidden_coeff = j.value("hidden_coeff", c.hidden_coeff);
    c.cover_coeff = j.value("cover_coeff", c.cover_coeff);
    c.natural_log = j.value("natural_log", c.natural_log);
    return c;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "norm-chain",  "cutnorm-oracle", "commutativity",     "lipschitz",  "hidden-bound",
        "regularity",  "sampling-decay", "bound-calculators", "multinomial"};
    return names;
}

namespace {

ResultRow make_row(const std::string& cas, const std::string& metric, double value, double bound,
                   bool pass) {
    return ResultRow{cas, metric, value, bound, pass};
}

// value <= bound rows
ResultRow le_row(const std::string& cas, const std::string& metric, double value, double bound) {
    return make_row(cas, metric, value, bound, value <= bound);
}

KernelClass class_cycle(int i) {
    switch (i % 4) {
        case 0: return KernelClass::Graphon;
        case 1: return KernelClass::DirectedGraphon;
        case 2: return KernelClass::SymmetricKernel;
        default: return KernelClass::GeneralKernel;
    }
}

void flatten(std::vector<std::vector<ResultRow>>& per_case, std::vector<ResultRow>& out) {
    for (auto& rows : per_case)
        for (auto& r : rows) out.push_back(std::move(r));
}

// --- norm-chain ------------------------------------------------------------

void run_norm_chain(const SuiteConfig& cfg, const Tolerances& tol, SuiteResult& res) {
    int cases = cfg.cases > 0 ? cfg.cases : 1000;
    const int dims[4] = {1, 2, 3, 5};
    std::vector<std::vector<ResultRow>> pc(static_cast<size_t>(cases));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < cases; ++i) {
        uint64_t s = derive_seed(cfg.seed, static_cast<uint64_t>(i));
        int n = 2 + static_cast<int>(s % 15);  // 2..16
        int d = dims[i % 4];
        StepKernelSignal x =
            gen::random_step(class_cycle(i), n, d, 1.0, s, /*uniform_masses=*/i % 2 == 0);
        norms::CutNormParams p;
        norms::LpNorms lp = norms::lp_norms(x);
        double cut = norms::cut_norm_kernel_exact(x.kernel, x.partition.masses, p).value;
        double kviol = std::max({-cut, cut - lp.kernel_l1, lp.kernel_l1 - lp.kernel_l2,
                                 lp.kernel_l2 - lp.kernel_linf, lp.kernel_linf - 1.0});
        double scut = norms::signal_cut_norm(x.signal, x.partition.masses, p).value;
        double sprod = norms::product_cut_norm(x.signal, x.partition.masses);
        double sviol = std::max({lp.signal_l1 / (2.0 * d) - sprod, sprod / d - scut,
                                 scut - sprod, sprod - lp.signal_l1});
        std::string cas = "case" + std::to_string(i);
        pc[i].push_back(le_row(cas, "kernel_chain_violation", kviol, tol.chain_slack));
        pc[i].push_back(le_row(cas, "signal_chain_violation", sviol, tol.chain_slack));
    }
    flatten(pc, res.rows);
}

// --- cutnorm-oracle ---------------------------------------------------------

void run_cutnorm_oracle(const SuiteConfig& cfg, const Tolerances& tol, SuiteResult& res) {
    int cases = cfg.cases > 0 ? cfg.cases : 200;
    std::vector<std::vector<ResultRow>> pc(static_cast<size_t>(cases));
    std::vector<uint8_t> equal(static_cast<size_t>(cases), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < cases; ++i) {
        uint64_t s = derive_seed(cfg.seed ^ 0xC0DEull, static_cast<uint64_t>(i));
        StepKernelSignal x = gen::random_step(class_cycle(i), 6, 1, 1.0, s, i % 2 == 0);
        norms::CutNormParams p;
        p.restarts = 16;
        p.seed = derive_seed(s, 1);
        auto exact = norms::cut_norm_kernel_exact(x.kernel, x.partition.masses, p);
        auto heur = norms::cut_norm_kernel_heuristic(x.kernel, x.partition.masses, p);
        double ex_rec = std::abs(
            std::abs(norms::rectangle_sum(x.kernel, x.partition.masses, exact.witness_S,
                                          exact.witness_T)) -
            exact.value);
        double h_rec = std::abs(
            std::abs(norms::rectangle_sum(x.kernel, x.partition.masses, heur.witness_S,
                                          heur.witness_T)) -
            heur.value);
        std::string cas = "case" + std::to_string(i);
        pc[i].push_back(le_row(cas, "heuristic_minus_exact", heur.value - exact.value,
                               tol.recompute));
        pc[i].push_back(le_row(cas, "witness_recompute_error", std::max(ex_rec, h_rec),
                               tol.recompute));
        equal[i] = std::abs(heur.value - exact.value) <= tol.recompute ? 1 : 0;
    }
    flatten(pc, res.rows);
    double rate = 0.0;
    for (uint8_t e : equal) rate += e;
    rate /= cases;
    res.rows.push_back(make_row("summary", "heuristic_equality_rate", rate, 0.95, rate >= 0.95));
}

// --- commutativity ----------------------------------------------------------

void run_commutativity(const SuiteConfig& cfg, const Tolerances& tol, SuiteResult& res) {
    int cases = cfg.cases > 0 ? cfg.cases : 100;
    std::vector<std::vector<ResultRow>> pc(static_cast<size_t>(cases));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < cases; ++i) {
        uint64_t s = derive_seed(cfg.seed ^ 0xC033ull, static_cast<uint64_t>(i));
        SplitMix64 rng(s);
        int d0 = i % 2 == 0 ? 1 : 3;
        gen::MpnnGenOptions opts;
        opts.depth = 1 + static_cast<int>(rng.next_below(3));
        opts.pairs = 1 + static_cast<int>(rng.next_below(2));
        opts.hidden_dim = 1 + static_cast<int>(rng.next_below(3));
        opts.readout = i % 4 != 3;  // span both, mostly with readout
        mpnn::MpnnSpec m = gen::random_mpnn(d0, opts, derive_seed(s, 1));
        bool directed = rng.next_bernoulli(0.5);
        WeightRange range = rng.next_bernoulli(0.5) ? WeightRange::ZeroOne
                                                    : WeightRange::PlusMinusOne;
        int n = 2 + static_cast<int>(rng.next_below(31));
        GraphSignal g = gen::random_graph(directed, range, n, d0, 2.0, derive_seed(s, 2),
                                          rng.next_bernoulli(0.3));
        auto rep = mpnn::check_commutativity(m, g, tol.commutativity);
        pc[i].push_back(le_row("case" + std::to_string(i), "max_deviation", rep.max_deviation,
                               tol.commutativity));
    }
    flatten(pc, res.rows);
}

// --- lipschitz ---------------------------------------------------------------

void run_lipschitz(const SuiteConfig& cfg, const Tolerances& tol, SuiteResult& res) {
    int cases = cfg.cases > 0 ? cfg.cases : 100;
    int tiny_cases = std::max(1, cases / 5);
    std::vector<std::vector<ResultRow>> pc(static_cast<size_t>(cases + tiny_cases));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < cases + tiny_cases; ++i) {
        bool tiny = i >= cases;
        uint64_t s = derive_seed(cfg.seed ^ 0x11B5ull, static_cast<uint64_t>(i));
        SplitMix64 rng(s);
        int n = tiny ? 2 + static_cast<int>(rng.next_below(3))
                     : 3 + static_cast<int>(rng.next_below(10));
        int d0 = 1 + static_cast<int>(rng.next_below(2));
        KernelClass cls = class_cycle(static_cast<int>(rng.next_below(4)));
        double r = 2.0;
        StepKernelSignal a = gen::random_step(cls, n, d0, r, derive_seed(s, 1));
        StepKernelSignal b = gen::random_step(cls, n, d0, r, derive_seed(s, 2));
        gen::MpnnGenOptions opts;
        opts.depth = 1 + static_cast<int>(rng.next_below(3));
        opts.pairs = 1 + static_cast<int>(rng.next_below(2));
        opts.hidden_dim = 1 + static_cast<int>(rng.next_below(2));
        opts.readout = true;
        mpnn::MpnnSpec m = gen::random_mpnn(d0, opts, derive_seed(s, 3));
        mpnn::MpnnMetadata meta = mpnn::lipschitz_metadata(m);

        auto out_a = mpnn::apply_step(m, a);
        auto out_b = mpnn::apply_step(m, b);
        double diff = 0.0;
        for (size_t c = 0; c < out_a.readout->size(); ++c)
            diff = std::max(diff, std::abs((*out_a.readout)[c] - (*out_b.readout)[c]));

        double dist;
        std::string metric;
        if (tiny) {
            alignment::AlignmentParams ap;
            ap.mode = alignment::DistanceMode::Exact;
            dist = alignment::cut_distance(a, b, ap).distance;
            metric = "lipschitz_dominance_cut_distance";
        } else {
            dist = norms::cut_metric(a, b).value;
            metric = "lipschitz_dominance_cut_metric";
        }

        bounds::MpnnConstantsInput in;
        in.K = meta.message_terms;
        in.L = meta.lipschitz;
        in.B = meta.formal_bias;
        in.T = meta.depth;
        in.d = meta.max_width;
        in.r = r;
        in.readout = true;
        in.hidden_coeff = cfg.hidden_coeff;
        double lh = bounds::mpnn_lipschitz_constants(in).L_H.linear();
        pc[i].push_back(le_row("case" + std::to_string(i), metric, diff,
                               lh * dist + tol.chain_slack));
    }
    flatten(pc, res.rows);
}

// --- hidden-bound -------------------------------------------------------------

void run_hidden_bound(const SuiteConfig& cfg, const Tolerances& tol, SuiteResult& res) {
    (void)tol;
    int cases = cfg.cases > 0 ? cfg.cases : 100;
    std::vector<std::vector<ResultRow>> pc(static_cast<size_t>(cases));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < cases; ++i) {
        uint64_t s = derive_seed(cfg.seed ^ 0x81DDull, static_cast<uint64_t>(i));
        SplitMix64 rng(s);
        int n = 2 + static_cast<int>(rng.next_below(15));
        int d0 = 1 + static_cast<int>(rng.next_below(3));
        double r = 2.0;
        StepKernelSignal x = gen::random_step(class_cycle(i), n, d0, r, derive_seed(s, 1));
        gen::MpnnGenOptions opts;
        opts.depth = 1 + static_cast<int>(rng.next_below(3));
        opts.pairs = 2;  // hypotheses need K > 1
        opts.hidden_dim = 1 + static_cast<int>(rng.next_below(2));
        opts.readout = false;
        mpnn::MpnnSpec m = gen::random_mpnn(d0, opts, derive_seed(s, 2));
        mpnn::MpnnMetadata meta = mpnn::lipschitz_metadata(m);
        auto out = mpnn::apply_step(m, x);
        for (int t = 1; t <= meta.depth; ++t) {
            double observed = max_abs(out.hidden[static_cast<size_t>(t - 1)]);
            auto hb = bounds::hidden_feature_bound(meta.message_terms, meta.lipschitz,
                                                   meta.formal_bias, r, t, cfg.hidden_coeff);
            pc[i].push_back(le_row("case" + std::to_string(i),
                                   "hidden_linf_layer" + std::to_string(t), observed,
                                   hb.value.linear()));
        }
    }
    flatten(pc, res.rows);
}

// --- regularity ----------------------------------------------------------------

void run_regularity(const SuiteConfig& cfg, const Tolerances& tol, SuiteResult& res,
                    std::string* plot_csv) {
    int cases = cfg.cases > 0 ? cfg.cases : 25;
    std::vector<int> msteps = cfg.m_steps.empty() ? std::vector<int>{4, 9, 16} : cfg.m_steps;
    std::vector<std::vector<ResultRow>> pc(static_cast<size_t>(cases));
    Matrix residuals(cases, static_cast<int>(msteps.size()));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < cases; ++i) {
        uint64_t s = derive_seed(cfg.seed ^ 0x4E64ull, static_cast<uint64_t>(i));
        StepKernelSignal x = gen::random_step(KernelClass::Graphon, 8, 1, 1.0, s);
        for (size_t mi = 0; mi < msteps.size(); ++mi) {
            int m = msteps[mi];
            auto d = regularity::weak_regularity_decompose(x, m, regularity::WitnessMode::Exact);
            residuals.at(i, static_cast<int>(mi)) = d.residual_cutnorm_estimate;
            std::string cas = "case" + std::to_string(i) + "_m" + std::to_string(m);
            pc[i].push_back(le_row(cas, "residual_cutnorm", d.residual_cutnorm_estimate,
                                   1.0 / std::sqrt(static_cast<double>(m))));
            // witness-value energy never exceeds the squared L2 norm: the
            // decrement argument behind the 1/sqrt(m) guarantee
            auto lp = norms::lp_norms(x);
            double energy = 0.0;
            for (double v : d.witness_values) energy += v * v;
            pc[i].push_back(le_row(cas, "witness_energy", energy,
                                   lp.kernel_l2 * lp.kernel_l2 + tol.chain_slack));
            Matrix recon = regularity::reconstruct_terms(d, x.parts());
            Matrix sum = recon;  // terms + residual should reproduce the kernel
            Matrix residual = x.kernel - recon;
            for (size_t z = 0; z < sum.data.size(); ++z) sum.data[z] += residual.data[z];
            pc[i].push_back(
                le_row(cas, "reconstruction_error", max_abs(sum - x.kernel), tol.reconstruction));
        }
    }
    flatten(pc, res.rows);
    if (plot_csv) {
        std::ostringstream plot;
        plot << "m,mean_residual,bound\n";
        for (size_t mi = 0; mi < msteps.size(); ++mi) {
            double mean = 0.0;
            for (int i = 0; i < cases; ++i) mean += residuals.at(i, static_cast<int>(mi));
            mean /= cases;
            plot << msteps[mi] << "," << io::format_double(mean) << ","
                 << io::format_double(1.0 / std::sqrt(static_cast<double>(msteps[mi]))) << "\n";
        }
        *plot_csv = plot.str();
    }
}

// --- sampling-decay ---------------------------------------------------------------

StepKernelSignal two_block_graphon() {
    StepKernelSignal x;
    x.partition = Partition::uniform(2);
    x.kclass = KernelClass::Graphon;
    x.signal_radius = 1.0;
    x.kernel = Matrix::from_rows({{0.8, 0.15}, {0.15, 0.7}});
    x.signal = Matrix::from_rows({{0.9}, {-0.8}});
    return x;
}

void run_sampling_decay(const SuiteConfig& cfg, const Tolerances& tol, SuiteResult& res,
                        std::string* plot_csv) {
    (void)tol;
    std::vector<int> kgrid = cfg.k_grid.empty() ? std::vector<int>{64, 128, 256, 512} : cfg.k_grid;
    int trials = cfg.trials > 0 ? cfg.trials : 20;
    StepKernelSignal x = two_block_graphon();

    std::vector<sampling::DistanceEstimate> estimates(kgrid.size());
    for (size_t gi = 0; gi < kgrid.size(); ++gi) {
        sampling::EstimateParams p;
        p.mode = sampling::SampleMode::Weighted;
        p.seed = derive_seed(cfg.seed ^ 0x5A11ull, static_cast<uint64_t>(gi));
        p.log_base = cfg.natural_log ? sampling::LogBase::Natural : sampling::LogBase::Two;
        p.align.mode = alignment::DistanceMode::LocalSearch;
        p.align.restarts = 1;  // the sorted start dominates; extra shuffles only cost time
        estimates[gi] = sampling::estimate_expected_distance(x, kgrid[gi], trials, p);
    }
    std::ostringstream plot;
    plot << "k,empirical,bound,stderr\n";
    for (size_t gi = 0; gi < kgrid.size(); ++gi) {
        const auto& est = estimates[gi];
        std::string cas = "k" + std::to_string(kgrid[gi]);
        res.rows.push_back(le_row(cas, "mean_distance", est.mean, est.theoretical_bound));
        if (gi > 0) {
            const auto& prev = estimates[gi - 1];
            res.rows.push_back(le_row(cas, "decay_trend", est.mean,
                                      prev.mean + prev.stderr_mean));
        }
        plot << kgrid[gi] << "," << io::format_double(est.mean) << ","
             << io::format_double(est.theoretical_bound) << ","
             << io::format_double(est.stderr_mean) << "\n";
    }
    if (plot_csv) *plot_csv = plot.str();

    // Bernoulli edge marginals for the constant-1/2 graphon.
    {
        StepKernelSignal half;
        half.partition = Partition::uniform(1);
        half.kclass = KernelClass::Graphon;
        half.signal_radius = 1.0;
        half.kernel = Matrix::from_rows({{0.5}});
        half.signal = Matrix::from_rows({{0.0}});
        int k = 200;  // 19900 unordered pairs
        auto pts = sampling::sample_points(half.partition, k, derive_seed(cfg.seed, 91));
        GraphSignal g = sampling::sample_simple(half, pts, derive_seed(cfg.seed, 92));
        double edges = 0.0;
        int pairs = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                edges += g.adjacency.at(i, j);
                pairs += 1;
            }
        double rate = edges / pairs;
        double expected = 0.75;  // symmetrized max{A, A^T} rate: 1 - (1 - 1/2)^2
        double se = std::sqrt(expected * (1 - expected) / pairs);
        res.rows.push_back(le_row("bernoulli_symmetrized", "rate_deviation",
                                  std::abs(rate - expected), 4.0 * se));

        half.kclass = KernelClass::DirectedGraphon;
        GraphSignal gd = sampling::sample_simple(half, pts, derive_seed(cfg.seed, 93));
        edges = 0.0;
        pairs = 0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                if (i == j) continue;
                edges += gd.adjacency.at(i, j);
                pairs += 1;
            }
        rate = edges / pairs;
        se = std::sqrt(0.5 * 0.5 / pairs);
        res.rows.push_back(
            le_row("bernoulli_directed", "rate_deviation", std::abs(rate - 0.5), 4.0 * se));
    }
}

// --- bound-calculators --------------------------------------------------------------

void run_bound_calculators(const SuiteConfig& cfg, const Tolerances& tol, SuiteResult& res) {
    (void)tol;
    for (double N : {10.0, 1e3, 1e6}) {
        auto inv = bounds::xi_inverse(N, 2.0, cfg.cover_coeff);
        res.rows.push_back(le_row("N" + std::to_string(static_cast<long long>(N)),
                                  "xi_roundtrip_rel_error", inv.achieved_rel_error, 1e-6));
    }
    auto cov = bounds::covering_number_log2(1.0, 2.0, 2.0);
    res.rows.push_back(make_row("covering_c2_eps1", "log2_kappa", cov.log2_kappa, 256.0,
                                cov.log2_kappa == 256.0));
    auto sb = bounds::sampling_bounds(1024, 1.0, 1.0,
                                      cfg.natural_log ? bounds::LogBase::Natural
                                                      : bounds::LogBase::Two);
    res.rows.push_back(le_row("k1024", "weighted_rate_error",
                              std::abs(sb.weighted_rate - 4.7434164902525691), 1e-12));
    auto sb16 = bounds::sampling_bounds(16, 1.0);
    res.rows.push_back(
        le_row("k16", "simple_rate_error", std::abs(sb16.simple_graph_rate - 2.75), 1e-12));
    auto sb100 = bounds::sampling_bounds(100, 1.0);
    res.rows.push_back(
        le_row("k100_r1", "signal_rate_error", std::abs(sb100.signal_rate - 0.1), 1e-12));
}

// --- multinomial -----------------------------------------------------------------------

void run_multinomial(const SuiteConfig& cfg, const Tolerances& tol, SuiteResult& res) {
    (void)tol;
    int sims = cfg.cases > 0 ? cfg.cases : 500;
    double p = 0.05;
    auto check = bounds::multinomial_check(4, 10000, {0.1, 0.2, 0.3, 0.4}, sims, p,
                                           derive_seed(cfg.seed, 0xB11Cull));
    double sigma = std::sqrt(p * (1 - p) / sims);
    res.rows.push_back(
        le_row("J4_N10000", "violation_rate", check.violation_rate, p + 3.0 * sigma));
}

}  // namespace

std::string results_csv_text(const SuiteResult& r) {
    std::ostringstream out;
    out << "suite,case,metric,value,bound,pass\n";
    for (const auto& row : r.rows)
        out << r.suite << "," << row.case_name << "," << row.metric << ","
            << io::format_double(row.value) << "," << io::format_double(row.bound) << ","
            << (row.pass ? 1 : 0) << "\n";
    return out.str();
}

SuiteResult run_suite(const SuiteConfig& cfg) {
    Tolerances tol = tol_profile(cfg.tol_profile);
#ifdef _OPENMP
    if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
#endif
    SuiteResult res;
    res.suite = cfg.suite;
    auto start = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, std::string>> plots;

    if (cfg.suite == "norm-chain") {
        run_norm_chain(cfg, tol, res);
    } else if (cfg.suite == "cutnorm-oracle") {
        run_cutnorm_oracle(cfg, tol, res);
    } else if (cfg.suite == "commutativity") {
        run_commutativity(cfg, tol, res);
    } else if (cfg.suite == "lipschitz") {
        run_lipschitz(cfg, tol, res);
    } else if (cfg.suite == "hidden-bound") {
        run_hidden_bound(cfg, tol, res);
    } else if (cfg.suite == "regularity") {
        std::string plot;
        run_regularity(cfg, tol, res, &plot);
        plots.push_back({"residual_vs_m.csv", plot});
    } else if (cfg.suite == "sampling-decay") {
        std::string plot;
        run_sampling_decay(cfg, tol, res, &plot);
        plots.push_back({"distance_vs_k.csv", plot});
    } else if (cfg.suite == "bound-calculators") {
        run_bound_calculators(cfg, tol, res);
    } else if (cfg.suite == "multinomial") {
        run_multinomial(cfg, tol, res);
    } else {
        throw std::invalid_argument("unknown suite: " + cfg.suite);
    }

    res.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cfg.suite == "norm-chain") res.runtime_bound = 30.0;
    if (cfg.suite == "regularity") res.runtime_bound = 60.0;
    res.runtime_ok = res.runtime_bound == 0.0 || res.runtime_seconds <= res.runtime_bound;

    res.failures = res.runtime_ok ? 0 : 1;
    for (const auto& r : res.rows)
        if (!r.pass) res.failures += 1;
    res.pass = res.failures == 0;

    fs::create_directories(cfg.out_dir);
    io::save_text((fs::path(cfg.out_dir) / "results.csv").string(), results_csv_text(res));
    for (const auto& [name, content] : plots) {
        if (content.empty()) continue;
        fs::create_directories(fs::path(cfg.out_dir) / "plotdata");
        io::save_text((fs::path(cfg.out_dir) / "plotdata" / name).string(), content);
    }
    json summary{{"suite", res.suite},
                 {"pass", res.pass},
                 {"failures", res.failures},
                 {"rows", res.rows.size()},
                 {"runtime_seconds", res.runtime_seconds},
                 {"runtime_bound", res.runtime_bound},
                 {"runtime_ok", res.runtime_ok},
                 {"config", cfg.to_json()},
                 {"timestamp", static_cast<int64_t>(
                                   std::chrono::duration_cast<std::chrono::seconds>(
                                       std::chrono::system_clock::now().time_since_epoch())
                                       .count())}};
    io::save_json((fs::path(cfg.out_dir) / "summary.json").string(), summary);
    return res;
}

}  // namespace suites
}  // namespace graphonlab
