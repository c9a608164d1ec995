#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphonlab/alignment.hpp"
#include "graphonlab/bounds.hpp"
#include "graphonlab/generators.hpp"
#include "graphonlab/io.hpp"
#include "graphonlab/mpnn.hpp"
#include "graphonlab/regularity.hpp"
#include "graphonlab/sampling.hpp"
#include "graphonlab/suites.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gl = graphonlab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

// Accepts the default TOML-style config files and, additionally, JSON files
// (top-level keys are options, nested objects are subcommand sections).
class JsonOrTomlConfig : public CLI::ConfigTOML {
  public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        auto pos = input.tellg();
        char first = 0;
        input >> std::ws;
        if (input.good()) first = static_cast<char>(input.peek());
        input.seekg(pos);
        if (first != '{') return CLI::ConfigTOML::from_config(input);
        json j = json::parse(input);
        std::vector<CLI::ConfigItem> items;
        flatten(j, {}, items);
        return items;
    }

  private:
    static void flatten(const json& j, std::vector<std::string> parents,
                        std::vector<CLI::ConfigItem>& out) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object()) {
                auto p = parents;
                p.push_back(key);
                flatten(value, p, out);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& e : value)
                    item.inputs.push_back(e.is_string() ? e.get<std::string>() : e.dump());
            } else {
                item.inputs.push_back(value.is_string() ? value.get<std::string>() : value.dump());
            }
            out.push_back(std::move(item));
        }
    }
};

json parse_params(const std::string& params) {
    if (params.empty()) return json::object();
    std::ifstream in(params);
    if (in.good()) {
        json j;
        in >> j;
        return j;
    }
    return json::parse(params);
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << std::endl;
    else
        gl::io::save_json(out_path, j);
}

struct CommonOpts {
    uint64_t seed = 7193;
    int jobs = 0;
    std::string tol_profile = "default";
    std::string out;

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "base RNG seed");
        cmd->add_option("--jobs", jobs, "max worker threads (0 = default)");
        cmd->add_option("--tol-profile", tol_profile, "tolerance profile: default|strict");
        cmd->add_option("--out", out, "write result JSON here instead of stdout");
    }

    void apply() const {
#ifdef _OPENMP
        if (jobs > 0) omp_set_num_threads(jobs);
#endif
    }
};

gl::StepKernelSignal ensure_equipartition(const gl::StepKernelSignal& x) {
    if (x.partition.equipartition) return x;
    // general partitions are equitized before alignment-style operations
    int n = std::max(8, 2 * x.parts());
    auto map = gl::regularity::equitize(x.partition, n);
    return gl::regularity::apply_equitize(x, map);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphon-lab: cut norms, regularity, sampling and MPNN analysis for "
                 "step kernel-signals"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonOrTomlConfig>());
    app.set_config("--config", "", "read options from a TOML or JSON file");

    // ---- cutnorm ----
    auto* cut = app.add_subcommand("cutnorm", "kernel cut norm of a step object or graph");
    std::string cut_file;
    bool cut_exact = false, cut_heur = false;
    int cut_restarts = 16;
    CommonOpts cut_common;
    cut->add_option("file", cut_file, "input JSON (step object or graph-signal)")->required();
    cut->add_flag("--exact", cut_exact, "force the exact enumeration path");
    cut->add_flag("--heuristic", cut_heur, "force the heuristic path");
    cut->add_option("--restarts", cut_restarts, "heuristic restarts");
    cut_common.attach(cut);

    // ---- distance ----
    auto* dist = app.add_subcommand("distance", "cut distance between two objects");
    std::string dist_a, dist_b, dist_mode = "exact";
    int dist_refine = 1, dist_restarts = 8;
    CommonOpts dist_common;
    dist->add_option("a", dist_a, "first input")->required();
    dist->add_option("b", dist_b, "second input")->required();
    dist->add_option("--mode", dist_mode, "exact|search")
        ->check(CLI::IsMember({"exact", "search"}));
    dist->add_option("--refine", dist_refine, "extra refinement factor for the common partition");
    dist->add_option("--restarts", dist_restarts, "local-search restarts");
    dist_common.attach(dist);

    // ---- regularize ----
    auto* reg = app.add_subcommand("regularize", "greedy weak-regularity decomposition");
    std::string reg_file;
    int reg_steps = 8, reg_target = 0;
    bool reg_exact = false;
    CommonOpts reg_common;
    reg->add_option("file", reg_file, "input JSON")->required();
    reg->add_option("--steps", reg_steps, "number of greedy steps")->required();
    reg->add_flag("--exact", reg_exact, "exact cut-norm witnesses");
    reg->add_option("--target", reg_target, "also step down to this many parts");
    reg_common.attach(reg);

    // ---- sample ----
    auto* smp = app.add_subcommand("sample", "random graphs sampled from a step object");
    std::string smp_file, smp_mode = "weighted";
    int smp_k = 16, smp_trials = 1;
    bool smp_estimate = false;
    CommonOpts smp_common;
    smp->add_option("file", smp_file, "input JSON")->required();
    smp->add_option("--k", smp_k, "sample points per draw")->required();
    smp->add_option("--trials", smp_trials, "number of draws");
    smp->add_option("--mode", smp_mode, "weighted|simple")
        ->check(CLI::IsMember({"weighted", "simple"}));
    smp->add_flag("--estimate-distance", smp_estimate,
                  "estimate the expected cut distance instead of emitting the batch");
    smp_common.attach(smp);

    // ---- mpnn run ----
    auto* mp = app.add_subcommand("mpnn", "message passing networks");
    auto* mprun = mp->add_subcommand("run", "apply an MPNN to a graph or step object");
    std::string mp_spec, mp_input;
    bool mp_commute = false;
    CommonOpts mp_common;
    mprun->add_option("--spec", mp_spec, "MPNN spec JSON")->required();
    mprun->add_option("--input", mp_input, "graph.json or step.json")->required();
    mprun->add_flag("--check-commute", mp_commute,
                    "also compare graph and induced-step forward passes");
    mp_common.attach(mprun);

    // ---- bounds ----
    auto* bnd = app.add_subcommand("bounds", "closed-form bound calculators");
    std::string bnd_params;
    double bnd_hidden_coeff = 6.0, bnd_cover_coeff = gl::bounds::kCoverCoeffDefault;
    bool bnd_natural_log = false;
    CommonOpts bnd_common;
    auto* bnd_lip = bnd->add_subcommand("lipschitz", "layer-recurrence constants");
    auto* bnd_cov = bnd->add_subcommand("covering", "covering-number exponent");
    auto* bnd_gen = bnd->add_subcommand("generalization", "risk-gap bound");
    auto* bnd_smp = bnd->add_subcommand("sampling", "sampling-rate constants");
    for (auto* sub : {bnd_lip, bnd_cov, bnd_gen, bnd_smp}) {
        sub->add_option("--params", bnd_params, "inline JSON or a JSON file with parameters");
        sub->add_option("--hidden-coeff", bnd_hidden_coeff,
                        "hidden-feature coefficient preset (6 or 4)");
        sub->add_option("--cover-coeff", bnd_cover_coeff,
                        "covering exponent coefficient preset (2 or 2.25)");
        sub->add_flag("--natural-log", bnd_natural_log, "use natural log in sampling rates");
        bnd_common.attach(sub);
    }
    bnd->require_subcommand(1);

    // ---- verify ----
    auto* ver = app.add_subcommand("verify", "run a theorem-verification suite");
    std::string ver_suite;
    gl::suites::SuiteConfig ver_cfg;
    ver->add_option("suite", ver_suite, "suite name or 'all'")->required();
    ver->add_option("--seed", ver_cfg.seed, "base RNG seed");
    ver->add_option("--jobs", ver_cfg.jobs, "max worker threads");
    ver->add_option("--out", ver_cfg.out_dir, "output directory");
    ver->add_option("--tol-profile", ver_cfg.tol_profile, "tolerance profile");
    ver->add_option("--cases", ver_cfg.cases, "case count override");
    ver->add_option("--trials", ver_cfg.trials, "trials override (sampling-decay)");
    ver->add_option("--k-grid", ver_cfg.k_grid, "sample sizes (sampling-decay)");
    ver->add_option("--m-steps", ver_cfg.m_steps, "step counts (regularity)");
    ver->add_option("--hidden-coeff", ver_cfg.hidden_coeff, "hidden-feature coefficient preset");
    ver->add_option("--cover-coeff", ver_cfg.cover_coeff, "covering coefficient preset");
    ver->add_flag("--natural-log", ver_cfg.natural_log, "natural-log sampling rates");

    // ---- generate ----
    auto* ge = app.add_subcommand("generate", "seeded random instances");
    std::string ge_kind, ge_out;
    int ge_n = 4, ge_d = 1, ge_T = 2, ge_K = 1, ge_hidden = 2;
    double ge_r = 1.0;
    uint64_t ge_seed = 7193;
    bool ge_readout = true, ge_contractive = false;
    ge->add_option("--kind", ge_kind,
                   "graphon|directed-graphon|symmetric-kernel|general-kernel|graph|mpnn")
        ->required();
    ge->add_option("--n", ge_n, "parts / nodes");
    ge->add_option("--d", ge_d, "signal channels");
    ge->add_option("--r", ge_r, "signal radius");
    ge->add_option("--T", ge_T, "MPNN depth");
    ge->add_option("--K", ge_K, "message pairs per layer");
    ge->add_option("--hidden-dim", ge_hidden, "MPNN hidden width");
    ge->add_flag("--readout,!--no-readout", ge_readout, "attach a readout function");
    ge->add_flag("--contractive", ge_contractive, "tame-magnitude MPNN preset");
    ge->add_option("--seed", ge_seed, "RNG seed");
    ge->add_option("--out", ge_out, "output file")->required();

    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cut->parsed()) {
            cut_common.apply();
            auto input = gl::io::load_input(cut_file);
            gl::StepKernelSignal x = input.as_step();
            gl::norms::CutNormParams p;
            p.restarts = cut_restarts;
            p.seed = cut_common.seed;
            gl::norms::CutNormResult r;
            if (cut_exact)
                r = gl::norms::cut_norm_kernel_exact(x.kernel, x.partition.masses, p);
            else if (cut_heur)
                r = gl::norms::cut_norm_kernel_heuristic(x.kernel, x.partition.masses, p);
            else
                r = gl::norms::cut_norm_kernel(x.kernel, x.partition.masses, p);
            emit(gl::io::to_json(r), cut_common.out);
        } else if (dist->parsed()) {
            dist_common.apply();
            gl::StepKernelSignal a = ensure_equipartition(gl::io::load_input(dist_a).as_step());
            gl::StepKernelSignal b = ensure_equipartition(gl::io::load_input(dist_b).as_step());
            if (dist_refine > 1) {
                a = gl::refine_equipartition(a, static_cast<int64_t>(a.parts()) * dist_refine);
                b = gl::refine_equipartition(b, static_cast<int64_t>(b.parts()) * dist_refine);
            }
            gl::alignment::AlignmentParams p;
            p.mode = dist_mode == "exact" ? gl::alignment::DistanceMode::Exact
                                          : gl::alignment::DistanceMode::LocalSearch;
            p.restarts = dist_restarts;
            p.seed = dist_common.seed;
            emit(gl::io::to_json(gl::alignment::cut_distance(a, b, p)), dist_common.out);
        } else if (reg->parsed()) {
            reg_common.apply();
            gl::StepKernelSignal x = gl::io::load_input(reg_file).as_step();
            auto mode = reg_exact ? gl::regularity::WitnessMode::Exact
                                  : gl::regularity::WitnessMode::Heuristic;
            gl::norms::CutNormParams p;
            p.seed = reg_common.seed;
            auto d = gl::regularity::weak_regularity_decompose(x, reg_steps, mode, p);
            json out = gl::io::to_json(d);
            if (reg_target > 0) {
                auto approx = gl::regularity::best_step_approximation(x, reg_target, reg_steps,
                                                                      mode, p);
                out["best_step"] = json{{"grouping", approx.grouping},
                                        {"gap", approx.gap},
                                        {"gap_exact", approx.gap_exact},
                                        {"theoretical_epsilon", approx.theoretical_epsilon},
                                        {"stepped", gl::io::to_json(approx.stepped)}};
            }
            emit(out, reg_common.out);
        } else if (smp->parsed()) {
            smp_common.apply();
            gl::StepKernelSignal x = gl::io::load_input(smp_file).as_step();
            auto mode = smp_mode == "weighted" ? gl::sampling::SampleMode::Weighted
                                               : gl::sampling::SampleMode::Simple;
            if (smp_estimate) {
                gl::sampling::EstimateParams p;
                p.mode = mode;
                p.seed = smp_common.seed;
                p.align.mode = gl::alignment::DistanceMode::LocalSearch;
                auto est = gl::sampling::estimate_expected_distance(x, smp_k, smp_trials, p);
                std::ostringstream csv;
                csv << "trial,distance,bound\n";
                for (size_t t = 0; t < est.per_trial.size(); ++t)
                    csv << t << "," << gl::io::format_double(est.per_trial[t]) << ","
                        << gl::io::format_double(est.theoretical_bound) << "\n";
                if (smp_common.out.empty())
                    std::cout << csv.str();
                else
                    gl::io::save_text(smp_common.out, csv.str());
            } else {
                auto batch = gl::sampling::sample_batch(x, smp_k, smp_trials, mode,
                                                        smp_common.seed);
                emit(gl::io::to_json(batch), smp_common.out);
            }
        } else if (mprun->parsed()) {
            mp_common.apply();
            auto spec = gl::io::mpnn_from_json(gl::io::load_json(mp_spec));
            auto input = gl::io::load_input(mp_input);
            gl::mpnn::ForwardResult fw = input.is_graph
                                             ? gl::mpnn::apply_graph(spec, input.graph)
                                             : gl::mpnn::apply_step(spec, input.step);
            json out;
            json hidden = json::array();
            for (const auto& h : fw.hidden) hidden.push_back(gl::io::to_json(h));
            out["hidden"] = hidden;
            if (fw.readout) out["readout"] = *fw.readout;
            bool ok = true;
            if (mp_commute) {
                if (!input.is_graph)
                    throw std::invalid_argument("--check-commute needs a graph input");
                gl::Tolerances tol = gl::tol_profile(mp_common.tol_profile);
                auto rep = gl::mpnn::check_commutativity(spec, input.graph, tol.commutativity);
                out["commutativity"] = json{{"max_deviation", rep.max_deviation},
                                            {"layer_deviation", rep.layer_deviation},
                                            {"readout_deviation", rep.readout_deviation},
                                            {"tol", rep.tol},
                                            {"pass", rep.pass}};
                ok = rep.pass;
            }
            emit(out, mp_common.out);
            if (!ok) return kExitInvariant;
        } else if (bnd->parsed()) {
            bnd_common.apply();
            json p = parse_params(bnd_params);
            gl::bounds::BoundReport rep;
            if (bnd_lip->parsed()) {
                gl::bounds::MpnnConstantsInput in;
                in.K = p.value("K", 1.0);
                in.L = p.value("L", 2.0);
                in.B = p.value("B", 2.0);
                in.T = p.value("T", 1);
                in.d = p.value("d", 1.0);
                in.r = p.value("r", 1.0);
                in.readout = p.value("readout", true);
                in.hidden_coeff = bnd_hidden_coeff;
                rep = gl::bounds::mpnn_lipschitz_constants(in).to_report();
                if (p.value("simplified", false)) {
                    auto [sc, kc] = gl::bounds::simplified_mpnn_bound(in.r,
                                                                      p.value("nonneg", false));
                    rep.add_linear("simplified_signal_coeff", sc);
                    rep.add_linear("simplified_kernel_coeff", kc);
                }
            } else if (bnd_cov->parsed()) {
                auto cov = gl::bounds::covering_number_log2(p.value("eps", 1.0),
                                                            p.value("c", 2.0), bnd_cover_coeff);
                rep.provenance = "covering-number";
                rep.add_linear("log2_kappa", cov.log2_kappa);
                rep.add_linear("k", cov.k);
                rep.flags.push_back(cov.ceil_path ? "ceil-path" : "analytic-path");
            } else if (bnd_gen->parsed()) {
                double N = p.value("N", 1e4), c = p.value("c", 2.0);
                rep = gl::bounds::generalization_bound(N, p.value("p", 0.05),
                                                       p.value("L_E", 1.0), p.value("L_H", 1.0),
                                                       p.value("B_H", 1.0), p.value("E00", 0.0),
                                                       c, bnd_cover_coeff)
                          .to_report();
                auto inv = gl::bounds::xi_inverse(N, c, bnd_cover_coeff);
                rep.add_linear("xi_ceiling_gap_rel", inv.ceiling_gap_rel);
                if (!inv.in_validity_window)
                    rep.flags.push_back("xi_inverse outside the small-radius validity window");
            } else {
                rep = gl::bounds::sampling_bounds(p.value("k", 1024), p.value("r", 1.0),
                                                  p.value("L", 1.0),
                                                  bnd_natural_log
                                                      ? gl::bounds::LogBase::Natural
                                                      : gl::bounds::LogBase::Two)
                          .to_report();
            }
            emit(gl::io::to_json(rep), bnd_common.out);
        } else if (ver->parsed()) {
            bool all_pass = true;
            std::vector<std::string> to_run;
            if (ver_suite == "all")
                to_run = gl::suites::suite_names();
            else
                to_run.push_back(ver_suite);
            std::string base_out = ver_cfg.out_dir;
            for (const auto& name : to_run) {
                gl::suites::SuiteConfig cfg = ver_cfg;
                cfg.suite = name;
                cfg.out_dir = to_run.size() > 1 ? base_out + "/" + name : base_out;
                auto res = gl::suites::run_suite(cfg);
                std::printf("[%s] %s: %d/%zu checks passed (%.2fs)\n",
                            res.pass ? "PASS" : "FAIL", name.c_str(),
                            static_cast<int>(res.rows.size()) - res.failures, res.rows.size(),
                            res.runtime_seconds);
                all_pass = all_pass && res.pass;
            }
            return all_pass ? kExitOk : kExitInvariant;
        } else if (ge->parsed()) {
            json out;
            if (ge_kind == "graph") {
                out = gl::io::to_json(gl::gen::random_graph(false, gl::WeightRange::ZeroOne, ge_n,
                                                            ge_d, ge_r, ge_seed));
            } else if (ge_kind == "mpnn") {
                gl::gen::MpnnGenOptions opts;
                opts.depth = ge_T;
                opts.pairs = ge_K;
                opts.hidden_dim = ge_hidden;
                opts.readout = ge_readout;
                opts.contractive = ge_contractive;
                out = gl::io::to_json(gl::gen::random_mpnn(ge_d, opts, ge_seed));
            } else {
                gl::KernelClass cls;
                if (ge_kind == "graphon") cls = gl::KernelClass::Graphon;
                else if (ge_kind == "directed-graphon") cls = gl::KernelClass::DirectedGraphon;
                else if (ge_kind == "symmetric-kernel") cls = gl::KernelClass::SymmetricKernel;
                else if (ge_kind == "general-kernel") cls = gl::KernelClass::GeneralKernel;
                else throw std::invalid_argument("unknown kind: " + ge_kind);
                out = gl::io::to_json(gl::gen::random_step(cls, ge_n, ge_d, ge_r, ge_seed));
            }
            gl::io::save_json(ge_out, out);
        }
    } catch (const gl::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
