// Command-line driver: constants measurement, nonlinearity validation,
// extension verification, truncated-extremal asymptotics, ground-state
// solves, and deterministic parameter sweeps. All artifacts are flat files
// (JSON reports, CSV tables, binary grid dumps) under --out.
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fracground/asymptotics.hpp"
#include "fracground/extension.hpp"
#include "fracground/io.hpp"
#include "fracground/model.hpp"
#include "fracground/regime.hpp"
#include "fracground/sharp_constants.hpp"
#include "fracground/solver.hpp"
#include "fracground/spectral.hpp"

using json = nlohmann::ordered_json;
using namespace fracground;
namespace fs = std::filesystem;

namespace {

struct GlobalOpts {
    std::string config;
    std::string out = ".";
    std::uint64_t seed = 0;
    int workers = 0;  // 0: hardware concurrency
};

void write_json(const fs::path& path, const json& doc) {
    fs::create_directories(path.parent_path());
    write_text_file(path, doc.dump(2) + "\n");
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw Error("cannot open config: " + path);
    json doc;
    in >> doc;
    return doc;
}

// Stable per-tuple seed: FNV-1a over the canonical text of the tuple,
// mixed with the master seed, so sweep rows are reproducible under
// reordering.
std::uint64_t tuple_seed(std::uint64_t master, const std::string& canonical) {
    std::uint64_t h = 14695981039346656037ull ^ master;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string csv_num(double v) {
    std::ostringstream ss;
    ss << std::setprecision(17) << v;
    return ss.str();
}

json params_json(const ModelParams& p) {
    return json{{"m", p.m},
                {"s", p.s},
                {"N", p.dim},
                {"lambda", p.lambda},
                {"q", p.q},
                {"two_star", p.two_star()}};
}

ModelParams params_from_json(const json& j) {
    return ModelParams(j.value("m", 1.0), j.at("s").get<double>(),
                       j.at("N").get<int>(), j.value("lambda", 1.0),
                       j.at("q").get<double>());
}

json constants_json(const SharpConstants& sc, bool measured) {
    return json{{"s", sc.s},
                {"N", sc.dim},
                {"S_paper", sc.S_paper},
                {"k_s", sc.k_s},
                {"S_F", sc.S_F},
                {"threshold", sc.threshold},
                {"calibration_ratio", sc.calibration_ratio},
                {"measured", measured}};
}

// ---------------------------------------------------------------- constants
int run_constants(const GlobalOpts& g, double s, int N, bool formula_only) {
    SharpConstants sc =
        formula_only ? sharp_constants_from_formula(s, N) : measure_sharp_constants(s, N);
    json doc = constants_json(sc, !formula_only);
    write_json(fs::path(g.out) / "constants.json", doc);
    std::printf("%s\n", doc.dump(2).c_str());
    return 0;
}

// --------------------------------------------------------------- validate-f
int run_validate_f(const GlobalOpts& g, const ModelParams& p) {
    Nonlinearity nl = canonical_f(p);
    HypothesisReport r = validate_hypotheses(nl, p);
    RegimeVerdict v = classify_regime(p.dim, p.s, p.q);
    json doc{{"params", params_json(p)},
             {"f1_pass", r.f1_pass},
             {"f1_worst", r.f1_worst},
             {"f2_pass", r.f2_pass},
             {"f2_worst", r.f2_worst},
             {"f3_pass", r.f3_pass},
             {"f3_worst", r.f3_worst},
             {"regime", regime_name(v.regime)},
             {"q_boundary", v.q_boundary},
             {"two_star", v.two_star}};
    write_json(fs::path(g.out) / "validate_f.json", doc);
    std::printf("%s\n", doc.dump(2).c_str());
    return r.f1_pass && r.f2_pass && r.f3_pass ? 0 : 1;
}

// ---------------------------------------------------------- extension-check
int run_extension_check(const GlobalOpts& g, double s, int N, int n, double L) {
    Grid grid(N, n, L);
    Field gauss = Field::sample(grid, [&](const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (int d = 0; d < N; ++d) r2 += x[d] * x[d];
        return std::exp(-r2 / 2.0);
    });
    ExtensionStack st = build_stack(gauss, s);
    double iso = extension_constant(s) * extension_energy(st) / dnorm_sq(gauss, s);
    Field nt = neumann_trace(gauss, s);
    Field fl = fractional_laplacian(gauss, s);
    double trace_rel = lp_norm(sub(nt, fl), 2.0) / lp_norm(fl, 2.0);
    double measured_k = calibrate_extension_constant(s, grid);
    json doc{{"s", s},
             {"N", N},
             {"n", n},
             {"L", L},
             {"k_s", extension_constant(s)},
             {"k_s_measured", measured_k},
             {"isometry_ratio", iso},
             {"neumann_trace_rel_l2", trace_rel},
             {"stack_slices", st.slices.size()},
             {"stack_tail_estimate", st.tail_estimate}};
    if (N == 1 && 1.0 > 2.0 * s) {
        Field ud = extremal_u_delta(Grid(1, 2 * n, 1.5 * L), s, 1.0);
        ExtensionStack st2 = build_stack(ud, s);
        doc["extremal_isometry_ratio"] =
            extension_constant(s) * extension_energy(st2) / dnorm_sq(ud, s);
    }
    write_json(fs::path(g.out) / "extension_check.json", doc);
    std::printf("%s\n", doc.dump(2).c_str());
    bool ok = iso > 0.95 && iso < 1.05 && trace_rel < 0.02;
    return ok ? 0 : 1;
}

// -------------------------------------------------------------- asymptotics
struct CaseSpec {
    std::string name;
    int N;
    double s;
    double q;
    double theta;  // lambda = delta^(-theta); 0 means lambda = 1
};

CaseSpec case_spec(const std::string& c) {
    if (c == "i") return {"i", 3, 0.6, 3.0, 0.0};
    if (c == "ii") return {"ii", 2, 0.5, 3.0, 0.0};
    if (c == "iii") return {"iii", 1, 0.3, 4.0, 0.0};
    if (c == "iv") return {"iv", 1, 0.3, 2.5, 0.3};
    if (c == "v") return {"v", 1, 0.3, 2.2, 0.3};
    throw ParameterError("unknown case: " + c + " (expected i..v)");
}

int default_case_grid(int N) { return N == 1 ? 1024 : (N == 2 ? 256 : 96); }

int run_asymptotics(const GlobalOpts& g, const std::string& case_name, int n,
                    double L) {
    CaseSpec cs = case_spec(case_name);
    if (n == 0) n = default_case_grid(cs.N);
    Grid grid(cs.N, n, L);
    fs::create_directories(g.out);
    const std::vector<double> ladder{0.02, 0.03, 0.05, 0.08, 0.12, 0.2};
    SharpConstants sc = sharp_constants_from_formula(cs.s, cs.N);

    std::ostringstream csv, bound_csv;
    csv << "delta,lambda,a,b,qnorm,bound,t_delta,below_threshold\n";
    bound_csv << "delta,bound,threshold\n";
    bool below_smallest = false;
    json rows = json::array();
    for (double delta : ladder) {
        double lambda = cs.theta > 0.0 ? std::pow(delta, -cs.theta) : 1.0;
        ModelParams p(1.0, cs.s, cs.N, lambda, cs.q);
        TruncatedExtremal v = make_truncated_extremal(grid, cs.s, delta);
        ReducedCoeffs rc = reduced_coeffs(v, p);
        std::string bound_txt = "nan";
        double bound = std::nan("");
        double t_delta = std::nan("");
        bool below = false;
        try {
            GMax m = maximize_g(rc, p);
            bound = m.value;
            t_delta = m.t_delta;
            below = bound < sc.threshold;
        } catch (const RegimeError&) {
            // no interior maximum at this delta; recorded as nan
        }
        if (delta == ladder.front()) below_smallest = below;
        csv << csv_num(delta) << ',' << csv_num(lambda) << ',' << csv_num(rc.a)
            << ',' << csv_num(rc.b) << ',' << csv_num(rc.qn) << ','
            << csv_num(bound) << ',' << csv_num(t_delta) << ','
            << (below ? 1 : 0) << '\n';
        bound_csv << csv_num(delta) << ',' << csv_num(bound) << ','
                  << csv_num(sc.threshold) << '\n';
        rows.push_back(json{{"delta", delta},
                            {"lambda", lambda},
                            {"bound", bound},
                            {"t_delta", t_delta},
                            {"below_threshold", below}});
    }

    // (t, g(t)) profile at the smallest delta, for plotting
    {
        double delta = ladder.front();
        double lambda = cs.theta > 0.0 ? std::pow(delta, -cs.theta) : 1.0;
        ModelParams p(1.0, cs.s, cs.N, lambda, cs.q);
        TruncatedExtremal v = make_truncated_extremal(grid, cs.s, delta);
        ReducedCoeffs rc = reduced_coeffs(v, p);
        std::ostringstream prof;
        prof << "t,g\n";
        for (double t = 0.05; t <= 4.0; t += 0.05)
            prof << csv_num(t) << ',' << csv_num(reduced_g(t, rc, p)) << '\n';
        write_text_file(fs::path(g.out) / ("g_profile_case_" + cs.name + ".csv"),
                        prof.str());
    }

    GapFit gap = seminorm_gap_study(ladder, grid, cs.s);
    ScalingFit lp = lp_scaling_study(cs.q, ladder, grid, cs.s);

    json doc{{"case", cs.name},
             {"N", cs.N},
             {"s", cs.s},
             {"q", cs.q},
             {"theta", cs.theta},
             {"grid_n", n},
             {"grid_L", L},
             {"threshold", sc.threshold},
             {"below_threshold_at_smallest_delta", below_smallest},
             {"gap_fit",
              {{"exponent_measured", gap.exponent_measured},
               {"exponent_predicted", gap.exponent_predicted},
               {"offset", gap.offset},
               {"r_squared", gap.r_squared}}},
             {"lq_fit",
              {{"exponent_measured", lp.exponent_measured},
               {"exponent_predicted", lp.exponent_predicted},
               {"log_flag", lp.log_flag},
               {"r_squared", lp.r_squared}}},
             {"rows", rows}};
    fs::create_directories(g.out);
    write_text_file(fs::path(g.out) / ("asymptotics_case_" + cs.name + ".csv"),
                    csv.str());
    write_text_file(fs::path(g.out) / ("bound_curve_case_" + cs.name + ".csv"),
                    bound_csv.str());
    write_json(fs::path(g.out) / ("asymptotics_case_" + cs.name + ".json"), doc);
    std::printf("%s\n", doc.dump(2).c_str());
    return 0;
}

// -------------------------------------------------------------------- solve
SolveConfig solve_config_from_json(const json& j, std::uint64_t seed) {
    ModelParams p = params_from_json(j);
    Grid grid(p.dim, j.value("n", p.dim == 1 ? 512 : (p.dim == 2 ? 128 : 64)),
              j.value("L", 15.0));
    SolveConfig cfg{p, grid, {}};
    if (j.contains("init")) {
        const json& init = j.at("init");
        std::string kind = init.value("kind", "extremal");
        if (kind == "gaussian_bump") cfg.init.kind = InitKind::gaussian_bump;
        else if (kind == "extremal") cfg.init.kind = InitKind::extremal;
        else if (kind == "wedge") cfg.init.kind = InitKind::wedge;
        else throw ParameterError("unknown init kind: " + kind);
        cfg.init.delta = init.value("delta", 0.1);
        cfg.init.wedge_R = init.value("R", 2.0);
        cfg.init.wedge_T = init.value("T", 2.0);
    }
    cfg.max_iters = j.value("max_iters", 2000);
    cfg.grad_tol = j.value("grad_tol", 1e-6);
    cfg.pohozaev_tol = j.value("pohozaev_tol", 1e-3);
    cfg.descent_iters = j.value("descent_iters", 40);
    cfg.stabilizer_gamma = j.value("stabilizer_gamma", 0.0);
    cfg.seed = seed;
    return cfg;
}

json solve_report_json(const SolveConfig& cfg, const SolveReport& r) {
    return json{{"params", params_json(cfg.params)},
                {"grid", {{"N", cfg.grid.dim},
                          {"n", cfg.grid.points_per_axis},
                          {"L", cfg.grid.half_width}}},
                {"settings",
                 {{"max_iters", cfg.max_iters},
                  {"grad_tol", cfg.grad_tol},
                  {"pohozaev_tol", cfg.pohozaev_tol},
                  {"descent_iters", cfg.descent_iters},
                  {"stabilizer_gamma", r.gamma_used},
                  {"seed", cfg.seed}}},
                {"energy_level", r.energy_level},
                {"pohozaev_residual", r.pohozaev_residual},
                {"gradient_residual", r.gradient_residual},
                {"threshold", r.threshold},
                {"below_threshold", r.below_threshold},
                {"positivity_min", r.positivity_min},
                {"radial_asymmetry", r.radial_asymmetry},
                {"t_star", r.t_star},
                {"dilation_path_max", r.dilation_path_max},
                {"iterations", r.iterations},
                {"converged", r.converged}};
}

std::string radial_profile_csv(const Field& u) {
    const Grid& g = u.grid();
    std::ostringstream ss;
    ss << "r,u\n";
    int n = g.points_per_axis;
    // axis ray from the center node outward
    for (int j = 0; j <= n / 2 - 1; ++j) {
        std::size_t flat = 0;
        for (int d = 0; d < g.dim; ++d)
            flat = flat * n + (d == 0 ? n / 2 + j : n / 2);
        ss << csv_num(j * g.spacing()) << ',' << csv_num(u[flat]) << '\n';
    }
    return ss.str();
}

int run_solve(const GlobalOpts& g) {
    json j = load_config(g.config);
    SolveConfig cfg = solve_config_from_json(j, g.seed);
    SolveReport r = minimize_reduced(cfg);
    fs::create_directories(g.out);
    json doc = solve_report_json(cfg, r);
    write_json(fs::path(g.out) / "solve_report.json", doc);
    write_grid_dump(fs::path(g.out) / "u_star.bin", r.u_star, cfg.params.s);
    write_text_file(fs::path(g.out) / "radial_profile.csv",
                    radial_profile_csv(r.u_star));
    std::printf("%s\n", doc.dump(2).c_str());
    return r.converged ? 0 : 2;
}

// -------------------------------------------------------------------- sweep
int run_sweep(const GlobalOpts& g) {
    json j = load_config(g.config);
    const json tuples = j.value("tuples", json::array());
    // "solve" is either a boolean or an object of shared solver settings
    // (n, L, max_iters, ...) applied to every tuple
    const json solve_opts = j.value("solve", json(false));
    const bool do_solve =
        solve_opts.is_object() || (solve_opts.is_boolean() && solve_opts.get<bool>());
    std::vector<double> ladder{0.02, 0.03, 0.05, 0.08, 0.12, 0.2};
    if (j.contains("deltas")) ladder = j.at("deltas").get<std::vector<double>>();

    struct Row {
        std::string csv;
        json doc;
    };
    std::vector<Row> rows(tuples.size());

    auto process = [&](std::size_t i) {
        const json& t = tuples[i];
        std::ostringstream canon;
        canon << t.value("N", 0) << ',' << t.value("s", 0.0) << ','
              << t.value("q", 0.0) << ',' << t.value("lambda", 1.0) << ','
              << t.value("m", 1.0);
        std::uint64_t seed = tuple_seed(g.seed, canon.str());
        json doc{{"tuple", t}, {"seed", seed}};
        std::ostringstream csv;
        csv << canon.str() << ',' << seed << ',';
        try {
            int N = t.at("N").get<int>();
            double s = t.at("s").get<double>();
            double q = t.at("q").get<double>();
            RegimeVerdict v = classify_regime(N, s, q);
            doc["regime"] = regime_name(v.regime);
            csv << regime_name(v.regime) << ',';
            if (v.regime == Regime::inadmissible) {
                doc["error"] = "inadmissible tuple";
                csv << ",,,\n";
                rows[i] = {csv.str(), doc};
                return;
            }
            ModelParams p = params_from_json(t);
            SharpConstants sc = sharp_constants_from_formula(s, N);
            Grid grid(N, t.value("n", default_case_grid(N)), t.value("L", 3.0));
            double best = std::nan("");
            bool below = false;
            for (double delta : ladder) {
                try {
                    CmBound cb = cm_upper_bound(p, delta, grid, sc);
                    if (!(best == best) || cb.bound < best) best = cb.bound;
                    below = below || cb.below_threshold;
                } catch (const RegimeError&) {
                }
            }
            doc["threshold"] = sc.threshold;
            doc["cm_bound_min"] = best;
            doc["below_threshold"] = below;
            csv << csv_num(sc.threshold) << ',' << csv_num(best) << ','
                << (below ? 1 : 0) << ',';
            if (do_solve) {
                json sj = t;
                sj["n"] = t.value("solve_n", N == 1 ? 2048 : 128);
                sj["L"] = t.value("solve_L", N == 1 ? 30.0 : 10.0);
                if (solve_opts.is_object())
                    for (const auto& [k, v] : solve_opts.items()) sj[k] = v;
                SolveConfig cfg = solve_config_from_json(sj, seed);
                SolveReport r = minimize_reduced(cfg);
                doc["solve"] = solve_report_json(cfg, r);
                csv << csv_num(r.energy_level);
            }
            csv << '\n';
        } catch (const std::exception& e) {
            doc["error"] = e.what();
            csv << "error: " << e.what() << '\n';
        }
        rows[i] = {csv.str(), doc};
    };

    int workers = g.workers > 0
                      ? g.workers
                      : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(tuples.size() + 1)));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < tuples.size();
                 i = next.fetch_add(1))
                process(i);
        });
    for (auto& th : pool) th.join();

    std::ostringstream csv;
    csv << "N,s,q,lambda,m,seed,regime,threshold,cm_bound_min,below_threshold,"
           "energy_level\n";
    json docs = json::array();
    for (const auto& r : rows) {
        csv << r.csv;
        docs.push_back(r.doc);
    }
    fs::create_directories(g.out);
    write_text_file(fs::path(g.out) / "sweep.csv", csv.str());
    write_json(fs::path(g.out) / "sweep.json",
               json{{"master_seed", g.seed}, {"rows", docs}});
    std::printf("sweep: %zu tuples -> %s\n", tuples.size(),
                (fs::path(g.out) / "sweep.csv").string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral verification suite for fractional ground states"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--config", g.config, "JSON configuration file");
    app.add_option("--out", g.out, "Output directory");
    app.add_option("--seed", g.seed, "Master seed");
    app.add_option("--workers", g.workers, "Worker threads (0 = hardware)");

    double s = 0.4, L = 20.0, lambda = 1.0, q = 4.0, m = 1.0;
    int N = 1, n = 512;
    bool formula_only = false;
    std::string case_name = "i";

    CLI::App* c_const = app.add_subcommand("constants", "Sharp-constant bundle");
    c_const->add_option("--s", s, "Fractional order");
    c_const->add_option("--N", N, "Dimension");
    c_const->add_flag("--formula-only", formula_only,
                      "Skip the extremal-quotient measurement");

    CLI::App* c_val = app.add_subcommand("validate-f", "Nonlinearity hypotheses");
    c_val->add_option("--s", s, "Fractional order");
    c_val->add_option("--N", N, "Dimension");
    c_val->add_option("--q", q, "Subcritical exponent");
    c_val->add_option("--lambda", lambda, "Subcritical weight");
    c_val->add_option("--m", m, "Mass");

    CLI::App* c_ext = app.add_subcommand("extension-check",
                                         "Extension isometry and trace report");
    c_ext->add_option("--s", s, "Fractional order");
    c_ext->add_option("--N", N, "Dimension");
    c_ext->add_option("--n", n, "Points per axis");
    c_ext->add_option("--L", L, "Box half-width");

    CLI::App* c_asym = app.add_subcommand("asymptotics",
                                          "Truncated-extremal case study");
    c_asym->add_option("--case", case_name, "Case label i..v");
    int asym_n = 0;
    double asym_L = 3.0;
    c_asym->add_option("--n", asym_n, "Points per axis (0 = per-dimension default)");
    c_asym->add_option("--L", asym_L, "Box half-width");

    app.add_subcommand("solve", "Ground-state solve from --config");
    app.add_subcommand("sweep", "Parameter sweep from --config");

    // let global options (--config/--out/--seed/--workers) appear after the
    // subcommand name
    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_const->parsed()) return run_constants(g, s, N, formula_only);
        if (c_val->parsed())
            return run_validate_f(g, ModelParams(m, s, N, lambda, q));
        if (c_ext->parsed()) return run_extension_check(g, s, N, n, L);
        if (c_asym->parsed()) return run_asymptotics(g, case_name, asym_n, asym_L);
        if (app.get_subcommand("solve")->parsed()) return run_solve(g);
        if (app.get_subcommand("sweep")->parsed()) return run_sweep(g);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
