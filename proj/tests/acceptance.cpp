// Acceptance suite: one line per criterion, PASS/FAIL with the measured
// numbers. Exit status is the number of failed criteria. argv[1] may carry
// the path of the command-line tool; criterion 9 then exercises it
// end-to-end, otherwise it falls back to in-process determinism.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracground/asymptotics.hpp"
#include "fracground/extension.hpp"
#include "fracground/model.hpp"
#include "fracground/sharp_constants.hpp"
#include "fracground/solver.hpp"
#include "fracground/spectral.hpp"

using namespace fracground;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

double now() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

int g_failures = 0;

void report(int criterion, const char* name, bool pass, const std::string& detail) {
    std::printf("criterion %d (%s): %s  [%s]\n", criterion, name,
                pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

Field random_band_limited(const Grid& g, std::uint64_t seed, int band = 5) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    std::vector<double> vals(g.size(), 0.0);
    for (int w = 0; w < 6; ++w) {
        std::array<int, 3> k{};
        for (int d = 0; d < g.dim; ++d)
            k[d] = static_cast<int>(rng() % (2 * band + 1)) - band;
        double amp = 0.4 * dist(rng), phase = dist(rng);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            auto idx = g.unflatten(i);
            double arg = phase;
            for (int d = 0; d < g.dim; ++d)
                arg += k[d] * kPi / g.half_width * g.coord(idx[d]);
            vals[i] += amp * std::cos(arg);
        }
    }
    return Field(g, std::move(vals));
}

// 1. Single-mode eigenfunction exactness.
void criterion1() {
    double t0 = now();
    double worst = 0.0;
    for (int dim : {1, 2}) {
        for (double s : {0.25, 0.5, 0.75}) {
            Grid g(dim, 32, 5.0);
            Field u = Field::sample(g, [&](const std::array<double, 3>& x) {
                return std::cos(kPi / 5.0 * (3.0 * x[0] + 1.0 * x[1]));
            });
            double xi2 = std::pow(kPi / 5.0, 2) * (dim == 1 ? 9.0 : 10.0);
            double lam = std::pow(xi2, s);
            Field fl = fractional_laplacian(u, s);
            for (std::size_t i = 0; i < u.size(); ++i)
                worst = std::max(worst, std::abs(fl[i] - lam * u[i]) / lam);
        }
    }
    double dt = now() - t0;
    report(1, "spectral exactness", worst <= 1e-12 && dt < 1.0,
           fmt("max relative error %.2e, %.2fs", worst, dt));
}

// 2. total - P/N = (s/N) a on random nonnegative fields.
void criterion2() {
    double t0 = now();
    double worst = 0.0;
    const std::array<std::pair<double, int>, 3> cases{
        std::pair{0.4, 1}, {0.5, 2}, {0.6, 3}};
    for (auto [s, N] : cases) {
        ModelParams p(1.0, s, N, 1.5, 2.5);
        Nonlinearity nl = canonical_f(p);
        Grid g(N, N == 3 ? 16 : 32, 4.0);
        for (int rep = 0; rep < 50; ++rep) {
            Field u = positive_part(random_band_limited(g, 1000 * N + rep));
            NormTriple t = norm_triple(u, p, nl);
            if (t.a < 1e-12) continue;
            EnergyBreakdown e = energy_from_triple(t, p);
            double lhs = e.total - e.pohozaev / N;
            double rhs = (s / N) * t.a;
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
    }
    double dt = now() - t0;
    report(2, "manifold energy identity", worst <= 1e-10 && dt < 10.0,
           fmt("max relative defect %.2e over 150 fields, %.2fs", worst, dt));
}

// 3. Extrapolated extremal quotient: delta-invariance and constant ratio.
void criterion3() {
    double t0 = now();
    // delta-invariance at (0.4, 1)
    std::vector<double> qs;
    for (double delta : {0.5, 1.0, 2.0})
        qs.push_back(extrapolated_sobolev_quotient(0.4, 1, 400.0, 1 << 15, 4, delta));
    double dq = (*std::max_element(qs.begin(), qs.end()) -
                 *std::min_element(qs.begin(), qs.end())) /
                qs[1];
    // ratio constancy across admissible (s, N) pairs; (0.6, 1) violates
    // N > 2s and is excluded.
    double rlo = 1e99, rhi = 0.0;
    std::string ratios;
    for (auto [s, N] : {std::pair{0.4, 1}, {0.4, 3}, {0.6, 3}}) {
        SharpConstants sc = measure_sharp_constants(s, N);
        rlo = std::min(rlo, sc.calibration_ratio);
        rhi = std::max(rhi, sc.calibration_ratio);
        ratios += fmt(" (%.1f,%d):%.4f", s, N, sc.calibration_ratio);
    }
    double spread = rhi / rlo - 1.0;
    double dt = now() - t0;
    report(3, "sharp constant", dq <= 0.01 && spread <= 0.02 && dt < 300.0,
           fmt("delta spread %.2e, ratio spread %.2e,%s, %.1fs", dq, spread,
               ratios.c_str(), dt));
}

// 4. Extension energy isometry and Neumann trace.
void criterion4() {
    double t0 = now();
    bool pass = true;
    std::string detail;
    Grid g(1, 512, 20.0);
    Field gauss = Field::sample(g, [](const std::array<double, 3>& x) {
        return std::exp(-x[0] * x[0] / 2.0);
    });
    for (double s : {0.25, 0.5, 0.75}) {
        ExtensionStack st = build_stack(gauss, s);
        double iso = extension_constant(s) * extension_energy(st) / dnorm_sq(gauss, s);
        Field nt = neumann_trace(gauss, s);
        Field fl = fractional_laplacian(gauss, s);
        double rel = lp_norm(sub(nt, fl), 2.0) / lp_norm(fl, 2.0);
        pass = pass && iso >= 0.95 && iso <= 1.05 && rel <= 0.02;
        detail += fmt(" s=%.2f iso=%.4f trace=%.4f;", s, iso, rel);
    }
    Grid gb(1, 1024, 30.0);
    Field ud = extremal_u_delta(gb, 0.4, 1.0);
    ExtensionStack st = build_stack(ud, 0.4);
    double iso = extension_constant(0.4) * extension_energy(st) / dnorm_sq(ud, 0.4);
    pass = pass && iso >= 0.95 && iso <= 1.05;
    detail += fmt(" extremal iso=%.4f", iso);
    double dt = now() - t0;
    report(4, "extension isometry", pass && dt < 120.0,
           fmt("%s, %.1fs", detail.c_str(), dt));
}

// 5. Truncated-extremal exponent fits.
void criterion5() {
    double t0 = now();
    bool pass = true;
    std::string detail;
    auto check_fit = [&](const char* tag, double measured, double predicted,
                         double r2) {
        bool ok = std::abs(measured - predicted) <= 0.15 * std::abs(predicted) &&
                  r2 >= 0.98;
        pass = pass && ok;
        detail += fmt(" %s %.3f/%.3f r2=%.4f;", tag, measured, predicted, r2);
    };
    const std::vector<double> ladder{0.02, 0.03, 0.05, 0.08, 0.12, 0.2};
    GapFit gap = seminorm_gap_study(ladder, Grid(1, 4096, 3.0), 0.3);
    check_fit("gap", gap.exponent_measured, gap.exponent_predicted, gap.r_squared);
    ScalingFit f1 = lp_scaling_study(2.0, ladder, Grid(3, 192, 3.0), 0.6);
    check_fit("Lp>", f1.exponent_measured, f1.exponent_predicted, f1.r_squared);
    ScalingFit f2 = lp_scaling_study(
        2.5, {0.005, 0.008, 0.012, 0.02, 0.03, 0.05}, Grid(1, 4096, 3.0), 0.3);
    check_fit("Lp=", f2.exponent_measured, f2.exponent_predicted, f2.r_squared);
    pass = pass && f2.log_flag;
    ScalingFit f3 = lp_scaling_study(
        2.0, {0.002, 0.003, 0.005, 0.008, 0.012, 0.02}, Grid(1, 16384, 3.0), 0.4);
    check_fit("Lp<", f3.exponent_measured, f3.exponent_predicted, f3.r_squared);
    double dt = now() - t0;
    report(5, "asymptotic exponents", pass && dt < 300.0,
           fmt("%s %.1fs", detail.c_str(), dt));
}

// 6. Threshold comparison per regime.
void criterion6() {
    double t0 = now();
    bool pass = true;
    std::string detail;
    const std::vector<double> ladder{0.02, 0.03, 0.05, 0.08, 0.12, 0.2};
    {
        SharpConstants sc = sharp_constants_from_formula(0.6, 3);
        // q = 3 < 2* = 10/3 at (N, s) = (3, 0.6)
        bool below = any_below_threshold(ModelParams(1.0, 0.6, 3, 1.0, 3.0),
                                         ladder, Grid(3, 96, 3.0), sc);
        pass = pass && below;
        detail += fmt(" high-dim@lambda=1:%d;", below ? 1 : 0);
    }
    {
        SharpConstants sc = sharp_constants_from_formula(0.3, 1);
        bool below = any_below_threshold(ModelParams(1.0, 0.3, 1, 1.0, 4.8),
                                         {1e-4, 2e-4, 3e-4, 5e-4},
                                         Grid(1, 65536, 3.0), sc);
        pass = pass && below;
        detail += fmt(" low-dim@lambda=1:%d;", below ? 1 : 0);
    }
    {
        SharpConstants sc = sharp_constants_from_formula(0.3, 1);
        Grid g(1, 1024, 3.0);
        ModelParams p(1.0, 0.3, 1, 1.0, 2.5);
        double ls = find_lambda_star(p, ladder, g, sc);
        bool at = any_below_threshold(ModelParams(1.0, 0.3, 1, ls * 1.02, 2.5),
                                      ladder, g, sc);
        bool small = any_below_threshold(ModelParams(1.0, 0.3, 1, ls / 100.0, 2.5),
                                         ladder, g, sc);
        pass = pass && std::isfinite(ls) && at && !small;
        detail += fmt(" lambda*=%.3f at:%d small:%d", ls, at ? 1 : 0, small ? 1 : 0);
    }
    double dt = now() - t0;
    report(6, "threshold regimes", pass && dt < 300.0,
           fmt("%s, %.1fs", detail.c_str(), dt));
}

// 7. Solver certificate plus runtime at the reference resolutions.
void criterion7() {
    bool pass = true;
    std::string detail;
    auto certify = [&](const char* tag, const SolveConfig& cfg) {
        double t0 = now();
        SolveReport r = minimize_reduced(cfg);
        double dt = now() - t0;
        double s = cfg.params.s;
        int N = cfg.params.dim;
        double a = dnorm_sq(r.u_star, s);
        double level_defect = std::abs(r.energy_level - (s / N) * a) /
                              std::abs(r.energy_level);
        bool ok = r.converged && r.gradient_residual <= 1e-6 &&
                  r.pohozaev_residual <= 1e-3 && r.positivity_min >= 0.0 &&
                  level_defect <= 1e-2 && std::abs(r.t_star - 1.0) <= 1e-3;
        pass = pass && ok;
        detail += fmt(" %s grad=%.1e P=%.1e t*-1=%+.1e lvl=%.1e min=%.1e %.1fs;",
                      tag, r.gradient_residual, r.pohozaev_residual,
                      r.t_star - 1.0, level_defect, r.positivity_min, dt);
    };
    // certificate runs (box large enough that the closed-form dilation
    // algebra holds to the required tolerance)
    certify("N=1", SolveConfig{ModelParams(1.0, 0.4, 1, 20.0, 4.0),
                               Grid(1, 16384, 150.0), {}});
    certify("N=2", SolveConfig{ModelParams(1.0, 0.5, 2, 4.0, 3.0),
                               Grid(2, 512, 14.0), {}});
    // runtime probes at the reference resolutions
    for (auto [tag, cfg] : {std::pair<const char*, SolveConfig>{
                                "n=512", SolveConfig{ModelParams(1.0, 0.4, 1, 20.0, 4.0),
                                                     Grid(1, 512, 15.0), {}}},
                            {"128^2", SolveConfig{ModelParams(1.0, 0.5, 2, 4.0, 3.0),
                                                  Grid(2, 128, 10.0), {}}}}) {
        double t0 = now();
        SolveReport r = minimize_reduced(cfg);
        double dt = now() - t0;
        pass = pass && dt < 120.0 && r.gradient_residual <= 1e-6;
        detail += fmt(" %s %.1fs grad=%.1e;", tag, dt, r.gradient_residual);
    }
    report(7, "solver certificate", pass, detail);
}

// 8. Mountain-pass geometry: positive ring, negative wedge.
void criterion8() {
    double t0 = now();
    ModelParams p(1.0, 0.4, 1, 20.0, 4.0);
    Nonlinearity nl = canonical_f(p);
    Grid g(1, 512, 20.0);
    int positive = 0;
    const int kDirections = 100;
    for (int i = 0; i < kDirections; ++i) {
        Field v = random_band_limited(g, 777 + i);
        NormTriple t = norm_triple(v, p, nl);
        double norm = std::sqrt(t.a + p.m * t.b);
        if (norm < 1e-12) continue;
        Field w = scale(v, 0.05 / norm);  // radius 0.05 in the solution norm
        if (energy(w, p, nl).total > 0.0) ++positive;
    }
    WedgeWitness w = find_negative_energy_wedge(p, g, nl);
    double dt = now() - t0;
    report(8, "mountain-pass geometry",
           positive == kDirections && w.energy < 0.0 && dt < 60.0,
           fmt("%d/%d directions positive, wedge energy %.3e (R=%.2f T=%.2f "
               "theta=%.2f), %.1fs",
               positive, kDirections, w.energy, w.R, w.T, w.theta, dt));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 9. Byte-identical reruns.
void criterion9(const char* cli) {
    if (cli != nullptr) {
        fs::path base = fs::temp_directory_path() / "fracground_acceptance";
        fs::remove_all(base);
        fs::create_directories(base);
        fs::path cfg = base / "solve.json";
        {
            std::ofstream out(cfg);
            // pohozaev_tol widened to what this runtime-probe resolution can
            // reach; the criterion checks byte-identical reruns, not accuracy
            out << "{\n  \"m\": 1.0, \"s\": 0.4, \"N\": 1, \"lambda\": 20.0, "
                   "\"q\": 4.0,\n  \"n\": 512, \"L\": 15.0, \"max_iters\": 200,\n"
                   "  \"pohozaev_tol\": 0.01\n}\n";
        }
        bool pass = true;
        std::string detail;
        for (const char* dir : {"a", "b"}) {
            std::string cmd = std::string(cli) + " solve --config " +
                              cfg.string() + " --out " + (base / dir).string() +
                              " --seed 42 > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) {
                pass = false;
                detail += " run failed;";
            }
        }
        for (const char* file :
             {"solve_report.json", "u_star.bin", "radial_profile.csv"}) {
            std::string a = slurp(base / "a" / file);
            std::string b = slurp(base / "b" / file);
            bool same = !a.empty() && a == b;
            pass = pass && same;
            detail += fmt(" %s:%s(%zu bytes);", file, same ? "identical" : "DIFFER",
                          a.size());
        }
        report(9, "determinism", pass, detail);
        fs::remove_all(base);
    } else {
        SolveConfig cfg{ModelParams(1.0, 0.4, 1, 20.0, 4.0), Grid(1, 512, 15.0), {}};
        cfg.max_iters = 200;
        SolveReport a = minimize_reduced(cfg);
        SolveReport b = minimize_reduced(cfg);
        bool same = a.iterations == b.iterations &&
                    std::memcmp(&a.energy_level, &b.energy_level, 8) == 0;
        for (std::size_t i = 0; same && i < a.u_star.size(); ++i) {
            double x = a.u_star[i], y = b.u_star[i];
            same = std::memcmp(&x, &y, 8) == 0;
        }
        report(9, "determinism", same, "in-process rerun bit-identical");
    }
}

}  // namespace

int main(int argc, char** argv) {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9(argc > 1 ? argv[1] : nullptr);
    std::printf("%s (%d/9 criteria passed)\n",
                g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                9 - g_failures);
    return g_failures;
}
