#include "fracground/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fracground/spectral.hpp"

namespace fracground {

Field wedge_profile(double R, double T, const Grid& grid) {
    if (!(R > 0.0) || !(T > 0.0))
        throw ParameterError("wedge radius and height must be positive");
    if (!(R + 1.0 < grid.half_width))
        throw GeometryError("wedge support R+1 must fit inside the box");
    return Field::sample(grid, [&](const std::array<double, 3>& x) {
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        if (r <= R) return T;
        if (r >= R + 1.0) return 0.0;
        return T * (R + 1.0 - r);
    });
}

WedgeWitness find_negative_energy_wedge(const ModelParams& params,
                                        const Grid& grid,
                                        const Nonlinearity& nl) {
    // Mirror the existence argument: first a height T0 whose well depth
    // m/2 T^2 - F(T) is negative, then a plateau radius making the bulk term
    // dominate, then a dilation pushing the surface term down.
    double T0 = -1.0;
    for (double T : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        if (0.5 * params.m * T * T - nl.F(T) < 0.0) {
            T0 = T;
            break;
        }
    }
    if (T0 < 0.0)
        throw RegimeError("no sampled height makes the potential well negative");

    const double L = grid.half_width;
    for (double R : {L / 8.0, L / 4.0, L / 2.0, L - 1.5}) {
        if (!(R > 0.0 && R + 1.0 < L)) continue;
        const Field w = wedge_profile(R, T0, grid);
        const NormTriple t = norm_triple(w, params, nl);
        for (double theta = 0.0; theta <= 6.0; theta += 0.25) {
            const double e = scaled_energy_from_triple(theta, t, params);
            if (e < 0.0) return WedgeWitness{R, T0, theta, e};
        }
    }
    throw RegimeError("scripted wedge search found no negative-energy point");
}

namespace {

double rescale_factor(const NormTriple& t, const ModelParams& p) {
    const double denom = t.c - 0.5 * p.m * t.b;
    if (!(denom > 0.0))
        throw InfeasibleError(
            "potential does not dominate the mass term; cannot reach the "
            "Pohozaev manifold");
    const double t2s = 0.5 * (p.dim - 2.0 * p.s) * t.a / (p.dim * denom);
    return std::pow(t2s, 1.0 / (2.0 * p.s));
}

}  // namespace

std::pair<double, Field> pohozaev_rescale(const Field& u,
                                          const ModelParams& params,
                                          const Nonlinearity& nl) {
    const NormTriple t = norm_triple(u, params, nl);
    const double ts = rescale_factor(t, params);
    return {ts, dilate(u, ts)};
}

double reduced_energy(const Field& u, const ModelParams& params,
                      const Nonlinearity& nl) {
    const NormTriple t = norm_triple(u, params, nl);
    const double ts = rescale_factor(t, params);
    return (params.s / params.dim) *
           std::pow(ts, params.dim - 2.0 * params.s) * t.a;
}

PathLevel dilation_path_level(const Field& u, const ModelParams& params,
                              const Nonlinearity& nl) {
    const NormTriple t = norm_triple(u, params, nl);
    if (!(t.a > 0.0)) throw ParameterError("dilation path needs a nonzero field");
    const double K = 0.5 * params.m * t.b - t.c;
    if (!(K < 0.0))
        throw RegimeError("dilation path has no interior maximum here");
    PathLevel out;
    out.t_star = rescale_factor(t, params);
    const NormTriple td = dilate_triple(t, out.t_star, params);
    out.level = 0.5 * td.a + 0.5 * params.m * td.b - td.c;
    return out;
}

double radial_asymmetry(const Field& u) {
    const Grid& g = u.grid();
    const int n = g.points_per_axis;
    const int N = g.dim;

    // Average u over the grid point group: per-axis reflections composed
    // with axis permutations.
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    if (N == 1) perms.push_back(p);
    else if (N == 2) { perms.push_back({0, 1, 2}); perms.push_back({1, 0, 2}); }
    else {
        std::array<int, 3> q{0, 1, 2};
        std::sort(q.begin(), q.end());
        do perms.push_back(q); while (std::next_permutation(q.begin(), q.end()));
    }

    std::vector<double> sym(u.size(), 0.0);
    int count = 0;
    for (const auto& perm : perms) {
        for (int signs = 0; signs < (1 << N); ++signs) {
            ++count;
            std::array<int, 3> idx{0, 0, 0};
            for (std::size_t i = 0; i < u.size(); ++i) {
                std::array<int, 3> src{0, 0, 0};
                for (int d = 0; d < N; ++d) {
                    int j = idx[perm[d]];
                    if (signs & (1 << d)) j = (n - j) % n;
                    src[d] = j;
                }
                std::size_t flat = 0;
                for (int d = 0; d < N; ++d)
                    flat = flat * static_cast<std::size_t>(n) +
                           static_cast<std::size_t>(src[d]);
                sym[i] += u[flat];
                for (int d = N - 1; d >= 0; --d) {
                    if (++idx[d] < n) break;
                    idx[d] = 0;
                }
            }
        }
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - sym[i] / count;
        num += d * d;
        den += u[i] * u[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

namespace {

Field make_init(const SolveConfig& cfg) {
    switch (cfg.init.kind) {
        case InitKind::gaussian_bump:
            return Field::sample(cfg.grid, [](const std::array<double, 3>& x) {
                return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 2.0);
            });
        case InitKind::extremal:
            return extremal_u_delta(cfg.grid, cfg.params.s, cfg.init.delta);
        case InitKind::wedge:
            return wedge_profile(cfg.init.wedge_R, cfg.init.wedge_T, cfg.grid);
        case InitKind::custom:
            if (!cfg.init.custom)
                throw ParameterError("custom init requested without a field");
            return *cfg.init.custom;
    }
    throw ParameterError("unknown init kind");
}

// Scale the initial field up until the potential dominates the mass term.
Field make_feasible(Field u, const ModelParams& p, const Nonlinearity& nl) {
    for (int k = 0; k < 60; ++k) {
        const NormTriple t = norm_triple(u, p, nl);
        if (t.c - 0.5 * p.m * t.b > 0.0 && t.a > 0.0) return u;
        u = scale(u, 2.0);
    }
    throw InfeasibleError("initial field cannot be scaled onto the manifold");
}

}  // namespace

SolveReport minimize_reduced(const SolveConfig& cfg) {
    const ModelParams& p = cfg.params;
    const Nonlinearity nl = canonical_f(p);
    const double gamma = cfg.stabilizer_gamma > 0.0
                             ? cfg.stabilizer_gamma
                             : p.two_star() / (p.two_star() - 2.0);

    Field u = make_feasible(positive_part(make_init(cfg)), p, nl);
    int iterations = 0;

    // Phase A: backtracking descent on the reduced energy
    // J(u) = (s/N) t*(u)^(N-2s) a(u); its gradient is the model gradient of
    // the rescaled configuration pulled back through the dilation envelope.
    double step = 0.1;
    double J = reduced_energy(u, p, nl);
    for (int it = 0; it < cfg.descent_iters; ++it) {
        ++iterations;
        const NormTriple t = norm_triple(u, p, nl);
        const double ts = rescale_factor(t, p);
        const double c1 = std::pow(ts, p.dim - 2.0 * p.s);
        const double c2 = std::pow(ts, p.dim);
        Field grad = axpy(scale(fractional_laplacian(u, p.s), c1), c2,
                          sub(scale(u, p.m), dealiased_f(u, nl)));
        bool moved = false;
        for (int bt = 0; bt < 30; ++bt) {
            try {
                Field cand = positive_part(axpy(u, -step, grad));
                const double Jc = reduced_energy(cand, p, nl);
                if (Jc < J) {
                    u = std::move(cand);
                    J = Jc;
                    step *= 1.5;
                    moved = true;
                    break;
                }
            } catch (const InfeasibleError&) {
                // candidate left the feasible cone; shrink the step
            }
            step *= 0.5;
        }
        if (!moved) break;
    }

    // Phase B: stabilized fixed-point refinement. At a fixed point the
    // stabilizer M is forced to 1, so the iterate solves the discrete
    // equation (the dealiased f keeps this consistent with `gradient`).
    const auto residual = [&](const Field& v) {
        const Field lin = axpy(fractional_laplacian(v, p.s), p.m, v);
        const Field rhs = dealiased_f(v, nl);
        return lp_norm(sub(lin, rhs), 2.0) / lp_norm(rhs, 2.0);
    };
    double res = residual(u);
    bool diverged = false;
    while (res > cfg.grad_tol && iterations < cfg.max_iters) {
        ++iterations;
        try {
            const Field fu = dealiased_f(u, nl);
            const double num = dnorm_sq(u, p.s) + p.m * std::pow(lp_norm(u, 2.0), 2);
            const double den = inner(fu, u);
            if (!(den > 0.0)) { diverged = true; break; }
            const double M = num / den;
            Field next = apply_symbol(fu, [&](double xi2) {
                return 1.0 / (std::pow(xi2, p.s) + p.m);
            });
            u = positive_part(scale(next, std::pow(M, gamma)));
            res = residual(u);
        } catch (const Error&) {
            diverged = true;
            break;
        }
        if (!std::isfinite(res)) { diverged = true; break; }
    }

    SolveReport rep{u};
    rep.iterations = iterations;
    rep.gamma_used = gamma;
    rep.gradient_residual = res;
    const NormTriple t = norm_triple(u, p, nl);
    const EnergyBreakdown e = energy_from_triple(t, p);
    rep.energy_level = e.total;
    rep.pohozaev_residual = t.a > 0.0 ? std::abs(e.pohozaev) / t.a : 0.0;
    rep.positivity_min =
        *std::min_element(u.values().begin(), u.values().end());
    rep.radial_asymmetry = radial_asymmetry(u);
    try {
        const PathLevel pl = dilation_path_level(u, p, nl);
        rep.t_star = pl.t_star;
        rep.dilation_path_max = pl.level;
    } catch (const Error&) {
        rep.t_star = 0.0;
        rep.dilation_path_max = 0.0;
    }
    const SharpConstants sc = sharp_constants_from_formula(p.s, p.dim);
    rep.threshold = sc.threshold;
    rep.below_threshold = rep.energy_level < sc.threshold;
    rep.converged = !diverged && res <= cfg.grad_tol &&
                    rep.pohozaev_residual <= cfg.pohozaev_tol;
    return rep;
}

}  // namespace fracground
