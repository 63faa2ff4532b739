#include "fracground/sharp_constants.hpp"

#include <cmath>

#include "fracground/spectral.hpp"

namespace fracground {

double sobolev_constant_formula(double s, int N) {
    if (!(s > 0.0 && s < 1.0))
        throw ParameterError("fractional order s must lie in (0,1)");
    if (!(N > 2.0 * s))
        throw ParameterError("sobolev_constant_formula requires N > 2s");
    const double pi = 3.14159265358979323846;
    // Work in log space; every Gamma argument here is positive.
    const double log_val =
        std::log(2.0) + s * std::log(pi)
        + std::lgamma(1.0 - s) + std::lgamma((N + 2.0 * s) / 2.0)
        + (2.0 * s / N) * std::lgamma(N / 2.0)
        - std::lgamma(s) - std::lgamma((N - 2.0 * s) / 2.0)
        - (2.0 * s / N) * std::lgamma(static_cast<double>(N));
    return std::exp(log_val);
}

double extension_constant(double s) {
    if (!(s > 0.0 && s < 1.0))
        throw ParameterError("fractional order s must lie in (0,1)");
    return std::exp((2.0 * s - 1.0) * std::log(2.0) + std::lgamma(s) -
                    std::lgamma(1.0 - s));
}

Field extremal_u_delta(const Grid& grid, double s, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw ParameterError("delta must be positive");
    FracParams fp(s, grid.dim);  // validates s and N > 2s
    const double ex = (grid.dim - 2.0 * s) / 2.0;
    const double pref = std::pow(delta, ex);
    return Field::sample(grid, [&](const std::array<double, 3>& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return pref * std::pow(r2 + delta * delta, -ex);
    });
}

double sobolev_quotient(const Grid& grid, double s, double delta) {
    FracParams fp(s, grid.dim);
    const Field u = extremal_u_delta(grid, s, delta);
    const double denom = lp_norm(u, fp.two_star());
    return dnorm_sq(u, s) / (denom * denom);
}

double extrapolated_sobolev_quotient(double s, int N, double L0, int n0,
                                     int levels, double delta) {
    if (levels < 2)
        throw ParameterError("extrapolation needs at least 2 ladder levels");
    std::vector<double> q(levels);
    for (int j = 0; j < levels; ++j) {
        const Grid g(N, n0 << j, L0 * static_cast<double>(1 << j));
        q[j] = sobolev_quotient(g, s, delta);
    }
    // The truncation error expands in powers of L^-(N-2s); eliminate them
    // stage by stage (the eliminated exponent doubles each stage).
    double rate = N - 2.0 * s;
    while (q.size() > 1) {
        const double f = std::pow(2.0, -rate);
        std::vector<double> next(q.size() - 1);
        for (std::size_t j = 0; j + 1 < q.size(); ++j)
            next[j] = (q[j + 1] - f * q[j]) / (1.0 - f);
        q = std::move(next);
        rate *= 2.0;
    }
    return q[0];
}

SharpConstants sharp_constants_from_formula(double s, int N) {
    SharpConstants sc;
    sc.s = s;
    sc.dim = N;
    sc.S_paper = sobolev_constant_formula(s, N);
    sc.k_s = extension_constant(s);
    sc.S_F = sc.k_s * sc.S_paper;
    sc.threshold = (s / N) * std::pow(sc.S_F, N / (2.0 * s));
    sc.calibration_ratio = 1.0;
    return sc;
}

namespace {

struct Ladder {
    double L0;
    int n0;
    int levels;
};

Ladder default_ladder(int N) {
    switch (N) {
        case 1: return {400.0, 1 << 15, 4};
        case 2: return {16.0, 256, 3};
        default: return {8.0, 64, 3};
    }
}

}  // namespace

SharpConstants measure_sharp_constants(double s, int N) {
    const Ladder lad = default_ladder(N);
    return measure_sharp_constants(s, N, lad.L0, lad.n0, lad.levels);
}

SharpConstants measure_sharp_constants(double s, int N, double L0, int n0,
                                       int levels) {
    SharpConstants sc = sharp_constants_from_formula(s, N);
    sc.S_F = extrapolated_sobolev_quotient(s, N, L0, n0, levels);
    sc.threshold = (s / N) * std::pow(sc.S_F, N / (2.0 * s));
    sc.calibration_ratio = sc.S_F / (sc.k_s * sc.S_paper);
    return sc;
}

double critical_threshold(const SharpConstants& sc) {
    return (sc.s / sc.dim) * std::pow(sc.S_F, sc.dim / (2.0 * sc.s));
}

}  // namespace fracground
