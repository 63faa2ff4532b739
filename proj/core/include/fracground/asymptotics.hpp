#pragma once

#include <vector>

#include "fracground/fit.hpp"
#include "fracground/grid.hpp"
#include "fracground/model.hpp"
#include "fracground/sharp_constants.hpp"

namespace fracground {

// Smooth radial cutoff: 1 on [0,1], 0 on [2,inf), C-infinity in between.
double smooth_cutoff(double t);

// The cutoff extremal phi0(|x|) u_delta(x), normalized so that its critical
// Lebesgue norm is exactly 1 on the grid. Supported in |x| <= 2.
struct TruncatedExtremal {
    double delta = 0.1;
    Field trace;
};

TruncatedExtremal make_truncated_extremal(const Grid& grid, double s, double delta);

// The norm data the one-dimensional reduced functions need:
// a = dnorm_sq(v), b = ||v||_2^2, qn = ||v||_q^q (and ||v||_{2*} = 1).
struct ReducedCoeffs {
    double a = 0.0;
    double b = 0.0;
    double qn = 0.0;
};

ReducedCoeffs reduced_coeffs(const TruncatedExtremal& v, const ModelParams& params);

// g(t) = (1/2) a t^(N-2s) + (m/2 b - lambda/q qn - 1/2*) t^N: the energy of
// the dilated trace x -> v(x/t) in closed form (equality case nonlinearity).
double reduced_g(double t, const ReducedCoeffs& rc, const ModelParams& params);
double reduced_g(double t, const TruncatedExtremal& v, const ModelParams& params);

struct GMax {
    double t_delta = 0.0;        // safeguarded-Newton maximizer
    double value = 0.0;          // g(t_delta)
    double t_closed_form = 0.0;  // root of g' in closed form (cross-check)
};

// Unique interior maximum of g; requires the t^N coefficient to be negative
// (otherwise RegimeError: g is increasing and has no mountain profile).
GMax maximize_g(const ReducedCoeffs& rc, const ModelParams& params);
GMax maximize_g(const TruncatedExtremal& v, const ModelParams& params);

struct HPeak {
    double value = 0.0;   // (s/N) a^(N/(2s))
    double t_peak = 0.0;  // a^(1/(2s))
};

// Peak of h(t) = (1/2) t^(N-2s) a - t^N / 2*, the lambda-free upper profile;
// converges to the critical threshold as delta -> 0.
HPeak h_peak(const TruncatedExtremal& v, const ModelParams& params);

struct ScalingFit {
    double exponent_measured = 0.0;
    double exponent_predicted = 0.0;
    bool log_flag = false;  // true when p = N/(N-2s): delta^(N/2) |log delta|
    double r_squared = 0.0;
};

// Fit log ||v_delta||_p^p against log delta over the ladder and compare with
// the three-regime prediction (p above/at/below N/(N-2s)). Throws
// ResolutionError when r^2 < 0.98.
ScalingFit lp_scaling_study(double p, const std::vector<double>& deltas,
                            const Grid& grid, double s);

struct GapFit {
    double exponent_measured = 0.0;
    double exponent_predicted = 0.0;  // N - 2s
    double offset = 0.0;              // fitted limit of dnorm_sq(v_delta)
    double r_squared = 0.0;
};

// Fit dnorm_sq(v_delta) ~ S + C delta^e over the ladder; e should recover
// N - 2s and S the sharp constant.
GapFit seminorm_gap_study(const std::vector<double>& deltas, const Grid& grid,
                          double s);

struct CmBound {
    double bound = 0.0;
    bool below_threshold = false;
    double t_delta = 0.0;
};

// max_t g(t) compared against the critical threshold from `sc`.
CmBound cm_upper_bound(const ModelParams& params, double delta, const Grid& grid,
                       const SharpConstants& sc);

// True when some delta in the ladder certifies a level below the threshold.
bool any_below_threshold(const ModelParams& params,
                         const std::vector<double>& deltas, const Grid& grid,
                         const SharpConstants& sc);

// Smallest lambda (up to `rel_tol`) whose ladder minimum dips below the
// threshold; bisection over lambda with the delta-ladder coefficients
// computed once. Throws ConvergenceError if no lambda up to lambda_cap works.
double find_lambda_star(const ModelParams& params,
                        const std::vector<double>& deltas, const Grid& grid,
                        const SharpConstants& sc, double lambda_cap = 1e6,
                        double rel_tol = 0.01);

}  // namespace fracground
