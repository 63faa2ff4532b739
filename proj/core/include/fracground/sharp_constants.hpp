#pragma once

#include "fracground/grid.hpp"

namespace fracground {

// Bundle of the constants controlling the critical level. S_paper is the
// Gamma-formula trace-Sobolev constant (extension-energy normalization);
// k_s converts extension energy to the Fourier seminorm; S_F is the sharp
// constant in the Fourier convention used throughout this library;
// threshold = (s/N) * S_F^(N/(2s)). calibration_ratio records
// S_F / (k_s * S_paper), which should be 1 up to measurement error.
struct SharpConstants {
    double s = 0.5;
    int dim = 1;
    double S_paper = 0.0;
    double k_s = 0.0;
    double S_F = 0.0;
    double threshold = 0.0;
    double calibration_ratio = 1.0;
};

// Gamma-formula sharp constant
//   S(s,N) = 2 pi^s G(1-s) G((N+2s)/2) G(N/2)^(2s/N)
//            / (G(s) G((N-2s)/2) G(N)^(2s/N)).
// Throws ParameterError when N <= 2s (pole of G((N-2s)/2)).
double sobolev_constant_formula(double s, int N);

// Normalizing constant of the degenerate harmonic extension:
//   (-Delta)^s u = -k_s * lim_{y->0} y^(1-2s) dw/dy,  k_s = 2^(2s-1) G(s)/G(1-s).
// Verified against the Neumann-trace oracle in the extension module tests.
double extension_constant(double s);

// The extremal family u_delta(x) = delta^((N-2s)/2) (|x|^2 + delta^2)^(-(N-2s)/2).
Field extremal_u_delta(const Grid& grid, double s, double delta);

// dnorm_sq(u_delta) / lp_norm(u_delta, 2N/(N-2s))^2 on the given grid.
double sobolev_quotient(const Grid& grid, double s, double delta);

// Richardson-extrapolated Sobolev quotient over a ladder of `levels` grids
// (L, n) = (L0 * 2^j, n0 * 2^j), j = 0..levels-1 (fixed spacing). The slow
// algebraic tail of u_delta makes the quotient converge like L^-(N-2s);
// iterated Richardson removes successive powers of that rate.
double extrapolated_sobolev_quotient(double s, int N, double L0, int n0,
                                     int levels, double delta = 1.0);

// Constants with S_F taken from the closed forms (S_F = k_s * S_paper).
SharpConstants sharp_constants_from_formula(double s, int N);

// Constants with S_F measured from the extremal quotient, using a per-N
// default ladder (or an explicit one). calibration_ratio is recorded.
SharpConstants measure_sharp_constants(double s, int N);
SharpConstants measure_sharp_constants(double s, int N, double L0, int n0,
                                       int levels);

// (s/N) * S_F^(N/(2s)).
double critical_threshold(const SharpConstants& sc);

}  // namespace fracground
