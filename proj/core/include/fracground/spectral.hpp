#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "fracground/grid.hpp"

namespace fracground {

// Fourier coefficients of a Field, size n^dim, FFTW mode ordering per axis
// (k = 0, 1, ..., n/2-1, -n/2, ..., -1). Coefficient convention:
//   c_k = (1/n^N) sum_j u_j exp(-2*pi*i*<j,k>/n),
// so that u_j = sum_k c_k exp(+2*pi*i*<j,k>/n) exactly.
using Spectrum = std::vector<std::complex<double>>;

// Forward transform (normalized as above).
Spectrum forward(const Field& u);

// Inverse transform; imaginary parts are discarded (inputs are expected to
// carry conjugate symmetry up to roundoff).
Field inverse(const Grid& grid, const Spectrum& c);

// Multiply each Fourier coefficient by symbol(|xi_k|^2) and invert.
Field apply_symbol(const Field& u, const std::function<double(double)>& symbol);

// (-Delta)^s u via the multiplier |xi|^(2s); the zero mode is annihilated.
Field fractional_laplacian(const Field& u, double s);

// Squared homogeneous Sobolev seminorm: (2L)^N * sum_k |xi_k|^(2s) |c_k|^2.
double dnorm_sq(const Field& u, double s);

// (sum_i |u_i|^p * spacing^N)^(1/p), p >= 1.
double lp_norm(const Field& u, double p);

// Box quadrature of u*v: sum_i u_i v_i * spacing^N.
double inner(const Field& u, const Field& v);

// Box quadrature of u.
double integral(const Field& u);

// x -> u(x/t) by trigonometric interpolation, resampled on the same grid;
// points whose preimage x/t leaves the box are set to zero.
Field dilate(const Field& u, double t);

// Spectral interpolation onto the grid with 2x points per axis (exact for
// resolved fields; axis Nyquist coefficients split evenly).
Field refine2(const Field& u);

// Adjoint of refine2 with respect to the box quadratures on the two grids:
//   inner(coarsen2(v), u) on the coarse grid == inner(v, refine2(u)) on the
// fine grid for all u, v. Used to pull dealiased pointwise products back.
Field coarsen2(const Field& v);

}  // namespace fracground
