#pragma once

#include <vector>

#include "fracground/grid.hpp"

namespace fracground {

// Degenerate harmonic extension of a trace field to the upper half space,
// sampled on a geometrically graded mesh in the extension variable y.
struct ExtensionStack {
    Field base;
    double s = 0.5;
    std::vector<double> y_nodes;   // strictly increasing, graded toward 0
    std::vector<Field> slices;     // w(., y_j), one per node
    double grading_ratio = 0.0;    // y_{j+1}/y_j
    double tail_estimate = 0.0;    // crude bound on the energy beyond y_max
};

// Convolution of u with the generalized Poisson kernel
//   c * y^(2s) / (|x|^2 + y^2)^((N+2s)/2)
// periodized over the box and renormalized to exact unit mass. The kernel is
// sampled on an oversampled grid near y -> 0 and its out-of-box images are
// summed directly (with an Euler-Maclaurin tail correction in 1-D).
Field poisson_extend(const Field& u, double y, double s);

// Assemble a stack with `slices` geometric y-nodes spanning [y_min, y_max],
// y_max = y_max_factor * L.
ExtensionStack build_stack(const Field& u, double s, int slices = 64,
                           double y_min = 1e-3, double y_max_factor = 4.0);

// Raw weighted Dirichlet energy  int y^(1-2s) (|grad_x w|^2 + |dw/dy|^2).
// The extension constant k_s is deliberately NOT applied here; with it the
// result approximates dnorm_sq(u, s).
double extension_energy(const ExtensionStack& stack);

// -k_s * lim_{y->0} y^(1-2s) dw/dy, extrapolated to y = 0 from three small
// heights; approximates fractional_laplacian(u, s).
Field neumann_trace(const Field& u, double s);

// Same limit without the k_s factor (the raw Neumann datum).
Field neumann_trace_raw(const Field& u, double s);

// Measure the extension constant as the L2 projection ratio between the
// spectral fractional Laplacian of a Gaussian and the raw Neumann datum.
// Throws CalibrationError when it disagrees with extension_constant(s)
// beyond `tol` relative.
double calibrate_extension_constant(double s, const Grid& grid,
                                    double tol = 0.05);

}  // namespace fracground
