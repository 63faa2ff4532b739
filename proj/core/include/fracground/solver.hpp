#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "fracground/grid.hpp"
#include "fracground/model.hpp"
#include "fracground/sharp_constants.hpp"

namespace fracground {

enum class InitKind { gaussian_bump, extremal, wedge, custom };

struct SolveInit {
    InitKind kind = InitKind::extremal;
    double delta = 0.1;      // extremal bubble width
    double wedge_R = 2.0;    // wedge plateau radius
    double wedge_T = 2.0;    // wedge plateau height
    std::optional<Field> custom;
};

struct SolveConfig {
    ModelParams params;
    Grid grid;
    SolveInit init;
    int max_iters = 2000;
    double grad_tol = 1e-6;
    double pohozaev_tol = 1e-3;
    int descent_iters = 40;          // manifold-descent warmup steps
    double stabilizer_gamma = 0.0;   // 0 selects 2*/(2* - 2)
    std::uint64_t seed = 0;          // recorded; used by randomized inits
};

struct SolveReport {
    Field u_star;
    double energy_level = 0.0;
    double pohozaev_residual = 0.0;  // |P(u)| / dnorm_sq(u)
    double gradient_residual = 0.0;  // relative L2
    bool below_threshold = false;
    double threshold = 0.0;
    double positivity_min = 0.0;
    double radial_asymmetry = 0.0;
    double t_star = 0.0;             // dilation-path maximizer (1 at solutions)
    double dilation_path_max = 0.0;
    int iterations = 0;
    bool converged = false;
    double gamma_used = 0.0;
};

// Radial trapezoid: height T on |x| <= R, linear decay to 0 on [R, R+1].
Field wedge_profile(double R, double T, const Grid& grid);

struct WedgeWitness {
    double R = 0.0;
    double T = 0.0;
    double theta = 0.0;  // dilation log-factor applied to the wedge
    double energy = 0.0; // certified negative value
};

// Scripted search (T, then R, then theta) for a negative-energy point, the
// second leg of the mountain-pass geometry.
WedgeWitness find_negative_energy_wedge(const ModelParams& params,
                                        const Grid& grid,
                                        const Nonlinearity& nl);

// Dilation factor t with P(u(./t)) = 0 and the resampled field. Requires
// int F(u) > (m/2)||u||_2^2 (InfeasibleError otherwise).
std::pair<double, Field> pohozaev_rescale(const Field& u,
                                          const ModelParams& params,
                                          const Nonlinearity& nl);

// Energy after rescaling onto the Pohozaev manifold, in closed form:
// (s/N) t_star^(N-2s) dnorm_sq(u).
double reduced_energy(const Field& u, const ModelParams& params,
                      const Nonlinearity& nl);

struct PathLevel {
    double t_star = 0.0;
    double level = 0.0;
};

// Maximum of the closed-form energy along t -> u(x/t); at a solution the
// maximizer is t = 1 and the level is the energy itself.
PathLevel dilation_path_level(const Field& u, const ModelParams& params,
                              const Nonlinearity& nl);

// L2 distance of u to its symmetrization over the grid's point group
// (axis reflections and permutations), relative to ||u||_2.
double radial_asymmetry(const Field& u);

// Two-phase ground-state solve: descent on the reduced (Pohozaev-manifold)
// energy with positivity projection, then stabilized fixed-point refinement
// u <- M^gamma (|xi|^(2s) + m)^(-1) f(u). Non-convergence is reported, not
// thrown.
SolveReport minimize_reduced(const SolveConfig& config);

}  // namespace fracground
