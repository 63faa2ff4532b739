#pragma once

#include <functional>

#include "fracground/grid.hpp"

namespace fracground {

// Problem parameters for  (-Delta)^s u + m u = f(u):
// mass m > 0, order s in (0,1) with N > 2s, subcritical weight lambda > 0
// and exponent q in (2, 2N/(N-2s)).
struct ModelParams {
    double m;
    double s;
    int dim;
    double lambda;
    double q;

    ModelParams(double m_, double s_, int dim_, double lambda_, double q_);
    double two_star() const { return 2.0 * dim / (dim - 2.0 * s); }
};

// Evaluable nonlinearity with its exact primitive (F(0) = 0, f = F') and
// declared hypothesis metadata: vanishing at 0 faster than linear (f1),
// exactly critical growth at infinity (f2), and the lower bound
// f(t) >= lambda t^(q-1) + t^(2*-1) (f3). f(t) = 0 for t < 0.
struct Nonlinearity {
    std::function<double(double)> f;
    std::function<double(double)> F;
    bool claims_f1 = false;
    bool claims_f2 = false;
    bool claims_f3 = false;
};

// The equality case of (f3): f(t) = lambda t^(q-1) + t^(2*-1) for t >= 0.
Nonlinearity canonical_f(const ModelParams& params);

struct HypothesisReport {
    bool f1_pass = false;
    bool f2_pass = false;
    bool f3_pass = false;
    double f1_worst = 0.0;  // largest ratio increase along the t->0 ladder
    double f2_worst = 0.0;  // largest |f/t^(2*-1) - 1| increase, t->inf
    double f3_worst = 0.0;  // most negative f(t) - lower bound, relative
};

// Numeric verdicts on (f1)-(f3) via ladder monotonicity and dense sampling.
HypothesisReport validate_hypotheses(const Nonlinearity& nl,
                                     const ModelParams& params);

// (a, b, c) = (dnorm_sq(u), ||u||_2^2, int F(u)); the potential integral is
// evaluated on the 2x-refined grid (dealiased critical powers).
struct NormTriple {
    double a = 0.0;  // squared seminorm
    double b = 0.0;  // squared L2 norm
    double c = 0.0;  // potential integral
};

NormTriple norm_triple(const Field& u, const ModelParams& params,
                       const Nonlinearity& nl);

struct EnergyBreakdown {
    double kinetic = 0.0;    // a/2
    double mass_term = 0.0;  // m*b/2
    double potential = 0.0;  // c
    double total = 0.0;      // kinetic + mass_term - potential
    double pohozaev = 0.0;   // (N-2s)/2*a + m*N/2*b - N*c
};

EnergyBreakdown energy(const Field& u, const ModelParams& params,
                       const Nonlinearity& nl);
EnergyBreakdown energy_from_triple(const NormTriple& t, const ModelParams& params);

// L2 gradient (-Delta)^s u + m u - f(u); the f(u) term is evaluated on the
// refined grid and pulled back with the adjoint restriction, so the result
// is the exact quadrature gradient of the energy.
Field gradient(const Field& u, const ModelParams& params, const Nonlinearity& nl);

// Dealiased f(u) (the term subtracted in the gradient).
Field dealiased_f(const Field& u, const Nonlinearity& nl);

// Scaling functional P(u) = (N-2s)/2 a + m N/2 b - N c; vanishes at solutions.
double pohozaev(const Field& u, const ModelParams& params, const Nonlinearity& nl);
double pohozaev_from_triple(const NormTriple& t, const ModelParams& params);

// Energy of theta -> u(x/e^theta) in closed form from the norm triple:
// (1/2) e^((N-2s)theta) a + (m/2) e^(N theta) b - e^(N theta) c.
double scaled_energy(double theta, const Field& u, const ModelParams& params,
                     const Nonlinearity& nl);
double scaled_energy_from_triple(double theta, const NormTriple& t,
                                 const ModelParams& params);

// Closed-form norm triple of x -> u(x/t).
NormTriple dilate_triple(const NormTriple& t, double factor,
                         const ModelParams& params);

// Smallest constant C with F(t) <= delta t^2 + C t^(2*) for all t > 0,
// found by maximizing (F(t) - delta t^2) / t^(2*) over a log-t grid.
double growth_bound_constant(const Nonlinearity& nl, const ModelParams& params,
                             double delta);

}  // namespace fracground
