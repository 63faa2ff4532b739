#pragma once

#include <vector>

namespace fracground {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares y ~ intercept + slope * x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct OffsetPowerFit {
    double exponent = 0.0;
    double offset = 0.0;       // S in y ~ S + C x^e
    double coefficient = 0.0;  // C
    double r_squared = 0.0;
};

// Fit y ~ S + C x^e by scanning e over [e_lo, e_hi] with linear least
// squares in (S, C) at each candidate. The free offset absorbs
// discretization bias that a plain log-log fit cannot.
OffsetPowerFit offset_power_fit(const std::vector<double>& x,
                                const std::vector<double>& y,
                                double e_lo = 0.02, double e_hi = 3.0);

}  // namespace fracground
