#include "fracground/fit.hpp"

#include <cmath>
#include <limits>

#include "fracground/errors.hpp"

namespace fracground {

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ParameterError("linear_fit needs matching samples, at least 2");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit fit;
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double pred = fit.intercept + fit.slope * x[i];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

OffsetPowerFit offset_power_fit(const std::vector<double>& x,
                                const std::vector<double>& y,
                                double e_lo, double e_hi) {
    if (x.size() != y.size() || x.size() < 3)
        throw ParameterError("offset_power_fit needs matching samples, at least 3");
    const int steps = 1500;
    OffsetPowerFit best;
    double best_ss = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= steps; ++k) {
        const double e = e_lo + (e_hi - e_lo) * k / steps;
        // Least squares in (S, C) for y = S + C x^e.
        double s1 = 0, sz = 0, szz = 0, sy = 0, szy = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double z = std::pow(x[i], e);
            s1 += 1.0;
            sz += z;
            szz += z * z;
            sy += y[i];
            szy += z * y[i];
        }
        const double det = s1 * szz - sz * sz;
        if (det == 0.0) continue;
        const double C = (s1 * szy - sz * sy) / det;
        const double S = (sy - C * sz) / s1;
        double ss = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - S - C * std::pow(x[i], e);
            ss += r * r;
        }
        if (ss < best_ss) {
            best_ss = ss;
            best.exponent = e;
            best.offset = S;
            best.coefficient = C;
        }
    }
    double ss_tot = 0, mean = 0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    for (double v : y) ss_tot += (v - mean) * (v - mean);
    best.r_squared = ss_tot > 0.0 ? 1.0 - best_ss / ss_tot : 1.0;
    return best;
}

}  // namespace fracground
