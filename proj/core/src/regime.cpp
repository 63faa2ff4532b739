#include "fracground/regime.hpp"

namespace fracground {

RegimeVerdict classify_regime(int N, double s, double q) {
    RegimeVerdict v;
    if (!(s > 0.0 && s < 1.0) || N < 1 || !(N > 2.0 * s)) return v;
    v.q_boundary = 4.0 * s / (N - 2.0 * s);
    v.two_star = 2.0 * N / (N - 2.0 * s);
    if (!(q > 2.0 && q < v.two_star)) return v;
    if (N >= 4.0 * s) {
        v.regime = Regime::every_lambda_high_dim;
    } else if (q > v.q_boundary * (1.0 + 1e-12)) {
        // relative slack keeps q exactly at the boundary in the lambda-large
        // branch despite roundoff in 4s/(N-2s)
        v.regime = Regime::every_lambda_low_dim;
    } else {
        v.regime = Regime::lambda_large;
    }
    return v;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::every_lambda_high_dim: return "every_lambda_high_dim";
        case Regime::every_lambda_low_dim: return "every_lambda_low_dim";
        case Regime::lambda_large: return "lambda_large";
        case Regime::inadmissible: return "inadmissible";
    }
    return "inadmissible";
}

}  // namespace fracground
