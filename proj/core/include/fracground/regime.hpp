#pragma once

#include <string>

namespace fracground {

// Existence regimes of the subcritical exponent q at fixed (N, s):
// - every_lambda_high_dim:  N >= 4s and 2 < q < 2*
// - every_lambda_low_dim:   2s < N < 4s and 4s/(N-2s) < q < 2*
// - lambda_large:           2s < N < 4s and 2 < q <= 4s/(N-2s)
//                           (ground state only for lambda large enough)
// - inadmissible:           anything else
enum class Regime {
    every_lambda_high_dim,
    every_lambda_low_dim,
    lambda_large,
    inadmissible,
};

struct RegimeVerdict {
    Regime regime = Regime::inadmissible;
    double q_boundary = 0.0;  // 4s/(N-2s), when defined
    double two_star = 0.0;    // 2N/(N-2s), when defined
};

// Pure classification; invalid inputs are classified inadmissible, never
// rejected. Boundary inclusivity: strict at 2*, weak at 4s/(N-2s).
RegimeVerdict classify_regime(int N, double s, double q);

std::string regime_name(Regime r);

}  // namespace fracground
