#pragma once

#include "rmtgap/real.hpp"

namespace rmtgap {

/// Error function at the working precision (series / continued fraction).
Real erf(const Real& x);
/// Complementary error function, accurate in the far right tail.
Real erfc(const Real& x);

/// Regularized lower and upper incomplete gamma functions P(a,x), Q(a,x).
/// Whichever of the two is smaller is computed directly and the other is
/// taken as its complement, so both are accurate in absolute terms and the
/// small one is accurate relatively.
struct IncompleteGamma {
  Real lower;  // P(a, x) = gamma(a, x) / Gamma(a)
  Real upper;  // Q(a, x) = Gamma(a, x) / Gamma(a)
};

/// Requires a > 0 and x >= 0; throws std::domain_error otherwise.
IncompleteGamma incomplete_gamma(const Real& a, const Real& x);

/// Q(a, x) = Gamma(a; x) / Gamma(a).
Real inc_gamma_upper_reg(const Real& a, const Real& x);
/// P(a, x) = 1 - Q(a, x).
Real inc_gamma_lower_reg(const Real& a, const Real& x);

}  // namespace rmtgap
