#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rmtgap/real.hpp"

namespace rmtgap {

enum class QuadratureScheme { DoubleExponential, GaussLegendre };

struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::DoubleExponential;
  /// Relative tolerance, measured against the L1 mass of the integrand.
  double tolerance = 1e-20;
  /// Refinement also stops once the change falls below this absolute value.
  double absolute_tolerance = 0.0;
  /// Infinite ends are cut where |f| drops below tail_threshold * peak |f|.
  double tail_threshold = 1e-26;
  int max_levels = 14;

  /// Tolerance 10^-digits and the matching tail threshold 10^-(digits+6).
  static QuadratureSpec for_digits(int digits,
                                   QuadratureScheme scheme = QuadratureScheme::DoubleExponential);
};

/// Closed interval whose ends may be infinite.
struct Interval {
  Real lo;
  Real hi;
  bool lo_infinite = false;
  bool hi_infinite = false;

  static Interval finite(Real lo, Real hi) { return {std::move(lo), std::move(hi), false, false}; }
  static Interval upper_half(Real lo) { return {std::move(lo), Real(0), false, true}; }
  static Interval lower_half(Real hi) { return {Real(0), std::move(hi), true, false}; }
  static Interval whole_line() { return {Real(0), Real(0), true, true}; }
};

using RealFunction = std::function<Real(const Real&)>;

struct QuadratureResult {
  Real value;
  Real error_estimate;
  int evaluations = 0;
  int levels = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integrates f over the interval. Infinite ends are truncated per the
/// tail_threshold in `spec` first. Throws QuadratureError when successive
/// refinements fail to agree within the tolerance.
QuadratureResult integrate_detailed(const RealFunction& f, const Interval& interval,
                                    const QuadratureSpec& spec = {});
Real integrate(const RealFunction& f, const Interval& interval, const QuadratureSpec& spec = {});

/// Replaces infinite ends by finite cut points where |f| is negligible.
Interval truncate_tails(const RealFunction& f, const Interval& interval, double tail_threshold);

/// Gauss-Legendre nodes and weights on [-1, 1] at the working precision.
/// Results are memoised per (n, bits); safe to call concurrently.
struct QuadratureRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};
const QuadratureRule& gauss_legendre(int n);
/// The n-point rule mapped to [a, b].
QuadratureRule gauss_legendre_rule(int n, const Real& a, const Real& b);

}  // namespace rmtgap
