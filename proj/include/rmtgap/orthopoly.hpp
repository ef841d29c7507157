#pragma once

#include <utility>
#include <vector>

#include "rmtgap/real.hpp"

namespace rmtgap {

/// Number of eigenvalues strictly below x of the symmetric tridiagonal
/// matrix with the given diagonal and off-diagonal (length n-1).
template <class T>
int sturm_count(const std::vector<T>& diag, const std::vector<T>& off, const T& x) {
  int count = 0;
  T q = diag[0] - x;
  if (q < T(0)) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    T denom = q;
    if (denom == T(0)) denom = T(1e-300);
    q = diag[i] - x - off[i - 1] * off[i - 1] / denom;
    if (q < T(0)) ++count;
  }
  return count;
}

/// All eigenvalues, ascending, of a symmetric tridiagonal matrix at the
/// working precision: double-precision bisection, then Newton on the
/// characteristic polynomial recurrence with a bisection safeguard.
std::vector<Real> tridiagonal_eigenvalues(const std::vector<Real>& diag,
                                          const std::vector<Real>& off);

enum class OrthoFamily { Hermite, Laguerre };

struct OrthoPolynomial {
  OrthoFamily family = OrthoFamily::Hermite;
  int degree = 1;
  /// Laguerre parameter; ignored for Hermite.
  double alpha = 0.0;

  static OrthoPolynomial hermite(int n) { return {OrthoFamily::Hermite, n, 0.0}; }
  static OrthoPolynomial laguerre(int n, double alpha) { return {OrthoFamily::Laguerre, n, alpha}; }
};

/// Monic polynomial value and derivative. Hermite uses the weight e^{-x^2}.
std::pair<Real, Real> orthopoly_value(const OrthoPolynomial& p, const Real& x);

/// Zeros ascending, from the Jacobi matrix of the family.
/// Throws std::invalid_argument for degree < 1 or alpha <= -1.
std::vector<Real> orthopoly_zeros(const OrthoPolynomial& p);

}  // namespace rmtgap
