#pragma once

#include <stdexcept>
#include <vector>

#include "rmtgap/matrix.hpp"
#include "rmtgap/real.hpp"

namespace rmtgap {

class PfaffianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Largest |A + A^T| entry relative to the largest |A| entry.
Real antisymmetry_defect(const ComplexMatrix& A);

/// Pfaffian by partial-pivoted Parlett-Reid (L T L^T) reduction of an
/// even-dimensional antisymmetric matrix. Works on its own copy. Throws
/// PfaffianError for odd dimension or when antisymmetry is violated by more
/// than `antisymmetry_tol` (relative).
Complex pfaffian(ComplexMatrix A, double antisymmetry_tol = 1e-10);
Complex pfaffian(const RealMatrix& A, double antisymmetry_tol = 1e-10);

/// Pfaffian by Laplace expansion along the first row; dim <= 12.
Complex pfaffian_laplace(const ComplexMatrix& A);

/// Determinant by LU with partial pivoting.
Complex determinant(ComplexMatrix A);

/// Pfaffian together with |Pf^2 - det| / |det|.
struct CheckedPfaffian {
  Complex value;
  Real relative_defect;
};
CheckedPfaffian pfaffian_checked(const ComplexMatrix& A);

/// (N+1)x(N+1) antisymmetric matrix with A in the leading block, last
/// column nu and last row -nu. N must be odd and nu.size() == N+1 with a
/// zero last entry.
ComplexMatrix border_with_vector(const ComplexMatrix& A, const std::vector<Complex>& nu);

}  // namespace rmtgap
