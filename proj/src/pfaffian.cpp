#include "rmtgap/pfaffian.hpp"

#include <string>

namespace rmtgap {

namespace {

void require_square(const ComplexMatrix& A) {
  if (A.rows() != A.cols()) throw PfaffianError("matrix is not square");
}

// Sets z to -w without allocating.
void negate_into(Complex& z, const Complex& w) {
  mpfr_neg(z.re.get(), w.re.get(), MPFR_RNDN);
  mpfr_neg(z.im.get(), w.im.get(), MPFR_RNDN);
}

Complex laplace(const ComplexMatrix& A, std::vector<std::size_t>& idx) {
  if (idx.empty()) return Complex(1);
  const std::size_t first = idx[0];
  Complex total(0);
  for (std::size_t m = 1; m < idx.size(); ++m) {
    const std::size_t partner = idx[m];
    const Complex& a = A(first, partner);
    if (a.re.is_zero() && a.im.is_zero()) continue;
    std::vector<std::size_t> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t r = 1; r < idx.size(); ++r) {
      if (r != m) rest.push_back(idx[r]);
    }
    Complex sub = a * laplace(A, rest);
    if (m % 2 == 1) {
      total += sub;
    } else {
      total -= sub;
    }
  }
  return total;
}

}  // namespace

Real antisymmetry_defect(const ComplexMatrix& A) {
  require_square(A);
  Real worst(0);
  Real scale(0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      scale = max(scale, abs(A(i, j)));
      worst = max(worst, abs(A(i, j) + A(j, i)));
    }
  }
  if (scale.is_zero()) return Real(0);
  return worst / scale;
}

Complex pfaffian(ComplexMatrix A, double antisymmetry_tol) {
  require_square(A);
  const std::size_t n = A.rows();
  if (n % 2 == 1) throw PfaffianError("Pfaffian needs an even dimension, got " + std::to_string(n));
  if (n == 0) return Complex(1);
  if (antisymmetry_defect(A) > Real(antisymmetry_tol)) {
    throw PfaffianError("matrix is not antisymmetric");
  }
  Complex pf(1);
  std::vector<Complex> tau(n);
  Real t1;
  Real t2;
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    // Pivot: largest entry of column k below the diagonal.
    std::size_t kp = k + 1;
    Real best = norm(A(k + 1, k));
    for (std::size_t i = k + 2; i < n; ++i) {
      Real v = norm(A(i, k));
      if (v > best) {
        best = std::move(v);
        kp = i;
      }
    }
    if (kp != k + 1) {
      A.swap_rows(k + 1, kp);
      A.swap_cols(k + 1, kp);
      pf = -pf;
    }
    if (best.is_zero()) return Complex(0);
    const Complex pivot = A(k, k + 1);
    pf *= pivot;
    if (k + 2 >= n) break;
    for (std::size_t i = k + 2; i < n; ++i) tau[i] = A(k, i) / pivot;
    // Trailing update on the strict upper triangle:
    //   A(i,j) += tau_i v_j - v_i tau_j,  v_i = A(i, k+1).
    for (std::size_t i = k + 2; i < n; ++i) {
      const Complex& ti = tau[i];
      const Complex& vi = A(i, k + 1);
      for (std::size_t j = i + 1; j < n; ++j) {
        const Complex& tj = tau[j];
        const Complex& vj = A(j, k + 1);
        Complex& aij = A(i, j);
        mpfr_fmms(t1.get(), ti.re.get(), vj.re.get(), ti.im.get(), vj.im.get(), MPFR_RNDN);
        mpfr_fmms(t2.get(), vi.re.get(), tj.re.get(), vi.im.get(), tj.im.get(), MPFR_RNDN);
        mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
        mpfr_add(aij.re.get(), aij.re.get(), t1.get(), MPFR_RNDN);
        mpfr_fmma(t1.get(), ti.re.get(), vj.im.get(), ti.im.get(), vj.re.get(), MPFR_RNDN);
        mpfr_fmma(t2.get(), vi.re.get(), tj.im.get(), vi.im.get(), tj.re.get(), MPFR_RNDN);
        mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
        mpfr_add(aij.im.get(), aij.im.get(), t1.get(), MPFR_RNDN);
      }
    }
    for (std::size_t i = k + 2; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) negate_into(A(j, i), A(i, j));
    }
  }
  return pf;
}

Complex pfaffian(const RealMatrix& A, double antisymmetry_tol) {
  ComplexMatrix C(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = Complex(A(i, j));
  }
  return pfaffian(std::move(C), antisymmetry_tol);
}

Complex pfaffian_laplace(const ComplexMatrix& A) {
  require_square(A);
  const std::size_t n = A.rows();
  if (n % 2 == 1) throw PfaffianError("Pfaffian needs an even dimension");
  if (n > 12) throw PfaffianError("Laplace expansion is limited to dimension 12");
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return laplace(A, idx);
}

Complex determinant(ComplexMatrix A) {
  require_square(A);
  const std::size_t n = A.rows();
  Complex det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    Real best = norm(A(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      Real v = norm(A(i, k));
      if (v > best) {
        best = std::move(v);
        p = i;
      }
    }
    if (best.is_zero()) return Complex(0);
    if (p != k) {
      A.swap_rows(p, k);
      det = -det;
    }
    const Complex pivot = A(k, k);
    det *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex f = A(i, k) / pivot;
      for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
    }
  }
  return det;
}

CheckedPfaffian pfaffian_checked(const ComplexMatrix& A) {
  Complex pf = pfaffian(A);
  Complex det = determinant(A);
  Real scale = abs(det);
  Real defect = abs(pf * pf - det);
  if (!scale.is_zero()) defect /= scale;
  return {std::move(pf), std::move(defect)};
}

ComplexMatrix border_with_vector(const ComplexMatrix& A, const std::vector<Complex>& nu) {
  require_square(A);
  const std::size_t n = A.rows();
  if (n % 2 == 0) throw PfaffianError("bordering needs an odd dimension");
  if (nu.size() != n + 1) throw PfaffianError("border vector must have length N+1");
  if (!(nu[n].re.is_zero() && nu[n].im.is_zero())) {
    throw PfaffianError("last border entry must be zero");
  }
  ComplexMatrix B(n + 1, n + 1, Complex(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) B(i, j) = A(i, j);
    B(i, n) = nu[i];
    B(n, i) = -nu[i];
  }
  return B;
}

}  // namespace rmtgap
