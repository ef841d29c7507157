#include <random>

#include "doctest.h"
#include "rmtgap/gap.hpp"
#include "rmtgap/kernels.hpp"
#include "rmtgap/pfaffian.hpp"

using namespace rmtgap;

namespace {

ComplexMatrix random_antisymmetric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix A(n, n, Complex(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Full-precision entries, not just doubles.
      Complex z(Real(u(rng)) / Real(3), Real(u(rng)) / Real(7));
      A(i, j) = z;
      A(j, i) = -z;
    }
  }
  return A;
}

Real rel(const Complex& a, const Complex& b) {
  Real d = abs(a - b);
  Real m = abs(b);
  return m.is_zero() ? d : d / m;
}

}  // namespace

TEST_CASE("small pfaffians by formula") {
  PrecisionGuard guard(160);
  ComplexMatrix A(2, 2, Complex(0));
  A(0, 1) = Complex(Real(3), Real(-2));
  A(1, 0) = -A(0, 1);
  CHECK(rel(pfaffian(A), A(0, 1)) < Real(1e-45));

  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    ComplexMatrix B = random_antisymmetric(4, rng);
    Complex expected = B(0, 1) * B(2, 3) - B(0, 2) * B(1, 3) + B(0, 3) * B(1, 2);
    CHECK(rel(pfaffian(B), expected) < Real(1e-44));
    CHECK(rel(pfaffian_laplace(B), expected) < Real(1e-44));
  }

  ComplexMatrix zero(6, 6, Complex(0));
  CHECK(abs(pfaffian(zero)).is_zero());
  CHECK(abs(pfaffian_laplace(zero)).is_zero());

  ComplexMatrix J(8, 8, Complex(0));
  for (int b = 0; b < 4; ++b) {
    J(2 * b, 2 * b + 1) = Complex(1);
    J(2 * b + 1, 2 * b) = Complex(-1);
  }
  CHECK(rel(pfaffian(J), Complex(1)) < Real(1e-45));
  CHECK(rel(pfaffian_laplace(J), Complex(1)) < Real(1e-45));
}

TEST_CASE("pf squared equals det on random 10x10 matrices") {
  PrecisionGuard guard(200);
  std::mt19937_64 rng(2024);
  Real worst(0);
  for (int rep = 0; rep < 100; ++rep) {
    ComplexMatrix A = random_antisymmetric(10, rng);
    Complex p = pfaffian(A);
    Real d = rel(p * p, determinant(A));
    if (d > worst) worst = d;
    CheckedPfaffian c = pfaffian_checked(A);
    CHECK(c.relative_defect < Real(1e-50));
  }
  CHECK(worst < Real(1e-50));
}

TEST_CASE("laplace expansion agrees with the reduction for dim <= 8") {
  PrecisionGuard guard(160);
  std::mt19937_64 rng(99);
  for (std::size_t dim : {2u, 4u, 6u}) {
    ComplexMatrix A = random_antisymmetric(dim, rng);
    CHECK(rel(pfaffian(A), pfaffian_laplace(A)) < Real(1e-40));
  }
  for (int rep = 0; rep < 100; ++rep) {
    ComplexMatrix A = random_antisymmetric(8, rng);
    CHECK(rel(pfaffian(A), pfaffian_laplace(A)) < Real(1e-40));
  }
}

TEST_CASE("scaling and pair exchange") {
  PrecisionGuard guard(160);
  std::mt19937_64 rng(5);
  const Complex lambda(Real(0.7), Real(-1.3));
  for (std::size_t dim : {4u, 6u}) {
    ComplexMatrix A = random_antisymmetric(dim, rng);
    ComplexMatrix S = A;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) S(i, j) = lambda * A(i, j);
    Complex scale(1);
    for (std::size_t i = 0; i < dim / 2; ++i) scale = scale * lambda;
    CHECK(rel(pfaffian(S), scale * pfaffian(A)) < Real(1e-40));

    // Exchanging rows/columns 1 and 3 is one transposition: sign flips.
    ComplexMatrix P = A;
    P.swap_rows(1, 3);
    P.swap_cols(1, 3);
    CHECK(rel(pfaffian(P), -pfaffian(A)) < Real(1e-40));
  }
}

TEST_CASE("pfaffian input validation") {
  ComplexMatrix odd(3, 3, Complex(0));
  CHECK_THROWS_AS(pfaffian(odd), PfaffianError);
  ComplexMatrix bad(2, 2, Complex(0));
  bad(0, 1) = Complex(1);
  bad(1, 0) = Complex(1);
  CHECK_THROWS_AS(pfaffian(bad), PfaffianError);
  ComplexMatrix big(14, 14, Complex(0));
  CHECK_THROWS(pfaffian_laplace(big));
}

TEST_CASE("bordering") {
  PrecisionGuard guard(160);
  ComplexMatrix one(1, 1, Complex(0));
  Complex v(Real(2.5), Real(1));
  ComplexMatrix B = border_with_vector(one, {v, Complex(0)});
  CHECK(B.rows() == 2);
  CHECK(rel(pfaffian(B), v) < Real(1e-45));

  std::mt19937_64 rng(8);
  ComplexMatrix A = random_antisymmetric(5, rng);
  std::vector<Complex> nu;
  for (int i = 0; i < 5; ++i) nu.emplace_back(Real(i + 1) / Real(3), Real(1) / Real(i + 2));
  nu.emplace_back(0);
  ComplexMatrix C = border_with_vector(A, nu);
  CHECK(antisymmetry_defect(C).is_zero());
  CHECK(rel(pfaffian(C), pfaffian_laplace(C)) < Real(1e-40));

  ComplexMatrix even(4, 4, Complex(0));
  CHECK_THROWS(border_with_vector(even, std::vector<Complex>(5, Complex(0))));
  CHECK_THROWS(border_with_vector(A, std::vector<Complex>(5, Complex(0))));

  // Gaussian N=3, s=0, zeta=1: analytic prefactor times the bordered
  // Pfaffian gives Xi(1) = 1.
  PfaffianIngredients ing = assemble_ingredients(EnsembleSpec::goe(3), Real(0));
  Complex value = ing.prefactor * raw_pfaffian(ing, Complex(1));
  CHECK(rel(value, Complex(1)) < Real(1e-30));
}
