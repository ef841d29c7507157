#include "doctest.h"
#include "rmtgap/kernels.hpp"
#include "rmtgap/quadrature.hpp"
#include "rmtgap/special.hpp"

using namespace rmtgap;

namespace {

QuadratureSpec oracle_spec(double tol = 1e-22) {
  QuadratureSpec q;
  q.tolerance = tol;
  q.tail_threshold = tol * 1e-6;
  return q;
}

Real gaussian_weight(int j, const Real& t) {
  return pow(t, static_cast<long>(j - 1)) * exp(-t * t / Real(2)) / tgamma(Real(j) / Real(2));
}

Real laguerre_weight(const Real& alpha, const Real& t) {
  if (t.is_zero()) return Real(0);
  return exp((alpha - Real(1)) * log(t) - t - lgamma(alpha));
}

// Integral of w over (lo, hi); either end may be infinite.
Real piece(const RealFunction& w, const Real& lo, const Real& hi, bool lo_inf, bool hi_inf,
           double tol = 1e-22) {
  Interval iv{lo, hi, lo_inf, hi_inf};
  if (!lo_inf && !hi_inf && !(lo < hi)) return Real(0);
  return integrate(w, iv, oracle_spec(tol));
}

constexpr double kOuterTol = 1e-20;

// Antiderivative of the Gaussian weight from -inf, via the incomplete gamma.
Real gaussian_cdf(int k, const Real& x) {
  const Real half = Real(k) / Real(2);
  const Real scale = pow(Real(2), half - Real(1));
  const Real negative_mass = k % 2 == 0 ? -scale : scale;
  if (x.sign() <= 0) return negative_mass * inc_gamma_upper_reg(half, x * x / Real(2));
  return negative_mass + scale * inc_gamma_lower_reg(half, x * x / Real(2));
}

// Oracle for the H entries from the sgn(y - x) double integrals. The inner
// integral over y comes from the antiderivative G of f_k, the outer one from
// quadrature. Support is (lo, inf), lo = -inf for the Gaussian case.
struct HOracle {
  RealFunction fj;
  RealFunction G;
  Real s;
  Real lo;
  bool lo_inf;
  Real g_lo;   // G(lo)
  Real g_inf;  // G(inf)

  Real inner_below(const Real& x) const {
    if (x < s) return (G(s) - G(x)) - (G(x) - g_lo);
    return -(G(s) - g_lo);
  }
  Real inner_above(const Real& x) const {
    if (x > s) return (g_inf - G(x)) - (G(x) - G(s));
    return g_inf - G(s);
  }
  Real H0() const {
    return piece([&](const Real& x) { return fj(x) * inner_below(x); }, lo, s, lo_inf, false,
                 kOuterTol);
  }
  Real H2() const {
    return piece([&](const Real& x) { return fj(x) * inner_above(x); }, s, s, false, true,
                 kOuterTol);
  }
  Real H1() const {
    Real a = piece([&](const Real& x) { return fj(x) * inner_above(x); }, lo, s, lo_inf, false,
                   kOuterTol);
    Real b = piece([&](const Real& x) { return fj(x) * inner_below(x); }, s, s, false, true,
                   kOuterTol);
    return a + b;
  }
};

bool near(const Real& a, const Real& b, double tol) { return abs(a - b) <= Real(tol); }

}  // namespace

TEST_CASE("gaussian psi values and recurrences") {
  GaussianPsi p = build_gaussian_psi(4, Real(0));
  CHECK(p.psi[0].is_zero());
  CHECK(near(p.psi[1], Real(1) / sqrt(Real(2)), 1e-35));
  CHECK(near(p.psi[2], Real(-1), 1e-35));
  for (double s : {-2.5, 0.0, 0.7, 3.0}) {
    GaussianPsi q = build_gaussian_psi(5, Real(s));
    for (int j = 1; j <= 10; ++j) {
      Real direct = piece([j](const Real& t) { return gaussian_weight(j, t); }, Real(0), Real(s),
                          true, false);
      CHECK(near(q.psi[j], direct, 1e-22));
      CHECK(near(q.psi[j] + q.psi_tilde[j], gaussian_u(j), 1e-30));
    }
    const Real e = exp(-Real(s) * Real(s) / Real(2));
    for (int j = 2; j <= 10; ++j) {
      Real term = pow(Real(s), static_cast<long>(j - 2)) * e / tgamma(Real(j) / Real(2));
      Real r = q.psi[j] - (Real(2) * q.psi[j - 2] - term);
      CHECK(abs(r) <= Real(8) * machine_epsilon() * max(abs(q.psi[j]), Real(1)) * Real(4));
    }
  }
  GaussianPsi far = build_gaussian_psi(3, Real(40));
  for (int j = 1; j <= 3; ++j) CHECK(far.psi_tilde[j] < Real(1e-300));
}

TEST_CASE("gaussian I symmetry and quadrature oracle") {
  for (double s : {-1.5, 0.0, 1.2}) {
    GaussianPsi p = build_gaussian_psi(6, Real(s));
    PairIntegrals t = build_gaussian_I(6, p);
    for (int j = 1; j <= 6; ++j) {
      for (int k = 1; k <= 6; ++k) {
        Real sym = t.I(j, k) + t.I(k, j) - p.psi[j] * p.psi[k];
        CHECK(abs(sym) <= Real(1e-30));
        Real symt = t.I_tilde(j, k) + t.I_tilde(k, j) - p.psi_tilde[j] * p.psi_tilde[k];
        CHECK(abs(symt) <= Real(1e-30));
      }
    }
  }
  // I(2,1;0) by nested quadrature with the inner Psi also by quadrature.
  GaussianPsi p = build_gaussian_psi(2, Real(0));
  PairIntegrals t = build_gaussian_I(2, p);
  QuadratureSpec q;
  q.tolerance = 1e-22;
  q.tail_threshold = 1e-28;
  Real nested = integrate(
      [&](const Real& x) {
        Real inner = integrate([](const Real& y) { return gaussian_weight(1, y); },
                               Interval::lower_half(x), q);
        return gaussian_weight(2, x) * inner;
      },
      Interval::lower_half(Real(0)), q);
  CHECK(near(t.I(2, 1), nested, 1e-20));
}

TEST_CASE("gaussian H entries match direct double integrals for N <= 4") {
  for (double sd : {-0.8, 0.0, 0.9}) {
    const Real s(sd);
    PfaffianIngredients ing = assemble_ingredients(EnsembleSpec::goe(4), s);
    for (int j = 1; j <= 4; ++j) {
      for (int k = j + 1; k <= 4; ++k) {
        const Real mass = pow(Real(2), Real(k) / Real(2) - Real(1));
        HOracle o{[j](const Real& x) { return gaussian_weight(j, x); },
                  [k](const Real& y) { return gaussian_cdf(k, y); },
                  s, Real(0), true, Real(0), k % 2 == 0 ? Real(0) : ldexp(mass, 1)};
        CHECK(near(ing.H0(j - 1, k - 1), o.H0(), 1e-16));
        CHECK(near(ing.H1(j - 1, k - 1), o.H1(), 1e-16));
        CHECK(near(ing.H2(j - 1, k - 1), o.H2(), 1e-16));
      }
    }
  }
}

TEST_CASE("gaussian H1 simplified form equals the product form") {
  const Real s(0.37);
  PfaffianIngredients ing = assemble_ingredients(EnsembleSpec::goe(7), s);
  GaussianPsi p = build_gaussian_psi(7, s);
  for (int j = 1; j <= 7; ++j) {
    CHECK(ing.H0(j - 1, j - 1).is_zero());
    CHECK(ing.H1(j - 1, j - 1).is_zero());
    CHECK(ing.H2(j - 1, j - 1).is_zero());
    for (int k = 1; k <= 7; ++k) {
      Real product = -p.psi_tilde[j] * p.psi[k] + p.psi_tilde[k] * p.psi[j];
      CHECK(abs(ing.H1(j - 1, k - 1) - product) <= Real(8) * machine_epsilon() * Real(16));
    }
  }
}

TEST_CASE("gaussian large threshold empties the upper tail") {
  PfaffianIngredients ing = assemble_ingredients(EnsembleSpec::goe(5), Real(40));
  for (int j = 1; j <= 5; ++j) {
    CHECK(near(ing.nu_psi[j], gaussian_u(j), 1e-60));
    for (int k = 1; k <= 5; ++k) CHECK(abs(ing.H2(j - 1, k - 1)) < Real(1e-300));
  }
}

TEST_CASE("laguerre psi") {
  const Real a(0);
  for (double x : {0.0, 0.4, 3.0}) {
    LaguerrePsi p = build_laguerre_psi(3, a, Real(x));
    CHECK(near(p.psi[1], Real(1) - exp(-Real(x)), 1e-35));
    for (int j = 1; j <= 3; ++j) CHECK(near(p.psi[j] + p.psi_tilde[j], Real(1), 1e-36));
  }
  LaguerrePsi h = build_laguerre_psi(2, Real(-0.5), Real(1.3));
  CHECK(near(h.psi2[1 + 0], Real(0), 0));  // unused slot
  Real half = incomplete_gamma(Real(0.5), Real(1.3)).lower;
  CHECK(near(half, erf(sqrt(Real(1.3))), 1e-35));
  // First-line recurrence as an oracle for half-integer a.
  for (int j = 2; j <= 2; ++j) {
    Real alpha = Real(-0.5) + Real(j);
    Real x(1.3);
    Real term = exp((alpha - Real(1)) * log(x) - x) / tgamma(alpha);
    CHECK(near(h.psi[j], h.psi[j - 1] - term, 1e-35));
  }
  CHECK_THROWS_AS(build_laguerre_psi(2, Real(-1), Real(1)), std::domain_error);
  CHECK_THROWS_AS(build_laguerre_psi(2, Real(0.5), Real(-1)), std::domain_error);
}

TEST_CASE("laguerre I symmetry and both H routes") {
  for (double a : {0.0, 1.0, 3.5, -0.5}) {
    for (double x : {0.0, 0.8, 5.0}) {
      LaguerrePsi p = build_laguerre_psi(6, Real(a), Real(x));
      PairIntegrals t = build_laguerre_I(6, p);
      for (int j = 1; j <= 6; ++j) {
        for (int k = 1; k <= 6; ++k) {
          CHECK(abs(t.I(j, k) + t.I(k, j) - p.psi[j] * p.psi[k]) <= Real(1e-30));
          CHECK(abs(t.I_tilde(j, k) + t.I_tilde(k, j) - p.psi_tilde[j] * p.psi_tilde[k]) <=
                Real(1e-30));
        }
      }
      RealMatrix H0;
      RealMatrix H2;
      laguerre_H_direct(6, p, H0, H2);
      PfaffianIngredients ing = assemble_ingredients(EnsembleSpec::loe(6, a), ldexp(Real(x), 1));
      for (int j = 0; j < 6; ++j) {
        for (int k = 0; k < 6; ++k) {
          Real scale = max(abs(H0(j, k)), Real(1));
          CHECK(abs(H0(j, k) - ing.H0(j, k)) <= Real(8) * machine_epsilon() * scale * Real(64));
          Real scale2 = max(abs(H2(j, k)), Real(1));
          CHECK(abs(H2(j, k) - ing.H2(j, k)) <= Real(8) * machine_epsilon() * scale2 * Real(64));
        }
      }
    }
  }
}

TEST_CASE("laguerre H entries match direct double integrals") {
  const double a = 0.5;
  const Real s(2.2);  // eigenvalue scale; kernel argument 1.1
  const Real x = ldexp(s, -1);
  PfaffianIngredients ing = assemble_ingredients(EnsembleSpec::loe(3, a), s);
  for (int j = 1; j <= 3; ++j) {
    for (int k = j + 1; k <= 3; ++k) {
      Real aj = Real(a) + Real(j);
      Real ak = Real(a) + Real(k);
      HOracle o{[aj](const Real& t) { return laguerre_weight(aj, t); },
                [ak](const Real& t) { return inc_gamma_lower_reg(ak, t); },
                x, Real(0), false, Real(0), Real(1)};
      CHECK(near(ing.H0(j - 1, k - 1), o.H0(), 1e-16));
      CHECK(near(ing.H1(j - 1, k - 1), o.H1(), 1e-16));
      CHECK(near(ing.H2(j - 1, k - 1), o.H2(), 1e-16));
    }
  }
  PfaffianIngredients zero = assemble_ingredients(EnsembleSpec::loe(3, a), Real(0));
  for (int j = 0; j < 3; ++j) {
    CHECK(zero.nu_psi[j + 1].is_zero());
    for (int k = 0; k < 3; ++k) CHECK(zero.H0(j, k).is_zero());
  }
  CHECK_THROWS_AS(assemble_ingredients(EnsembleSpec::loe(3, a), Real(-1)), std::domain_error);
}

TEST_CASE("prefactors") {
  CHECK(ensemble_prefactor(EnsembleSpec::goe(4)) == Real(0.25));
  CHECK(near(ensemble_prefactor(EnsembleSpec::goe(3)), pow(Real(2), Real(-1.5)), 1e-36));
  CHECK(near(ensemble_prefactor(EnsembleSpec::loe(1, 0)), Real(1), 1e-36));
  CHECK_THROWS_AS(ensemble_prefactor(EnsembleSpec::loe(2, -1)), std::invalid_argument);
}
