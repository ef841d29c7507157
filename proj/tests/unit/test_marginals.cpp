#include <cmath>

#include "doctest.h"
#include "rmtgap/marginals.hpp"
#include "rmtgap/quadrature.hpp"

using namespace rmtgap;

namespace {

double to_d(const Real& x) { return x.to_double(); }

// Truncation to 7 decimals, as tabulated.
bool matches_truncated(const Real& value, const char* printed) {
  Real p(printed);
  Real ulp("1e-7");
  if (p.sign() >= 0) return value >= p && value < p + ulp;
  return value <= p && value > p - ulp;
}

}  // namespace

TEST_CASE("goe marginal cdf reflection") {
  PrecisionContext ctx;
  PrecisionGuard guard(ctx.bits);
  const EnsembleSpec spec = EnsembleSpec::goe(5);
  for (int k = 1; k <= 5; ++k) {
    Real a = marginal_cdf_at(spec, k, Real("0.3"), ctx);
    Real b = marginal_cdf_at(spec, 6 - k, Real("-0.3"), ctx);
    CHECK(abs(a + b - Real(1)) < Real(1e-30));
  }
  CHECK_THROWS_AS(marginal_cdf_at(spec, 0, Real(0), ctx), std::invalid_argument);
  CHECK_THROWS_AS(marginal_cdf_at(spec, 6, Real(0), ctx), std::invalid_argument);
}

TEST_CASE("density integrates to the cdf increment") {
  PrecisionContext ctx;
  PrecisionGuard guard(ctx.bits);
  const EnsembleSpec spec = EnsembleSpec::goe(3);
  QuadratureRule r = gauss_legendre_rule(24, Real(-1), Real(2));
  Real mass(0);
  for (std::size_t i = 0; i < r.nodes.size(); ++i)
    mass += r.weights[i] * marginal_pdf_at(spec, 2, r.nodes[i], Real(3), ctx);
  Real inc = marginal_cdf_at(spec, 2, Real(2), ctx) - marginal_cdf_at(spec, 2, Real(-1), ctx);
  CHECK(abs(mass - inc) < Real(1e-12));
}

TEST_CASE("central goe marginal is even") {
  PrecisionContext ctx;
  PrecisionGuard guard(ctx.bits);
  const EnsembleSpec spec = EnsembleSpec::goe(9);
  Real p = marginal_pdf_at(spec, 5, Real("0.4"), Real(4), ctx);
  Real m = marginal_pdf_at(spec, 5, Real("-0.4"), Real(4), ctx);
  CHECK(p > Real("0.1"));
  CHECK(abs(p - m) < Real(1e-25));
}

TEST_CASE("grid helpers") {
  PrecisionContext ctx;
  PrecisionGuard guard(ctx.bits);
  std::vector<Real> g = uniform_grid(Real(0), Real(1), 4);
  REQUIRE(g.size() == 5);
  CHECK(g[2] == Real("0.5"));
  CHECK(g.back() == Real(1));
  MarginalGrid mg = marginal_pdf(EnsembleSpec::loe(2, 0.0), 1, uniform_grid(Real(0), Real(8), 4), ctx);
  REQUIRE(mg.f.size() == 5);
  for (std::size_t i = 0; i < mg.f.size(); ++i) CHECK(mg.f[i].sign() >= 0);
  for (std::size_t i = 1; i < mg.F.size(); ++i) CHECK(mg.F[i] >= mg.F[i - 1]);
}

TEST_CASE("loe a=0 N=2 largest eigenvalue cdf against direct integration") {
  // Joint density of 0 < y < z proportional to (z - y) e^{-(y+z)/2}; total 4.
  PrecisionContext ctx;
  PrecisionGuard guard(ctx.bits);
  for (double x : {0.5, 2.0, 6.0}) {
    QuadratureRule outer = gauss_legendre_rule(40, Real(0), Real(x));
    Real total(0);
    for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
      const Real& z = outer.nodes[i];
      QuadratureRule inner = gauss_legendre_rule(40, Real(0), z);
      Real s(0);
      for (std::size_t j = 0; j < inner.nodes.size(); ++j)
        s += inner.weights[j] * (z - inner.nodes[j]) * exp(-(inner.nodes[j] + z) / Real(2));
      total += outer.weights[i] * s;
    }
    Real F = marginal_cdf_at(EnsembleSpec::loe(2, 0.0), 1, Real(x), ctx);
    CHECK(abs(F - total / Real(4)) < Real(1e-25));
  }
}

TEST_CASE("support window holds the mass") {
  PrecisionContext ctx;
  PrecisionGuard guard(ctx.bits);
  const EnsembleSpec spec = EnsembleSpec::goe(4);
  SupportWindow w = support_window(spec, 1, 4, ctx);
  CHECK(w.lo < w.hi);
  CHECK(marginal_cdf_at(spec, 4, w.lo, ctx) < Real(1e-19));
  CHECK(marginal_cdf_at(spec, 1, w.hi, ctx) > Real(1) - Real(1e-19));
}

TEST_CASE("goe N=8 largest eigenvalue cumulants") {
  PrecisionContext ctx;
  ctx.target_digits = 10;
  PrecisionGuard guard(ctx.bits);
  CumulantSummary c = cumulants(EnsembleSpec::goe(8), 1, ctx);
  CHECK(matches_truncated(c.mu, "3.2451029"));
  CHECK(matches_truncated(c.sigma, "0.6431706"));
  CHECK(matches_truncated(c.gamma[0], "0.2175978"));
  CHECK(matches_truncated(c.gamma[1], "0.0866120"));
  CHECK(matches_truncated(c.gamma[2], "0.0161454"));
  CHECK(matches_truncated(c.gamma[3], "-0.0388095"));
}

TEST_CASE("loe a=4 N=2 means and the goe trace identity") {
  PrecisionContext ctx;
  ctx.target_digits = 10;
  PrecisionGuard guard(ctx.bits);
  auto loe = cumulant_table(EnsembleSpec::loe(2, 4.0), ctx);
  REQUIRE(loe.size() == 2);
  CHECK(to_d(loe[0].mu) == doctest::Approx(15.0634920).epsilon(1e-8));
  // E tr = n N with n = 2a + N + 1.
  CHECK(abs(loe[0].mu + loe[1].mu - Real(22)) < Real(1e-8));

  auto goe = cumulant_table(EnsembleSpec::goe(4), ctx);
  Real second(0);
  Real first(0);
  for (const auto& c : goe) {
    second += c.sigma * c.sigma + c.mu * c.mu;
    first += c.mu;
  }
  // E tr X^2 = N + N(N-1)/2.
  CHECK(abs(second - Real(10)) < Real(1e-8));
  CHECK(abs(first) < Real(1e-8));

  MeanVariance mv = marginal_mean_variance(EnsembleSpec::goe(4), 2, ctx);
  CHECK(abs(mv.mean - goe[1].mu) < Real(1e-8));
  CHECK(abs(mv.variance - goe[1].sigma * goe[1].sigma) < Real(1e-8));
}
