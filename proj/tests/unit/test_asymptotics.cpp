#include <cmath>

#include "doctest.h"
#include "rmtgap/asymptotics.hpp"

using namespace rmtgap;

TEST_CASE("marchenko-pastur c=1") {
  PrecisionGuard guard(128);
  MPLaw mp;
  CHECK(mp.c_minus().is_zero());
  CHECK(mp.c_plus() == Real(4));
  CHECK(abs(mp.tail_mass(Real(1)) - Real("0.391002218956")) < Real(1e-11));
  CHECK(abs(mp.quantile(Real("0.4")) - Real("0.967712250119")) < Real(1e-11));
  CHECK(abs(mp.tail_mass(Real(0)) - Real(1)) < Real(1e-30));
  CHECK(mp.density(Real(5)).is_zero());
  CHECK_THROWS_AS(mp.tail_mass(Real(5)), std::domain_error);
  CHECK_THROWS_AS(mp.quantile(Real(2)), std::domain_error);
  MPLaw half{0.5};
  CHECK(abs(half.tail_mass(half.c_minus()) - Real(1)) < Real(1e-30));
}

TEST_CASE("variance ansatz recovers synthetic coefficients") {
  PrecisionGuard guard(160);
  const Real c1("2.1"), c2("0.4"), c3("-0.7");
  std::array<VarianceRow, 3> rows;
  const int Ns[3] = {10, 50, 100};
  for (int i = 0; i < 3; ++i) {
    Real n(Ns[i]);
    Real ln = log(n);
    rows[i] = {Ns[i], (ln + c1 + c2 * ln / n + c3 / n) / (pi() * pi())};
  }
  auto c = variance_ansatz_fit(rows);
  CHECK(abs(c[0] - c1) < Real(1e-35));
  CHECK(abs(c[1] - c2) < Real(1e-35));
  CHECK(abs(c[2] - c3) < Real(1e-35));
  rows[1] = rows[0];
  CHECK_THROWS_AS(variance_ansatz_fit(rows), std::invalid_argument);
  CHECK(abs(ansatz_c1_literature() - Real("2.422956656")) < Real(1e-9));
}

TEST_CASE("gue variance expansion") {
  PrecisionGuard guard(128);
  CHECK(abs(gue_variance_expansion(100) - Real("0.381770753024")) < Real(1e-11));
  for (int n = 10; n < 100; n += 10) CHECK(gue_variance_expansion(n) < gue_variance_expansion(n + 10));
}

TEST_CASE("counting statistics") {
  PrecisionContext ctx;
  PrecisionGuard guard(ctx.bits);
  CountingStats g = counting_stats(EnsembleSpec::goe(10), Real(0), ctx);
  CHECK(abs(g.mean - Real(5)) < Real(1e-30));
  CHECK(abs(g.variance - Real("0.47357196132747")) < Real(1e-13));
  CountingStats l = counting_stats(EnsembleSpec::loe(20, 1.0), Real(20), ctx);
  CHECK(abs(l.mean - Real("8.71149059519")) < Real(1e-10));
  CHECK(abs(l.variance - Real("0.5096148748152")) < Real(1e-12));
}

TEST_CASE("local clt table") {
  PrecisionContext ctx;
  PrecisionGuard guard(ctx.bits);
  LocalCltTable t = local_clt_table(EnsembleSpec::goe(8), Real(0), {-2, -1, 0, 1, 2},
                                    Centering::HalfN, ctx);
  CHECK(t.center == 4);
  REQUIRE(t.rows.size() == 5);
  CHECK(abs(t.rows[0].p_exact - t.rows[4].p_exact) < Real(1e-30));
  CHECK(abs(t.rows[1].delta - t.rows[3].delta) < Real(1e-30));
  for (const auto& r : t.rows) CHECK(abs(r.p_exact - r.p_approx - r.delta) < Real(1e-30));
  LocalCltTable f = local_clt_table(EnsembleSpec::loe(20, 1.0), Real(20), {0}, Centering::FloorMean, ctx);
  CHECK(f.center == 8);
  CHECK(abs(f.rows[0].p_exact - Real("0.34163988")) < Real(1e-8));
  CHECK(abs(f.rows[0].p_approx - Real("0.34008605")) < Real(1e-8));
  LocalCltTable m = local_clt_table(EnsembleSpec::loe(20, 1.0), Real(20), {0}, Centering::Mean, ctx);
  CHECK(m.center == 9);
  CHECK_THROWS_AS(local_clt_table(EnsembleSpec::goe(3), Real(0), {5}, Centering::HalfN, ctx),
                  std::invalid_argument);
}

TEST_CASE("large deviation N=10") {
  PrecisionContext ctx;
  PrecisionGuard guard(ctx.bits);
  CHECK(abs(zeta_prime_minus_one() - Real("-0.1654211437")) < Real(1e-10));
  LargeDeviationRow r = large_deviation_check(10, ctx);
  CHECK(abs(r.exact - Real("-31.4183282145")) < Real(1e-9));
  CHECK(abs(r.predicted - Real("-31.416730192")) < Real(1e-8));
  CHECK(abs(r.delta - (r.exact - r.predicted)) < Real(1e-30));
}

TEST_CASE("interlacing of means and zeros") {
  PrecisionContext ctx;
  ctx.target_digits = 10;
  PrecisionGuard guard(ctx.bits);
  InterlacingReport g = interlacing_report(EnsembleSpec::goe(4), ctx);
  CHECK(g.checked == 2);
  CHECK(g.chain);
  CHECK(g.partial_sums);
  InterlacingReport l = interlacing_report(EnsembleSpec::loe(2, 4.0), ctx);
  CHECK(l.checked == 2);
  CHECK(l.chain);
  CHECK(abs(l.zeros[0] - Real(12)) < Real(1e-30));
  CHECK(abs(l.zeros[1] - Real(6)) < Real(1e-30));
}

TEST_CASE("small bulk probe is even") {
  PrecisionContext ctx;
  PrecisionGuard guard(ctx.bits);
  BulkProbe p = bulk_probe_goe(7, {Real("-0.5"), Real(0), Real("0.5")}, ctx);
  CHECK(p.k == 4);
  CHECK(abs(p.difference[0] - p.difference[2]) < Real(1e-20));
  CHECK(abs(p.shape[1] - p.difference[1]) < Real(1e-30));
  CHECK_THROWS_AS(bulk_probe_goe(8, {Real(0)}, ctx), std::invalid_argument);
}
