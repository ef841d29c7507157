#include <array>
#include <cmath>

#include "doctest.h"
#include "rmtgap/gap.hpp"
#include "rmtgap/mc.hpp"

using namespace rmtgap;

namespace {

double to_d(const Real& x) { return x.to_double(); }

void check_against_exact(const EnsembleSpec& spec, double s, long samples, std::uint64_t seed) {
  PrecisionContext ctx;
  GapDistribution d = gap_distribution(spec, Real(s), ctx);
  SamplerConfig cfg{spec, samples, seed, 1};
  EmpiricalGap g = empirical_gap_distribution(cfg, s);
  for (int k = 0; k <= spec.N; ++k) {
    double p = to_d(d.E[k]);
    double se = std::max(std::sqrt(p * (1 - p) / samples), 1.0 / samples);
    CHECK(std::abs(g.frequency[k] - p) < 4.5 * se);
  }
}

}  // namespace

TEST_CASE("splitmix reference output") {
  SplitMix64 m(1234567);
  CHECK(m.next() == 6457827717110365317ULL);
  CHECK(m.next() == 3203168211198807973ULL);
}

TEST_CASE("sturm count agrees with the eigen solver") {
  std::mt19937_64 rng(7);
  for (const EnsembleSpec& spec : {EnsembleSpec::goe(9), EnsembleSpec::loe(7, 1.5)}) {
    for (int rep = 0; rep < 50; ++rep) {
      std::mt19937_64 a(rng());
      std::mt19937_64 b = a;
      Tridiagonal t = sample_tridiagonal(spec, a);
      std::vector<double> ev = sample_spectrum(spec, b);
      for (double s : {-2.0, 0.0, 0.5, 3.0, 10.0}) {
        int n = 0;
        for (double x : ev) n += x > s;
        CHECK(count_above(t, s) == n);
      }
    }
  }
}

TEST_CASE("results do not depend on the worker count") {
  SamplerConfig one{EnsembleSpec::goe(5), 70000, 99, 1};
  SamplerConfig three = one;
  three.workers = 3;
  EmpiricalOrderStats a = empirical_order_statistics(one);
  EmpiricalOrderStats b = empirical_order_statistics(three);
  CHECK(a.mean == b.mean);
  CHECK(empirical_gap_distribution(one, 0.3).frequency ==
        empirical_gap_distribution(three, 0.3).frequency);
}

TEST_CASE("goe N=2 largest eigenvalue mean is sqrt(pi)/2") {
  SamplerConfig cfg{EnsembleSpec::goe(2), 200000, 3, 1};
  EmpiricalOrderStats o = empirical_order_statistics(cfg);
  CHECK(std::abs(o.mean[0] - std::sqrt(M_PI) / 2) < 4 * o.standard_error[0]);
  CHECK(std::abs(o.mean[1] + std::sqrt(M_PI) / 2) < 4 * o.standard_error[1]);
}

TEST_CASE("loe a=4 N=2 order statistic means") {
  SamplerConfig cfg{EnsembleSpec::loe(2, 4.0), 200000, 5, 1};
  EmpiricalOrderStats o = empirical_order_statistics(cfg);
  CHECK(std::abs(o.mean[0] - 15.0634920) < 4 * o.standard_error[0]);
  // E tr = n N with n = 2a + N + 1.
  CHECK(std::abs(o.mean[0] + o.mean[1] - 22.0) < 4 * (o.standard_error[0] + o.standard_error[1]));
}

TEST_CASE("empirical gap probabilities match the exact ones") {
  check_against_exact(EnsembleSpec::goe(4), 0.0, 100000, 11);
  check_against_exact(EnsembleSpec::loe(6, 1.0), 6.0, 100000, 12);
}

TEST_CASE("counting moments and histogram") {
  SamplerConfig cfg{EnsembleSpec::goe(6), 50000, 21, 1};
  EmpiricalCounting c = empirical_counting(cfg, 0.0);
  CHECK(std::abs(c.mean - 3.0) < 4 * c.mean_error);
  CHECK(c.variance_error > 0);
  std::vector<double> h = order_statistic_histogram(cfg, 1, -2.0, 8.0, 50);
  double mass = 0;
  for (double v : h) mass += v * 0.2;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-3));
  CHECK_THROWS_AS(order_statistic_histogram(cfg, 0, 0.0, 1.0, 4), std::invalid_argument);
  SamplerConfig bad = cfg;
  bad.samples = 0;
  CHECK_THROWS_AS(empirical_counting(bad, 0.0), std::invalid_argument);
}

TEST_CASE("chi and normal generators match their first four moments") {
  std::mt19937_64 rng(2024);
  const long M = 1000000;
  auto check = [&](auto draw, const std::array<double, 4>& exact) {
    std::array<double, 8> s{};
    for (long m = 0; m < M; ++m) {
      double x = draw();
      double p = 1;
      for (int j = 0; j < 8; ++j) {
        p *= x;
        s[j] += p;
      }
    }
    for (int j = 0; j < 4; ++j) {
      double mean = s[j] / M;
      double se = std::sqrt((s[2 * j + 1] / M - mean * mean) / M);
      CHECK(std::abs(mean - exact[j]) < 5 * se);
    }
  };
  std::normal_distribution<double> normal(0.0, 1.0);
  check([&] { return normal(rng); }, {0.0, 1.0, 0.0, 3.0});
  for (double k : {1.0, 3.0, 6.5}) {
    // E chi^p = 2^{p/2} Gamma((k+p)/2) / Gamma(k/2).
    std::array<double, 4> e;
    for (int p = 1; p <= 4; ++p)
      e[p - 1] = std::pow(2.0, p / 2.0) * std::exp(std::lgamma((k + p) / 2) - std::lgamma(k / 2));
    check([&] { return chi_variate(k, rng); }, e);
  }
}

TEST_CASE("goe N=50 spectrum fills the semicircle") {
  const int N = 50;
  const double R = 2 * std::sqrt(N / 2.0);
  std::mt19937_64 rng(8);
  const int draws = 2000;
  long inner = 0;
  long outer = 0;
  for (int d = 0; d < draws; ++d) {
    for (double x : sample_spectrum(EnsembleSpec::goe(N), rng)) {
      inner += std::abs(x) <= 0.95 * R;
      outer += std::abs(x) <= 1.05 * R;
    }
  }
  const double total = static_cast<double>(draws) * N;
  // Semicircle mass within r R: (2/pi)(r sqrt(1-r^2) + asin r).
  const double r = 0.95;
  const double law = 2 / M_PI * (r * std::sqrt(1 - r * r) + std::asin(r));
  CHECK(std::abs(inner / total - law) < 0.01);
  CHECK(outer / total > 0.99);
}
