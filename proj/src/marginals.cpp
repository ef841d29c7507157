#include "rmtgap/marginals.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "rmtgap/calculus.hpp"
#include "rmtgap/gap.hpp"
#include "rmtgap/parallel.hpp"
#include "rmtgap/quadrature.hpp"

namespace rmtgap {

namespace {

void check_order(const EnsembleSpec& spec, int k) {
  spec.validate();
  if (k < 1 || k > spec.N) throw std::invalid_argument("order index k must lie in 1..N");
}

// Gap distributions memoised by threshold, so moment integrals for several
// powers and order indices share their evaluations.
class GapCache {
 public:
  GapCache(const EnsembleSpec& spec, const PrecisionContext& ctx) : spec_(spec), ctx_(ctx) {}

  const std::vector<Real>& at(const Real& s) {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    GapDistribution d = gap_distribution(spec_, s, ctx_);
    return cache_.emplace(s, std::move(d.E)).first->second;
  }

  // P(x_(k) <= s) and P(x_(k) > s), each summed over its own terms.
  Real below(const Real& s, int k) {
    const std::vector<Real>& E = at(s);
    Real sum(0);
    for (int l = 0; l < k; ++l) sum += E[l];
    return sum;
  }
  Real above(const Real& s, int k) {
    const std::vector<Real>& E = at(s);
    Real sum(0);
    for (int l = k; l <= spec_.N; ++l) sum += E[l];
    return sum;
  }

 private:
  EnsembleSpec spec_;
  PrecisionContext ctx_;
  std::map<Real, std::vector<Real>> cache_;
};

constexpr int kMaxWindowDoublings = 40;
constexpr int kTightenSteps = 8;

// Raw moments about c, p = 1..6, for each requested k.
std::vector<std::array<Real, 6>> shifted_moments(GapCache& cache, const std::vector<int>& ks,
                                                 const SupportWindow& w, const Real& c,
                                                 const PrecisionContext& ctx) {
  QuadratureSpec q = QuadratureSpec::for_digits(ctx.target_digits + 2);
  q.absolute_tolerance = std::pow(10.0, -(ctx.target_digits + 4));
  std::vector<std::array<Real, 6>> out(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const int k = ks[i];
    for (int p = 1; p <= 6; ++p) {
      auto upper = [&](const Real& t) { return Real(p) * pow(t - c, p - 1) * cache.above(t, k); };
      auto lower = [&](const Real& t) { return Real(p) * pow(t - c, p - 1) * cache.below(t, k); };
      Real m(0);
      if (w.hi > c) m += integrate(upper, Interval::finite(c, w.hi), q);
      if (c > w.lo) m -= integrate(lower, Interval::finite(w.lo, c), q);
      out[i][p - 1] = m;
    }
  }
  return out;
}

CumulantSummary summarise(const EnsembleSpec& spec, int k, const std::array<Real, 6>& m,
                          const Real& c) {
  const Real& m1 = m[0];
  // Central moments from the moments about c.
  std::array<Real, 7> mu;
  for (int n = 2; n <= 6; ++n) {
    Real sum(0);
    Real binom(1);
    for (int j = 0; j <= n; ++j) {
      Real mj = j == 0 ? Real(1) : m[j - 1];
      sum += binom * mj * pow(-m1, n - j);
      binom = binom * Real(n - j) / Real(j + 1);
    }
    mu[n] = sum;
  }
  Real k2 = mu[2];
  Real k3 = mu[3];
  Real k4 = mu[4] - Real(3) * mu[2] * mu[2];
  Real k5 = mu[5] - Real(10) * mu[3] * mu[2];
  Real k6 = mu[6] - Real(15) * mu[4] * mu[2] - Real(10) * mu[3] * mu[3] +
            Real(30) * mu[2] * mu[2] * mu[2];
  CumulantSummary out;
  out.spec = spec;
  out.k = k;
  out.mu = c + m1;
  out.sigma = sqrt(k2);
  out.gamma = {k3 / pow(out.sigma, 3), k4 / pow(out.sigma, 4), k5 / pow(out.sigma, 5),
               k6 / pow(out.sigma, 6)};
  return out;
}

SupportWindow window_with(GapCache& cache, const EnsembleSpec& spec, int k_high, int k_low,
                          const PrecisionContext& ctx) {
  const Real eps = pow10_neg(ctx.target_digits + 4);
  SupportWindow w;
  if (spec.is_goe()) {
    w.lo = Real(-1);
    w.hi = Real(1);
    int n = 0;
    while (cache.below(w.lo, k_low) >= eps) {
      if (++n > kMaxWindowDoublings) throw WindowError("lower tail window not found");
      w.lo = ldexp(w.lo, 1);
    }
  } else {
    w.lo = Real(0);
    w.hi = Real(1);
  }
  int n = 0;
  while (cache.above(w.hi, k_high) >= eps) {
    if (++n > kMaxWindowDoublings) throw WindowError("upper tail window not found");
    w.hi = ldexp(w.hi, 1);
  }
  // Pull both ends in to within width / 2^kTightenSteps of the eps crossings.
  Real a = w.lo;
  Real b = w.hi;
  for (int i = 0; i < kTightenSteps; ++i) {
    Real m = ldexp(a + b, -1);
    if (cache.above(m, k_high) < eps) b = m;
    else a = m;
  }
  const Real hi = b;
  a = w.lo;
  b = hi;
  for (int i = 0; i < kTightenSteps; ++i) {
    Real m = ldexp(a + b, -1);
    if (cache.below(m, k_low) < eps) a = m;
    else b = m;
  }
  w.lo = a;
  w.hi = hi;
  return w;
}

}  // namespace

Real marginal_cdf_at(const EnsembleSpec& spec, int k, const Real& s, const PrecisionContext& ctx) {
  check_order(spec, k);
  GapDistribution d = gap_distribution(spec, s, ctx);
  PrecisionGuard guard(ctx.bits);
  Real sum(0);
  for (int l = 0; l < k; ++l) sum += d.E[l];
  return sum;
}

std::vector<Real> marginal_cdf(const EnsembleSpec& spec, int k, const std::vector<Real>& s_grid,
                               const PrecisionContext& ctx) {
  check_order(spec, k);
  std::vector<Real> F(s_grid.size());
  PrecisionContext inner = ctx;
  inner.workers = 1;
  PrecisionGuard guard(ctx.bits);
  parallel_for(s_grid.size(), ctx.workers,
               [&](std::size_t i) { F[i] = marginal_cdf_at(spec, k, s_grid[i], inner); });
  return F;
}

Real marginal_pdf_at(const EnsembleSpec& spec, int k, const Real& s, const Real& extent,
                     const PrecisionContext& ctx, int width) {
  check_order(spec, k);
  if (width != 3 && width != 5 && width != 7) throw std::invalid_argument("stencil width");
  Real h;
  {
    PrecisionGuard guard(ctx.bits);
    h = fd_step(extent.is_zero() ? Real(1) : abs(extent));
  }
  const int fine_bits = ctx.bits + ctx.bits / 3 + 16;
  PrecisionContext fine = ctx.with_bits(fine_bits);
  PrecisionGuard guard(fine_bits);
  const int half = width / 2;
  int first = -half;
  if (spec.is_loe() && s - Real(half) * h < Real(0)) first = 0;
  std::vector<Real> nodes;
  std::vector<Real> F;
  for (int j = first; j < first + width; ++j) {
    nodes.push_back(s + Real(j) * h);
    F.push_back(marginal_cdf_at(spec, k, nodes.back(), fine));
  }
  std::vector<Real> d = differentiate_grid(nodes, F, width);
  PrecisionGuard back(ctx.bits);
  Real out;
  mpfr_set(out.get(), d[-first].get(), MPFR_RNDN);
  return out;
}

MarginalGrid marginal_pdf(const EnsembleSpec& spec, int k, const std::vector<Real>& s_grid,
                          const PrecisionContext& ctx, int width) {
  check_order(spec, k);
  MarginalGrid g;
  g.spec = spec;
  g.k = k;
  g.s = s_grid;
  g.F = marginal_cdf(spec, k, s_grid, ctx);
  g.f.resize(s_grid.size());
  PrecisionGuard guard(ctx.bits);
  Real extent = s_grid.empty() ? Real(1) : s_grid.back() - s_grid.front();
  PrecisionContext inner = ctx;
  inner.workers = 1;
  parallel_for(s_grid.size(), ctx.workers, [&](std::size_t i) {
    Real v = marginal_pdf_at(spec, k, s_grid[i], extent, inner, width);
    g.f[i] = v.sign() < 0 ? Real(0) : v;
  });
  return g;
}

std::vector<Real> uniform_grid(const Real& lo, const Real& hi, int steps) {
  if (steps < 1) return {lo};
  std::vector<Real> out;
  Real h = (hi - lo) / Real(steps);
  for (int i = 0; i <= steps; ++i) out.push_back(i == steps ? hi : lo + Real(i) * h);
  return out;
}

SupportWindow support_window(const EnsembleSpec& spec, int k_high, int k_low,
                             const PrecisionContext& ctx) {
  check_order(spec, k_high);
  check_order(spec, k_low);
  PrecisionGuard guard(ctx.bits);
  GapCache cache(spec, ctx);
  return window_with(cache, spec, k_high, k_low, ctx);
}

CumulantSummary cumulants(const EnsembleSpec& spec, int k, const PrecisionContext& ctx) {
  check_order(spec, k);
  PrecisionGuard guard(ctx.bits);
  GapCache cache(spec, ctx);
  SupportWindow w = window_with(cache, spec, k, k, ctx);
  Real c = ldexp(w.lo + w.hi, -1);
  auto m = shifted_moments(cache, {k}, w, c, ctx);
  return summarise(spec, k, m[0], c);
}

std::vector<CumulantSummary> cumulant_table(const EnsembleSpec& spec,
                                            const PrecisionContext& ctx) {
  spec.validate();
  PrecisionGuard guard(ctx.bits);
  GapCache cache(spec, ctx);
  SupportWindow w = window_with(cache, spec, 1, spec.N, ctx);
  Real c = ldexp(w.lo + w.hi, -1);
  std::vector<int> ks;
  for (int k = 1; k <= spec.N; ++k) ks.push_back(k);
  auto m = shifted_moments(cache, ks, w, c, ctx);
  std::vector<CumulantSummary> out;
  for (std::size_t i = 0; i < ks.size(); ++i) out.push_back(summarise(spec, ks[i], m[i], c));
  return out;
}

MeanVariance marginal_mean_variance(const EnsembleSpec& spec, int k, const PrecisionContext& ctx) {
  check_order(spec, k);
  PrecisionGuard guard(ctx.bits);
  GapCache cache(spec, ctx);
  SupportWindow w = window_with(cache, spec, k, k, ctx);
  Real c = ldexp(w.lo + w.hi, -1);
  QuadratureSpec q = QuadratureSpec::for_digits(ctx.target_digits + 2);
  q.absolute_tolerance = std::pow(10.0, -(ctx.target_digits + 4));
  Real m[2];
  for (int p = 1; p <= 2; ++p) {
    auto upper = [&](const Real& t) { return Real(p) * pow(t - c, p - 1) * cache.above(t, k); };
    auto lower = [&](const Real& t) { return Real(p) * pow(t - c, p - 1) * cache.below(t, k); };
    m[p - 1] = integrate(upper, Interval::finite(c, w.hi), q) -
               integrate(lower, Interval::finite(w.lo, c), q);
  }
  return {c + m[0], m[1] - m[0] * m[0]};
}

}  // namespace rmtgap
