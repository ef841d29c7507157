#include "rmtgap/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "rmtgap/calculus.hpp"
#include "rmtgap/gap.hpp"
#include "rmtgap/marginals.hpp"
#include "rmtgap/orthopoly.hpp"
#include "rmtgap/parallel.hpp"
#include "rmtgap/quadrature.hpp"

namespace rmtgap {

namespace {

Real gaussian_density(const Real& x, const Real& variance) {
  return exp(-x * x / (Real(2) * variance)) / sqrt(Real(2) * pi() * variance);
}

Real standard_normal(const Real& x) { return gaussian_density(x, Real(1)); }

CountingStats stats_from(const EnsembleSpec& spec, const Real& s, const GapDistribution& d) {
  CountingStats out;
  out.spec = spec;
  out.s = s;
  out.bits_used = d.bits_used;
  out.residual = d.residual;
  Real mean(0);
  for (int k = 0; k <= spec.N; ++k) mean += Real(k) * d.E[k];
  Real center = mean;
  if (spec.is_goe() && s.is_zero()) center = Real(spec.N) / Real(2);
  Real var(0);
  for (int k = 0; k <= spec.N; ++k) {
    Real dk = Real(k) - center;
    var += dk * dk * d.E[k];
  }
  out.mean = mean;
  out.variance = var;
  return out;
}

}  // namespace

CountingStats counting_stats(const EnsembleSpec& spec, const Real& s, const PrecisionContext& ctx) {
  GapDistribution d = gap_distribution(spec, s, ctx);
  PrecisionGuard guard(d.bits_used);
  return stats_from(spec, s, d);
}

std::array<Real, 3> variance_ansatz_fit(const std::array<VarianceRow, 3>& rows) {
  // Rows [1, log N / N, 1 / N] c = pi^2 Var - log N, solved by Cramer's rule.
  Real A[3][3];
  Real b[3];
  for (int i = 0; i < 3; ++i) {
    Real n(rows[i].N);
    Real ln = log(n);
    A[i][0] = Real(1);
    A[i][1] = ln / n;
    A[i][2] = Real(1) / n;
    b[i] = pi() * pi() * rows[i].variance - ln;
  }
  auto det3 = [](Real m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  Real d = det3(A);
  if (abs(d) <= machine_epsilon()) throw std::invalid_argument("ansatz rows give a singular system");
  std::array<Real, 3> c;
  for (int col = 0; col < 3; ++col) {
    Real M[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M[i][j] = j == col ? b[i] : A[i][j];
    c[col] = det3(M) / d;
  }
  return c;
}

Real ansatz_c1_literature() {
  return Real(3) * log2_const() + euler_gamma() + Real(1) - pi() * pi() / Real(8);
}

LocalCltTable local_clt_table(const EnsembleSpec& spec, const Real& s,
                              const std::vector<int>& offsets, Centering centering,
                              const PrecisionContext& ctx) {
  GapDistribution d = gap_distribution(spec, s, ctx);
  PrecisionGuard guard(d.bits_used);
  LocalCltTable t;
  t.stats = stats_from(spec, s, d);
  switch (centering) {
    case Centering::HalfN:
      t.center = spec.N / 2;
      break;
    case Centering::FloorMean:
      t.center = floor(t.stats.mean).to_long();
      break;
    case Centering::Mean:
      t.center = floor(t.stats.mean + Real(0.5)).to_long();
      break;
  }
  for (int k : offsets) {
    if (k < -spec.N || k > spec.N) throw std::invalid_argument("local CLT offset out of range");
    const long idx = t.center + k;
    LocalCltRow row;
    row.k = k;
    row.p_exact = idx >= 0 && idx <= spec.N ? d.E[idx] : Real(0);
    row.p_approx = gaussian_density(Real(idx) - t.stats.mean, t.stats.variance);
    row.delta = row.p_exact - row.p_approx;
    t.rows.push_back(row);
  }
  return t;
}

Real zeta_prime_minus_one() { return Real("-0.16542114370045092921391966024278064276063"); }

Real goe_large_deviation_prediction(int N) {
  const Real n(N);
  const Real log3 = log(Real(3));
  const Real log2 = log2_const();
  const Real l = log(Real(1) + Real(2) / sqrt(Real(3)));
  Real c1 = -log3 / Real(4);
  Real c2 = -l / Real(2);
  Real c3 = Real(-1) / Real(24);
  Real c4 = -log2 / Real(12) - log3 / Real(16) + l / Real(4) + zeta_prime_minus_one() / Real(2);
  return c1 * n * n + c2 * n + c3 * log(n) + c4;
}

LargeDeviationRow large_deviation_check(int N, const PrecisionContext& ctx) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  LogGapResult r = log_empty_probability(EnsembleSpec::goe(N), Real(0), ctx);
  PrecisionGuard guard(ctx.bits);
  LargeDeviationRow row;
  row.N = N;
  row.exact = r.value;
  row.predicted = goe_large_deviation_prediction(N);
  row.delta = row.exact - row.predicted;
  row.bits_used = r.bits_used;
  return row;
}

Real gue_variance_expansion(int N) {
  const Real n(N);
  const Real p2 = pi() * pi();
  const Real L = log(Real(4) * n) + euler_gamma();
  return (L + Real(1)) / (Real(2) * p2) - L / (Real(4) * p2 * n) +
         Real(7) / (Real(96) * p2 * n * n) +
         (Real(24) * L - Real(41)) / (Real(192) * p2 * n * n * n) -
         Real(219) / (Real(5120) * p2 * n * n * n * n);
}

Real MPLaw::c_minus() const {
  Real r = Real(1) - sqrt(Real(c));
  return r * r;
}

Real MPLaw::c_plus() const {
  Real r = Real(1) + sqrt(Real(c));
  return r * r;
}

Real MPLaw::density(const Real& x) const {
  const Real lo = c_minus();
  const Real hi = c_plus();
  if (!(x > lo) || !(x < hi)) return Real(0);
  return sqrt((hi - x) * (x - lo)) / (Real(2) * pi() * Real(c) * x);
}

Real MPLaw::tail_mass(const Real& x) const {
  if (!(c > 0.0) || c > 1.0) throw std::domain_error("aspect ratio must lie in (0, 1]");
  const Real lo = c_minus();
  const Real hi = c_plus();
  if (x < lo || x > hi) throw std::domain_error("argument outside the Marchenko-Pastur support");
  if (x == hi) return Real(0);
  QuadratureSpec q;
  q.tolerance = std::ldexp(1.0, -static_cast<int>(working_bits()) + 8);
  return integrate([this](const Real& t) { return density(t); }, Interval::finite(x, hi), q);
}

Real MPLaw::quantile(const Real& q) const {
  if (q < Real(0) || q > Real(1)) throw std::domain_error("tail mass must lie in [0, 1]");
  const Real lo = c_minus();
  const Real hi = c_plus();
  Real tol = ldexp(machine_epsilon(), 16) * hi;
  return find_root([&](const Real& x) { return tail_mass(x) - q; }, lo, hi, tol);
}

BulkProbe bulk_probe_goe(int N, const std::vector<Real>& X, const PrecisionContext& ctx) {
  if (N < 3 || N % 2 == 0) throw std::invalid_argument("bulk probe needs odd N >= 3");
  if (X.empty()) throw std::invalid_argument("empty grid");
  const EnsembleSpec spec = EnsembleSpec::goe(N);
  PrecisionGuard guard(ctx.bits);
  BulkProbe p;
  p.N = N;
  p.k = (N + 1) / 2;
  p.scale = sqrt(Real(2 * N) / log(Real(N)));
  p.X = X;
  Real lo = X.front();
  Real hi = X.front();
  for (const Real& x : X) {
    lo = min(lo, x);
    hi = max(hi, x);
  }
  const Real extent = (hi - lo) / p.scale;
  p.density.resize(X.size());
  PrecisionContext inner = ctx;
  inner.workers = 1;
  parallel_for(X.size(), ctx.workers, [&](std::size_t i) {
    p.density[i] = marginal_pdf_at(spec, p.k, X[i] / p.scale, extent, inner) / p.scale;
  });
  std::size_t origin = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    p.gaussian.push_back(standard_normal(X[i]));
    p.difference.push_back(p.density[i] - p.gaussian[i]);
    if (abs(X[i]) < abs(X[origin])) origin = i;
  }
  // (1 + X d/dX) e^{-X^2/2} = (1 - X^2) e^{-X^2/2}.
  auto shape = [](const Real& x) { return (Real(1) - x * x) * exp(-x * x / Real(2)); };
  p.c = p.difference[origin] / shape(X[origin]);
  for (const Real& x : X) p.shape.push_back(p.c * shape(x));
  return p;
}

BulkLawReport bulk_law_loe(int N, double a, int l, const std::vector<Real>& z,
                           const PrecisionContext& ctx) {
  const EnsembleSpec spec = EnsembleSpec::loe(N, a);
  spec.validate();
  if (l < 1 || l > N) throw std::invalid_argument("l must lie in 1..N");
  PrecisionGuard guard(ctx.bits);
  BulkLawReport r;
  r.spec = spec;
  r.l = l;
  MeanVariance mv = marginal_mean_variance(spec, l, ctx);
  r.mean = mv.mean;
  r.sd = sqrt(mv.variance);
  // Fixed a: c = N / (2a + N + 1) tends to 1.
  MPLaw mp;
  mp.c = 1.0;
  r.gamma_l = mp.quantile(Real(l) / Real(N));
  r.z = z;
  r.density.resize(z.size());
  const Real extent = Real(8) * r.sd;
  PrecisionContext inner = ctx;
  inner.workers = 1;
  parallel_for(z.size(), ctx.workers, [&](std::size_t i) {
    r.density[i] = r.sd * marginal_pdf_at(spec, l, r.mean + r.sd * z[i], extent, inner);
  });
  r.max_deviation = Real(0);
  for (std::size_t i = 0; i < z.size(); ++i)
    r.max_deviation = max(r.max_deviation, abs(r.density[i] - standard_normal(z[i])));
  return r;
}

InterlacingReport interlacing_report(const EnsembleSpec& spec, const PrecisionContext& ctx) {
  spec.validate();
  PrecisionGuard guard(ctx.bits);
  InterlacingReport r;
  r.spec = spec;
  for (const CumulantSummary& c : cumulant_table(spec, ctx)) r.means.push_back(c.mu);
  std::vector<Real> zeros;
  if (spec.is_goe()) {
    std::vector<Real> diag(spec.N, Real(0));
    std::vector<Real> off;
    for (int j = 1; j < spec.N; ++j) off.push_back(sqrt(Real(spec.N - j) / Real(2)));
    zeros = tridiagonal_eigenvalues(diag, off);
    r.checked = spec.N / 2;
  } else {
    zeros = orthopoly_zeros(OrthoPolynomial::laguerre(spec.N, 2.0 * spec.a - 1.0));
    r.checked = spec.N;
  }
  r.zeros.assign(zeros.rbegin(), zeros.rend());
  r.chain = true;
  r.partial_sums = true;
  Real sum_means(0);
  Real sum_zeros(0);
  for (int k = 0; k < r.checked; ++k) {
    if (!(r.means[k] > r.zeros[k])) r.chain = false;
    if (k + 1 < spec.N && !(r.zeros[k] > r.means[k + 1])) r.chain = false;
    sum_means += r.means[k];
    sum_zeros += r.zeros[k];
    if (sum_means < sum_zeros) r.partial_sums = false;
  }
  return r;
}

}  // namespace rmtgap
