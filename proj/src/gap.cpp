#include "rmtgap/gap.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "rmtgap/parallel.hpp"
#include "rmtgap/pfaffian.hpp"

namespace rmtgap {

namespace {

std::mutex diagnostics_mutex;
GapDiagnostics diagnostics;

void record(const GapDistribution& d) {
  std::lock_guard<std::mutex> lock(diagnostics_mutex);
  diagnostics.max_bits = std::max(diagnostics.max_bits, d.bits_used);
  diagnostics.max_residual = std::max(diagnostics.max_residual, d.residual.to_double());
  diagnostics.escalations = std::max(diagnostics.escalations, d.escalations);
  ++diagnostics.calls;
}

ComplexMatrix combine(const PfaffianIngredients& ing, const Complex& zeta) {
  const int N = ing.spec.N;
  const Complex zeta2 = zeta * zeta;
  const bool real_zeta = zeta.im.is_zero();
  ComplexMatrix A(N, N, Complex(0));
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      Complex v;
      if (real_zeta) {
        v = Complex(ing.H0(i, j) + zeta.re * ing.H1(i, j) + zeta2.re * ing.H2(i, j));
      } else {
        v = Complex(ing.H0(i, j)) + ing.H1(i, j) * zeta + ing.H2(i, j) * zeta2;
      }
      A(j, i) = -v;
      A(i, j) = std::move(v);
    }
  }
  if (N % 2 == 0) return A;
  std::vector<Complex> nu(N + 1, Complex(0));
  for (int j = 1; j <= N; ++j) nu[j - 1] = Complex(ing.nu_psi[j]) + ing.nu_psi_tilde[j] * zeta;
  return border_with_vector(A, nu);
}

Real pow10(int e) { return e >= 0 ? pow(Real(10), static_cast<long>(e)) : pow10_neg(-e); }

}  // namespace

Complex raw_pfaffian(const PfaffianIngredients& ing, const Complex& zeta) {
  return pfaffian(combine(ing, zeta));
}

GeneratingFunctionSample xi(const EnsembleSpec& spec, const Real& s, const Complex& zeta,
                            const PrecisionContext& ctx) {
  ctx.validate();
  spec.validate();
  PrecisionGuard guard(ctx.bits);
  PfaffianIngredients ing = assemble_ingredients(spec, s);
  Complex value = raw_pfaffian(ing, zeta);
  if (ing.odd()) {
    value = value / raw_pfaffian(ing, Complex(1));
  } else {
    value = ing.prefactor * value;
  }
  return {spec, s, zeta, std::move(value)};
}

std::vector<Real> fourier_fold(int N, const std::vector<Complex>& v) {
  const long L = N + 1;
  const int pairs = N / 2;  // l = 1..pairs appear with their conjugates
  std::vector<Complex> roots(L);
  for (long m = 0; m < L; ++m) roots[m] = root_of_unity(m, L);
  std::vector<Real> E(N + 1);
  for (int k = 0; k <= N; ++k) {
    Real acc = v[0].re;
    Real folded(0);
    for (int l = 1; l <= pairs; ++l) {
      // Re(e^{-2 pi i k l / L} Xi_l)
      const Complex& w = roots[(L - (static_cast<long>(k) * l) % L) % L];
      folded += w.re * v[l].re - w.im * v[l].im;
    }
    acc += ldexp(folded, 1);
    if (N % 2 == 1) {
      const Real& minus_one = v[(N + 1) / 2].re;
      if (k % 2 == 0) {
        acc += minus_one;
      } else {
        acc -= minus_one;
      }
    }
    E[k] = acc / Real(L);
  }
  return E;
}

GapDistribution gap_distribution_at_bits(const EnsembleSpec& spec, const Real& s, int bits,
                                         int workers) {
  spec.validate();
  PrecisionGuard guard(bits);
  const int N = spec.N;
  PfaffianIngredients ing = assemble_ingredients(spec, s);
  const int count = (N + 1) / 2 + 1;  // l = 0..floor((N+1)/2)
  std::vector<Complex> raw(count);
  parallel_for(count, workers, [&](std::size_t l) {
    raw[l] = raw_pfaffian(ing, root_of_unity(static_cast<long>(l), N + 1));
  });
  GapDistribution out;
  out.spec = spec;
  out.s = s;
  out.bits_used = bits;
  Complex analytic_one = ing.prefactor * raw[0];
  out.normalization_defect = abs(analytic_one - Complex(1));
  std::vector<Complex> values(count);
  const Complex scale = ing.odd() ? Complex(1) / raw[0] : Complex(ing.prefactor);
  for (int l = 0; l < count; ++l) values[l] = scale * raw[l];
  out.E = fourier_fold(N, values);
  Real total(0);
  Real negative(0);
  for (const Real& e : out.E) {
    total += e;
    if (e.sign() < 0) negative = max(negative, -e);
  }
  out.residual = max(out.normalization_defect, max(abs(total - Real(1)), negative));
  return out;
}

GapDiagnostics gap_diagnostics() {
  std::lock_guard<std::mutex> lock(diagnostics_mutex);
  return diagnostics;
}

void reset_gap_diagnostics() {
  std::lock_guard<std::mutex> lock(diagnostics_mutex);
  diagnostics = GapDiagnostics{};
}

GapDistribution gap_distribution(const EnsembleSpec& spec, const Real& s,
                                 const PrecisionContext& ctx) {
  ctx.validate();
  spec.validate();
  if (spec.is_loe() && s.sign() < 0) throw std::domain_error("LOE threshold must be non-negative");
  int bits = ctx.bits;
  GapDistribution best;
  for (int attempt = 0;; ++attempt) {
    best = gap_distribution_at_bits(spec, s, bits, ctx.workers);
    best.escalations = attempt;
    PrecisionGuard guard(bits);
    if (best.residual <= pow10(-(ctx.target_digits + 2))) break;
    if (attempt >= ctx.max_escalations) {
      if (best.residual <= pow10(-ctx.target_digits)) break;
      std::ostringstream os;
      os << "normalization residual " << best.residual.to_double() << " at " << bits
         << " bits exceeds 1e-" << ctx.target_digits << " after " << attempt << " escalations";
      throw PrecisionExhausted(os.str(), best.residual.to_double(), bits);
    }
    bits *= 2;
  }
  PrecisionGuard guard(best.bits_used);
  Real total(0);
  for (Real& e : best.E) {
    if (e.sign() < 0) e = Real(0);
    total += e;
  }
  for (Real& e : best.E) {
    e /= total;
    if (e > Real(1)) e = Real(1);
  }
  record(best);
  return best;
}

std::vector<XiTracePoint> trace_xi_curve(const EnsembleSpec& spec, const Complex& zeta,
                                         const Real& s_from, const Real& s_to, int steps,
                                         const PrecisionContext& ctx) {
  ctx.validate();
  spec.validate();
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  PrecisionGuard guard(ctx.bits);
  std::vector<XiTracePoint> out(steps + 1);
  parallel_for(out.size(), ctx.workers, [&](std::size_t i) {
    Real s = s_from + (s_to - s_from) * Real(static_cast<long>(i)) / Real(steps);
    PfaffianIngredients ing = assemble_ingredients(spec, s);
    ComplexMatrix A = combine(ing, zeta);
    Complex pf = pfaffian(A);
    Complex det = determinant(A);
    Complex scale = ing.odd() ? Complex(1) / raw_pfaffian(ing, Complex(1)) : Complex(ing.prefactor);
    out[i] = {s, scale * pf, scale * scale * det};
  });
  return out;
}

LogGapResult log_empty_probability(const EnsembleSpec& spec, const Real& s,
                                   const PrecisionContext& ctx) {
  ctx.validate();
  spec.validate();
  auto attempt = [&](int bits) {
    PrecisionGuard guard(bits);
    PfaffianIngredients ing = assemble_ingredients(spec, s);
    Complex v = raw_pfaffian(ing, Complex(0));
    Real value = ing.odd() ? v.re / raw_pfaffian(ing, Complex(1)).re : ing.prefactor * v.re;
    if (!(value.sign() > 0)) return Real(std::nan(""));
    return log(value);
  };
  int bits = ctx.bits;
  Real first = attempt(bits);
  // Relative accuracy of a tiny Pfaffian costs about log2(1/E) extra bits.
  if (first.is_finite()) {
    bits = std::max(bits, ctx.bits + static_cast<int>(-first.to_double() / std::log(2.0)) + 64);
  } else {
    bits *= 2;
  }
  const double tol = std::pow(10.0, -ctx.target_digits);
  for (int round = 0; round <= ctx.max_escalations + 2; ++round) {
    Real a = attempt(bits);
    Real b = attempt(bits + 64);
    if (a.is_finite() && b.is_finite() && std::abs((a - b).to_double()) <= tol) {
      return {b, bits + 64};
    }
    bits *= 2;
  }
  throw PrecisionExhausted("log E(0) did not stabilize", 1.0, bits);
}

}  // namespace rmtgap
