#include "rmtgap/special.hpp"

#include <stdexcept>

namespace rmtgap {

namespace {

constexpr int kGuardBits = 32;
constexpr int kMaxTerms = 1'000'000;

// x^a e^{-x} / Gamma(a + shift), evaluated in log space.
Real power_exp_prefactor(const Real& a, const Real& x, int shift) {
  return exp(a * log(x) - x - lgamma(a + Real(shift)));
}

// P(a, x) by the positive-term series; suitable for x < a + 1.
Real lower_series(const Real& a, const Real& x) {
  Real eps = machine_epsilon();
  Real term(1);
  Real sum(1);
  Real denom = a;
  for (int n = 1; n < kMaxTerms; ++n) {
    denom += Real(1);
    term *= x;
    term /= denom;
    sum += term;
    if (abs(term) <= eps * abs(sum)) {
      return power_exp_prefactor(a, x, 1) * sum;
    }
  }
  throw std::runtime_error("incomplete gamma series failed to converge");
}

// Q(a, x) by the Legendre continued fraction (modified Lentz); x >= a + 1.
Real upper_fraction(const Real& a, const Real& x) {
  Real eps = machine_epsilon();
  Real tiny = ldexp(Real(1), -static_cast<long>(8 * working_bits()));
  Real b = x + Real(1) - a;
  Real c = Real(1) / tiny;
  Real d = Real(1) / b;
  Real h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    Real an = -Real(i) * (Real(i) - a);
    b += Real(2);
    d = an * d + b;
    if (abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (abs(c) < tiny) c = tiny;
    d = Real(1) / d;
    Real delta = d * c;
    h *= delta;
    if (abs(delta - Real(1)) <= eps) {
      return power_exp_prefactor(a, x, 0) * h;
    }
  }
  throw std::runtime_error("incomplete gamma continued fraction failed to converge");
}

}  // namespace

IncompleteGamma incomplete_gamma(const Real& a, const Real& x) {
  if (!(a.sign() > 0)) throw std::domain_error("incomplete gamma requires a > 0");
  if (x.sign() < 0) throw std::domain_error("incomplete gamma requires x >= 0");
  const mpfr_prec_t out_bits = working_bits();
  if (x.is_zero()) {
    return {Real(0), Real(1)};
  }
  Real p;
  Real q;
  {
    PrecisionGuard guard(out_bits + kGuardBits);
    Real ag = a;
    Real xg = x;
    mpfr_prec_round(ag.get(), out_bits + kGuardBits, MPFR_RNDN);
    mpfr_prec_round(xg.get(), out_bits + kGuardBits, MPFR_RNDN);
    if (xg < ag + Real(1)) {
      p = lower_series(ag, xg);
      q = Real(1) - p;
    } else {
      q = upper_fraction(ag, xg);
      p = Real(1) - q;
    }
  }
  mpfr_prec_round(p.get(), out_bits, MPFR_RNDN);
  mpfr_prec_round(q.get(), out_bits, MPFR_RNDN);
  return {std::move(p), std::move(q)};
}

Real inc_gamma_upper_reg(const Real& a, const Real& x) { return incomplete_gamma(a, x).upper; }

Real inc_gamma_lower_reg(const Real& a, const Real& x) { return incomplete_gamma(a, x).lower; }

Real erf(const Real& x) {
  if (x.is_zero()) return Real(0);
  Real p = incomplete_gamma(Real(0.5), x * x).lower;
  return x.sign() < 0 ? -p : p;
}

Real erfc(const Real& x) {
  if (x.is_zero()) return Real(1);
  IncompleteGamma g = incomplete_gamma(Real(0.5), x * x);
  if (x.sign() > 0) return g.upper;
  return Real(1) + g.lower;
}

}  // namespace rmtgap
