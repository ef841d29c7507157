#include "rmtgap/kernels.hpp"

#include <stdexcept>

#include "rmtgap/special.hpp"

namespace rmtgap {

namespace {

// Gamma(m/2) for m = 0..count-1 (entry 0 left at zero).
std::vector<Real> half_gamma_table(int count) {
  std::vector<Real> g(count, Real(0));
  if (count > 1) g[1] = sqrt(pi());
  if (count > 2) g[2] = Real(1);
  for (int m = 3; m < count; ++m) g[m] = g[m - 2] * ldexp(Real(m - 2), -1);
  return g;
}

// 2^{-m/2} for m = 0..count-1.
std::vector<Real> half_power_table(int count) {
  std::vector<Real> p(count);
  Real r = sqrt(Real(2)) / Real(2);
  for (int m = 0; m < count; ++m) {
    p[m] = (m % 2 == 0) ? ldexp(Real(1), -m / 2) : ldexp(r, -(m / 2));
  }
  return p;
}

void fill_gaussian_psi(int top, const Real& x, std::vector<Real>& psi,
                       std::vector<Real>& psi_tilde, const std::vector<Real>& gamma_half) {
  psi.assign(top + 1, Real(0));
  psi_tilde.assign(top + 1, Real(0));
  const Real root2 = sqrt(Real(2));
  const Real z = x / root2;
  if (top >= 1) {
    psi[1] = (z.sign() < 0 ? erfc(-z) : Real(1) + erf(z)) / root2;
    psi_tilde[1] = erfc(z) / root2;
  }
  const Real e = exp(-(x * x) / Real(2));
  Real xp(1);  // x^{j-2}
  for (int j = 2; j <= top; ++j) {
    if (j > 2) xp *= x;
    Real term = xp * e / gamma_half[j];
    psi[j] = ldexp(psi[j - 2], 1) - term;
    psi_tilde[j] = ldexp(psi_tilde[j - 2], 1) + term;
  }
}

}  // namespace

Real gaussian_u(int j) {
  if (j % 2 == 0) return Real(0);
  return ldexp(sqrt(Real(2)), (j - 1) / 2);
}

GaussianPsi build_gaussian_psi(int N, const Real& x) {
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  GaussianPsi out;
  out.x = x;
  std::vector<Real> gh = half_gamma_table(2 * N + 3);
  fill_gaussian_psi(2 * N, x, out.psi, out.psi_tilde, gh);
  fill_gaussian_psi(2 * N, sqrt(Real(2)) * x, out.psi2, out.psi2_tilde, gh);
  return out;
}

PairIntegrals build_gaussian_I(int N, const GaussianPsi& p) {
  PairIntegrals out{RealMatrix(N + 1, N + 1, Real(0)), RealMatrix(N + 1, N + 1, Real(0))};
  RealMatrix& I = out.I;
  RealMatrix& T = out.I_tilde;
  const Real& x = p.x;
  std::vector<Real> gh = half_gamma_table(2 * N + 3);
  std::vector<Real> pw = half_power_table(2 * N + 1);
  const Real e = exp(-(x * x) / Real(2));
  std::vector<Real> xe(N + 1);  // x^j e^{-x^2/2}
  xe[0] = e;
  for (int j = 1; j <= N; ++j) xe[j] = xe[j - 1] * x;

  // I(j+2,k) from I(j,k) at fixed column k.
  auto raise = [&](int j, int k) {
    const Real& g = gh[j + 2];  // Gamma(j/2 + 1)
    Real local = xe[j] / g;
    Real coef = pw[j + k] * gh[j + k] / (g * gh[k]);
    I(j + 2, k) = ldexp(I(j, k), 1) - local * p.psi[k] + coef * p.psi2[j + k];
    T(j + 2, k) = ldexp(T(j, k), 1) + local * p.psi_tilde[k] - coef * p.psi2_tilde[j + k];
  };

  if (N >= 1) {
    I(1, 1) = ldexp(p.psi[1] * p.psi[1], -1);
    T(1, 1) = ldexp(p.psi_tilde[1] * p.psi_tilde[1], -1);
  }
  for (int j = 0; j + 2 <= N; ++j) raise(j, 1);
  for (int k = 2; k <= N; ++k) {
    I(1, k) = p.psi[1] * p.psi[k] - I(k, 1);
    T(1, k) = p.psi_tilde[1] * p.psi_tilde[k] - T(k, 1);
    for (int j = 0; j + 2 <= N; ++j) raise(j, k);
  }
  return out;
}

LaguerrePsi build_laguerre_psi(int N, const Real& a, const Real& x) {
  if (!(a > Real(-1))) throw std::domain_error("Laguerre parameter must exceed -1");
  if (x.sign() < 0) throw std::domain_error("Laguerre threshold must be non-negative");
  LaguerrePsi out;
  out.x = x;
  out.a = a;
  out.psi.assign(N + 1, Real(0));
  out.psi_tilde.assign(N + 1, Real(0));
  out.psi2.assign(2 * N + 1, Real(0));
  out.psi2_tilde.assign(2 * N + 1, Real(0));
  for (int j = 1; j <= N; ++j) {
    IncompleteGamma g = incomplete_gamma(a + Real(j), x);
    out.psi[j] = std::move(g.lower);
    out.psi_tilde[j] = std::move(g.upper);
  }
  const Real x2 = ldexp(x, 1);
  for (int m = 2; m <= 2 * N; ++m) {
    IncompleteGamma g = incomplete_gamma(ldexp(a, 1) + Real(m), x2);
    out.psi2[m] = std::move(g.lower);
    out.psi2_tilde[m] = std::move(g.upper);
  }
  return out;
}

namespace {

struct LaguerreConstants {
  std::vector<Real> gamma_a;   // Gamma(a + j), j = 0..N+1 (entry 0 unused)
  std::vector<Real> gamma_2a;  // Gamma(2a + m), m = 0..2N
  std::vector<Real> pow2_2a;   // 2^{-(2a + m)}
  std::vector<Real> local;     // x^{a+j} e^{-x} / Gamma(a + j + 1), j = 0..N
};

LaguerreConstants laguerre_constants(int N, const LaguerrePsi& p) {
  LaguerreConstants c;
  const Real& a = p.a;
  c.gamma_a.assign(N + 2, Real(0));
  for (int j = 1; j <= N + 1; ++j) c.gamma_a[j] = tgamma(a + Real(j));
  c.gamma_2a.assign(2 * N + 1, Real(0));
  c.pow2_2a.assign(2 * N + 1, Real(0));
  for (int m = 2; m <= 2 * N; ++m) {
    c.gamma_2a[m] = tgamma(ldexp(a, 1) + Real(m));
    c.pow2_2a[m] = pow(Real(2), -(ldexp(a, 1) + Real(m)));
  }
  c.local.assign(N + 1, Real(0));
  if (!p.x.is_zero()) {
    for (int j = 1; j <= N; ++j) {
      c.local[j] = exp((a + Real(j)) * log(p.x) - p.x) / c.gamma_a[j + 1];
    }
  }
  return c;
}

}  // namespace

PairIntegrals build_laguerre_I(int N, const LaguerrePsi& p) {
  PairIntegrals out{RealMatrix(N + 1, N + 1, Real(0)), RealMatrix(N + 1, N + 1, Real(0))};
  RealMatrix& I = out.I;
  RealMatrix& T = out.I_tilde;
  LaguerreConstants c = laguerre_constants(N, p);

  // I(a+j+1, a+k) from I(a+j, a+k).
  auto raise = [&](int j, int k) {
    Real coef = c.pow2_2a[j + k] * c.gamma_2a[j + k] / (c.gamma_a[j + 1] * c.gamma_a[k]);
    I(j + 1, k) = I(j, k) - c.local[j] * p.psi[k] + coef * p.psi2[j + k];
    T(j + 1, k) = T(j, k) + c.local[j] * p.psi_tilde[k] - coef * p.psi2_tilde[j + k];
  };

  I(1, 1) = ldexp(p.psi[1] * p.psi[1], -1);
  T(1, 1) = ldexp(p.psi_tilde[1] * p.psi_tilde[1], -1);
  for (int j = 1; j + 1 <= N; ++j) raise(j, 1);
  for (int k = 2; k <= N; ++k) {
    I(1, k) = p.psi[1] * p.psi[k] - I(k, 1);
    T(1, k) = p.psi_tilde[1] * p.psi_tilde[k] - T(k, 1);
    for (int j = 1; j + 1 <= N; ++j) raise(j, k);
  }
  return out;
}

void laguerre_H_direct(int N, const LaguerrePsi& p, RealMatrix& H0, RealMatrix& H2) {
  LaguerreConstants c = laguerre_constants(N, p);
  H0 = RealMatrix(N, N, Real(0));
  H2 = RealMatrix(N, N, Real(0));
  for (int j = 1; j <= N; ++j) {
    Real h0(0);
    Real h2(0);
    for (int k = j; k < N; ++k) {
      Real coef = ldexp(c.pow2_2a[j + k], 1) * c.gamma_2a[j + k] /
                  (c.gamma_a[k + 1] * c.gamma_a[j]);
      h0 += coef * p.psi2[j + k] - c.local[k] * p.psi[j];
      h2 += coef * p.psi2_tilde[j + k] - c.local[k] * p.psi_tilde[j];
      H0(j - 1, k) = h0;
      H0(k, j - 1) = -h0;
      H2(j - 1, k) = h2;
      H2(k, j - 1) = -h2;
    }
  }
}

Real ensemble_prefactor(const EnsembleSpec& spec) {
  spec.validate();
  const int N = spec.N;
  if (spec.is_goe()) {
    // 2^{-N/2}, both parities.
    if (N % 2 == 0) return ldexp(Real(1), -N / 2);
    return ldexp(sqrt(Real(2)), -(N + 1) / 2);
  }
  const Real a(spec.a);
  const Real root_pi = sqrt(pi());
  std::vector<Real> gh = half_gamma_table(N + 2);
  Real prod(1);
  for (int j = 1; j <= N; ++j) {
    prod *= root_pi * tgamma(a + Real(j)) / (gh[j] * tgamma(a + ldexp(Real(j + 1), -1)));
  }
  return prod;
}

PfaffianIngredients assemble_ingredients(const EnsembleSpec& spec, const Real& s) {
  spec.validate();
  const int N = spec.N;
  PfaffianIngredients out;
  out.spec = spec;
  out.s = s;
  out.H0 = RealMatrix(N, N, Real(0));
  out.H1 = RealMatrix(N, N, Real(0));
  out.H2 = RealMatrix(N, N, Real(0));
  out.nu_psi.assign(N + 1, Real(0));
  out.nu_psi_tilde.assign(N + 1, Real(0));
  out.prefactor = ensemble_prefactor(spec);

  if (spec.is_goe()) {
    GaussianPsi p = build_gaussian_psi(N, s);
    PairIntegrals t = build_gaussian_I(N, p);
    std::vector<Real> u(N + 1);
    for (int j = 1; j <= N; ++j) u[j] = gaussian_u(j);
    for (int j = 1; j <= N; ++j) {
      out.nu_psi[j] = p.psi[j];
      out.nu_psi_tilde[j] = p.psi_tilde[j];
      for (int k = j + 1; k <= N; ++k) {
        Real h0 = t.I(k, j) - t.I(j, k);
        Real h1 = u[k] * p.psi[j] - u[j] * p.psi[k];
        Real h2 = t.I_tilde(j, k) - t.I_tilde(k, j);
        out.H0(k - 1, j - 1) = -h0;
        out.H1(k - 1, j - 1) = -h1;
        out.H2(k - 1, j - 1) = -h2;
        out.H0(j - 1, k - 1) = std::move(h0);
        out.H1(j - 1, k - 1) = std::move(h1);
        out.H2(j - 1, k - 1) = std::move(h2);
      }
    }
    return out;
  }

  if (s.sign() < 0) throw std::domain_error("LOE threshold must be non-negative");
  LaguerrePsi p = build_laguerre_psi(N, Real(spec.a), ldexp(s, -1));
  PairIntegrals t = build_laguerre_I(N, p);
  for (int j = 1; j <= N; ++j) {
    out.nu_psi[j] = p.psi[j];
    out.nu_psi_tilde[j] = p.psi_tilde[j];
    for (int k = j + 1; k <= N; ++k) {
      Real h0 = t.I(k, j) - t.I(j, k);
      Real h1 = p.psi_tilde[k] * p.psi[j] - p.psi_tilde[j] * p.psi[k];
      Real h2 = t.I_tilde(j, k) - t.I_tilde(k, j);
      out.H0(k - 1, j - 1) = -h0;
      out.H1(k - 1, j - 1) = -h1;
      out.H2(k - 1, j - 1) = -h2;
      out.H0(j - 1, k - 1) = std::move(h0);
      out.H1(j - 1, k - 1) = std::move(h1);
      out.H2(j - 1, k - 1) = std::move(h2);
    }
  }
  return out;
}

}  // namespace rmtgap
