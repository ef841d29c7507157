#include "rmtgap/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmtgap {

namespace {

// det(x - T_k) for k = n and its derivative, by the three-term recurrence.
// The pair is rescaled as it goes so only the ratio p/p' is meaningful.
std::pair<Real, Real> char_poly(const std::vector<Real>& diag, const std::vector<Real>& off,
                                const Real& x) {
  Real p0(1);
  Real d0(0);
  Real p1 = x - diag[0];
  Real d1(1);
  for (std::size_t k = 1; k < diag.size(); ++k) {
    Real e2 = off[k - 1] * off[k - 1];
    Real p2 = (x - diag[k]) * p1 - e2 * p0;
    Real d2 = p1 + (x - diag[k]) * d1 - e2 * d0;
    p0 = std::move(p1);
    d0 = std::move(d1);
    p1 = std::move(p2);
    d1 = std::move(d2);
    long e = p1.is_zero() ? 0 : p1.exponent2();
    if (e > 512 || e < -512) {
      p0 = ldexp(p0, -e);
      d0 = ldexp(d0, -e);
      p1 = ldexp(p1, -e);
      d1 = ldexp(d1, -e);
    }
  }
  return {p1, d1};
}

struct JacobiMatrix {
  std::vector<Real> diag;
  std::vector<Real> off;
};

JacobiMatrix jacobi_matrix(const OrthoPolynomial& p) {
  if (p.degree < 1) throw std::invalid_argument("polynomial degree must be at least 1");
  JacobiMatrix m;
  const int n = p.degree;
  if (p.family == OrthoFamily::Hermite) {
    m.diag.assign(n, Real(0));
    for (int j = 1; j < n; ++j) m.off.push_back(sqrt(Real(j) / Real(2)));
  } else {
    if (!(p.alpha > -1.0)) throw std::invalid_argument("Laguerre parameter must exceed -1");
    const Real alpha(p.alpha);
    for (int j = 0; j < n; ++j) m.diag.push_back(Real(2 * j + 1) + alpha);
    for (int j = 1; j < n; ++j) m.off.push_back(sqrt(Real(j) * (Real(j) + alpha)));
  }
  return m;
}

}  // namespace

std::vector<Real> tridiagonal_eigenvalues(const std::vector<Real>& diag,
                                          const std::vector<Real>& off) {
  const std::size_t n = diag.size();
  if (n == 0) return {};
  if (off.size() + 1 != n) throw std::invalid_argument("off-diagonal must have length n-1");
  std::vector<double> dd(n);
  std::vector<double> od(n - 1);
  double radius = 0;
  for (std::size_t i = 0; i < n; ++i) {
    dd[i] = diag[i].to_double();
    double r = std::abs(dd[i]);
    if (i > 0) r += std::abs(off[i - 1].to_double());
    if (i + 1 < n) r += std::abs(off[i].to_double());
    radius = std::max(radius, r);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) od[i] = off[i].to_double();
  radius = radius * (1 + 1e-12) + 1e-300;

  std::vector<Real> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k-th eigenvalue: smallest x with count(< x) > k.
    double lo = -radius;
    double hi = radius;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
      double mid = 0.5 * (lo + hi);
      if (sturm_count(dd, od, mid) > static_cast<int>(k)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    Real rlo(lo);
    Real rhi(hi);
    // Widen until the bracket provably holds exactly this eigenvalue.
    Real pad(1e-13 * std::max(1.0, std::abs(lo)));
    for (int it = 0; it < 60; ++it) {
      if (sturm_count(diag, off, rlo) <= static_cast<int>(k) &&
          sturm_count(diag, off, rhi) > static_cast<int>(k)) {
        break;
      }
      rlo -= pad;
      rhi += pad;
      pad *= Real(2);
    }
    Real x = ldexp(rlo + rhi, -1);
    const Real eps = machine_epsilon();
    const Real floor_step = eps * Real(radius);
    for (int it = 0; it < 400; ++it) {
      auto [p, dp] = char_poly(diag, off, x);
      if (p.is_zero()) break;
      Real width = rhi - rlo;
      bool newton = !dp.is_zero();
      Real delta = newton ? p / dp : Real(0);
      Real next = x - delta;
      if (!newton || next < rlo - width || next > rhi + width) {
        newton = false;
        next = ldexp(rlo + rhi, -1);
      }
      if (next >= rlo && next <= rhi) {
        if (sturm_count(diag, off, next) > static_cast<int>(k)) {
          rhi = next;
        } else {
          rlo = next;
        }
      }
      x = std::move(next);
      if (newton && abs(delta) <= Real(4) * max(eps * abs(x), floor_step)) break;
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::pair<Real, Real> orthopoly_value(const OrthoPolynomial& p, const Real& x) {
  JacobiMatrix m = jacobi_matrix(p);
  Real p0(1);
  Real d0(0);
  Real p1 = x - m.diag[0];
  Real d1(1);
  for (std::size_t k = 1; k < m.diag.size(); ++k) {
    Real e2 = m.off[k - 1] * m.off[k - 1];
    Real p2 = (x - m.diag[k]) * p1 - e2 * p0;
    Real d2 = p1 + (x - m.diag[k]) * d1 - e2 * d0;
    p0 = std::move(p1);
    d0 = std::move(d1);
    p1 = std::move(p2);
    d1 = std::move(d2);
  }
  return {p1, d1};
}

std::vector<Real> orthopoly_zeros(const OrthoPolynomial& p) {
  JacobiMatrix m = jacobi_matrix(p);
  return tridiagonal_eigenvalues(m.diag, m.off);
}

}  // namespace rmtgap
