#include "rmtgap/calculus.hpp"

#include <string>

namespace rmtgap {

std::vector<Real> fornberg_weights(const Real& x0, const std::vector<Real>& nodes, int order) {
  const int n = static_cast<int>(nodes.size());
  if (n == 0 || order < 0 || order >= n) {
    throw std::invalid_argument("fornberg_weights: need more nodes than the derivative order");
  }
  // c[j][m]: weight of node j for the m-th derivative.
  std::vector<std::vector<Real>> c(n, std::vector<Real>(order + 1, Real(0)));
  Real c1(1);
  Real c4 = nodes[0] - x0;
  c[0][0] = Real(1);
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    Real c2(1);
    Real c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      Real c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (Real(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - Real(k) * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<Real> out;
  out.reserve(n);
  for (int j = 0; j < n; ++j) out.push_back(c[j][order]);
  return out;
}

std::vector<Real> differentiate_grid(const std::vector<Real>& s, const std::vector<Real>& F,
                                     int width) {
  if (width != 3 && width != 5 && width != 7) {
    throw std::invalid_argument("stencil width must be 3, 5 or 7");
  }
  const std::size_t n = s.size();
  if (F.size() != n) throw std::invalid_argument("grid and samples differ in length");
  if (n < static_cast<std::size_t>(width)) {
    throw std::invalid_argument("grid has " + std::to_string(n) + " points, stencil needs " +
                                std::to_string(width));
  }
  const Real h = (s[n - 1] - s[0]) / Real(static_cast<long>(n - 1));
  if (!(h > 0)) throw std::invalid_argument("grid must be ascending");
  for (std::size_t i = 1; i < n; ++i) {
    if (abs(s[i] - s[i - 1] - h) > h * Real(1e-9)) {
      throw std::invalid_argument("grid is not uniform");
    }
  }
  const int half = width / 2;
  // Weights in units of the step: node offsets are integers.
  std::vector<std::vector<Real>> table(width);
  for (int start = 0; start < width; ++start) {
    // Evaluation point sits at offset `start` within the stencil [0, width).
    std::vector<Real> nodes;
    for (int j = 0; j < width; ++j) nodes.emplace_back(j - start);
    table[start] = fornberg_weights(Real(0), nodes, 1);
  }
  std::vector<Real> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t first;
    int pos;
    if (i < static_cast<std::size_t>(half)) {
      first = 0;
      pos = static_cast<int>(i);
    } else if (i + half >= n) {
      first = n - width;
      pos = static_cast<int>(i - first);
    } else {
      first = i - half;
      pos = half;
    }
    Real acc(0);
    for (int j = 0; j < width; ++j) acc += table[pos][j] * F[first + j];
    out[i] = acc / h;
  }
  return out;
}

Real fd_step(const Real& extent) {
  return ldexp(abs(extent), -static_cast<long>(working_bits() / 3));
}

Real derivative_at(const RealFunction& F, const Real& x, const Real& h, int width) {
  if (width != 3 && width != 5 && width != 7) {
    throw std::invalid_argument("stencil width must be 3, 5 or 7");
  }
  const int half = width / 2;
  std::vector<Real> nodes;
  for (int j = -half; j <= half; ++j) nodes.emplace_back(j);
  std::vector<Real> w = fornberg_weights(Real(0), nodes, 1);
  Real acc(0);
  for (int j = -half; j <= half; ++j) {
    if (j == 0) continue;
    acc += w[j + half] * F(x + Real(j) * h);
  }
  return acc / h;
}

Real find_root(const RealFunction& g, Real lo, Real hi, const Real& tol) {
  if (hi < lo) std::swap(lo, hi);
  Real glo = g(lo);
  Real ghi = g(hi);
  if (glo.is_zero()) return lo;
  if (ghi.is_zero()) return hi;
  if (glo.sign() == ghi.sign()) throw RootError("no sign change in bracket");
  const Real eps = machine_epsilon();
  int side = 0;
  for (int iter = 0; iter < 20 * static_cast<int>(working_bits()); ++iter) {
    Real width = hi - lo;
    Real goal = tol.is_zero() ? Real(4) * eps * max(abs(lo), abs(hi)) : tol;
    if (goal.is_zero()) goal = eps;
    if (width <= goal) break;
    // Illinois false position; fall back to bisection when it stalls.
    Real x = (iter % 4 == 3) ? ldexp(lo + hi, -1) : (lo * ghi - hi * glo) / (ghi - glo);
    if (!(x > lo && x < hi)) x = ldexp(lo + hi, -1);
    Real gx = g(x);
    if (gx.is_zero()) return x;
    if (gx.sign() == glo.sign()) {
      lo = x;
      glo = gx;
      if (side == -1) ghi = ldexp(ghi, -1);
      side = -1;
    } else {
      hi = x;
      ghi = gx;
      if (side == 1) glo = ldexp(glo, -1);
      side = 1;
    }
  }
  return ldexp(lo + hi, -1);
}

}  // namespace rmtgap
