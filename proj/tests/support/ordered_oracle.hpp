#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "rmtgap/quadrature.hpp"

namespace rmtgap_oracle {

using namespace rmtgap;

// Brute-force E_N(k; (s, inf)) for small N in double precision: nested
// Gauss-Legendre over the ordered region x_1 < ... < x_N, with the lowest
// N - k variables below s and the rest above. Normalized by the sum over k,
// so no partition function is needed.
struct OrderedOracle {
  int N;
  std::function<double(double)> weight;
  double support_lo;
  double support_hi;
  int nodes = 48;

  std::vector<double> gl_x;
  std::vector<double> gl_w;

  void init() {
    PrecisionGuard guard(64);
    const QuadratureRule& r = gauss_legendre(nodes);
    for (int i = 0; i < nodes; ++i) {
      gl_x.push_back(r.nodes[i].to_double());
      gl_w.push_back(r.weights[i].to_double());
    }
  }

  double integrand(const std::vector<double>& x) const {
    double v = 1.0;
    for (int i = 0; i < N; ++i) {
      v *= weight(x[i]);
      for (int j = i + 1; j < N; ++j) v *= x[j] - x[i];
    }
    return v;
  }

  double nest(int i, int below, double s, double prev, std::vector<double>& x) const {
    if (i == N) return integrand(x);
    const bool lower_block = i < below;
    double lo = lower_block ? support_lo : s;
    double hi = lower_block ? s : support_hi;
    if (i > 0 && i != below) lo = prev;
    if (!(hi > lo)) return 0.0;
    const double mid = 0.5 * (lo + hi);
    const double hw = 0.5 * (hi - lo);
    double sum = 0.0;
    for (int q = 0; q < nodes; ++q) {
      x[i] = mid + hw * gl_x[q];
      sum += gl_w[q] * hw * nest(i + 1, below, s, x[i], x);
    }
    return sum;
  }

  std::vector<double> distribution(double s) const {
    std::vector<double> E(N + 1);
    std::vector<double> x(N);
    double total = 0.0;
    for (int k = 0; k <= N; ++k) {
      E[k] = nest(0, N - k, s, 0.0, x);
      total += E[k];
    }
    for (double& e : E) e /= total;
    return E;
  }
};

inline OrderedOracle goe_oracle(int N) {
  OrderedOracle o{N, [](double x) { return std::exp(-0.5 * x * x); }, -12.0, 12.0};
  o.init();
  return o;
}

inline OrderedOracle loe_oracle(int N, double a) {
  OrderedOracle o{N, [a](double x) { return std::pow(x, a) * std::exp(-0.5 * x); }, 0.0, 110.0,
                  64};
  o.init();
  return o;
}

}  // namespace rmtgap_oracle
