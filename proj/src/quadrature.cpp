#include "rmtgap/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <utility>

namespace rmtgap {

QuadratureSpec QuadratureSpec::for_digits(int digits, QuadratureScheme scheme) {
  QuadratureSpec spec;
  spec.scheme = scheme;
  spec.tolerance = std::pow(10.0, -digits);
  spec.tail_threshold = std::pow(10.0, -(digits + 6));
  return spec;
}

Interval truncate_tails(const RealFunction& f, const Interval& interval, double tail_threshold) {
  Interval out = interval;
  const Real threshold(tail_threshold);
  auto walk = [&](const Real& start, int direction) {
    Real peak = abs(f(start));
    Real previous = peak;
    for (int k = 0; k < 80; ++k) {
      Real x = start + Real(direction) * ldexp(Real(1), k - 2);
      Real v = abs(f(x));
      if (v > peak) peak = v;
      if (v <= threshold * peak && v <= previous) return x;
      previous = v;
    }
    throw QuadratureError("integrand tail does not decay");
  };
  if (interval.lo_infinite && interval.hi_infinite) {
    out.hi = walk(Real(0), +1);
    out.lo = walk(Real(0), -1);
  } else if (interval.hi_infinite) {
    out.hi = walk(interval.lo, +1);
  } else if (interval.lo_infinite) {
    out.lo = walk(interval.hi, -1);
  }
  out.lo_infinite = out.hi_infinite = false;
  return out;
}

namespace {

// tanh-sinh on [a, b] with nested level refinement. Level 0 walks outwards
// from the centre until the weighted integrand is negligible; finer levels
// only fill in nodes inside that window.
QuadratureResult tanh_sinh(const RealFunction& f, const Real& a, const Real& b,
                           const QuadratureSpec& spec) {
  const Real half_pi = ldexp(pi(), -1);
  const Real centre = ldexp(a + b, -1);
  const Real half_width = ldexp(b - a, -1);
  const double u_max = static_cast<double>(working_bits()) * std::log(2.0) + 10.0;
  const double t_max = std::asinh(u_max / (M_PI / 2));
  const Real tol(spec.tolerance);
  const Real abs_tol(spec.absolute_tolerance);

  QuadratureResult result;
  Real l1(0);

  // w(t) f(x(t)) scaled by the half width, at +t and -t.
  auto node_pair = [&](const Real& t, Real& plus, Real& minus) {
    Real u = half_pi * sinh(t);
    Real e2u = exp(ldexp(u, 1));
    Real d = Real(2) / (e2u + Real(1));
    Real chu = cosh(u);
    Real w = half_pi * cosh(t) / (chu * chu) * half_width;
    Real offset = half_width * d;
    Real xp = b - offset;
    Real xm = a + offset;
    // Nodes that round onto an endpoint are still evaluated there; a
    // singular endpoint value is dropped.
    plus = w * f(xp);
    if (!plus.is_finite()) plus = Real(0);
    minus = w * f(xm);
    if (!minus.is_finite()) minus = Real(0);
    result.evaluations += 2;
  };

  // Level 0.
  Real sum = half_pi * half_width * f(centre);
  result.evaluations = 1;
  l1 = abs(sum);
  double reach[2] = {t_max, t_max};
  {
    bool quiet_prev[2] = {false, false};
    bool done[2] = {false, false};
    for (int j = 1; j <= static_cast<int>(t_max) + 1 && !(done[0] && done[1]); ++j) {
      Real plus;
      Real minus;
      node_pair(Real(j), plus, minus);
      Real contributions[2] = {plus, minus};
      for (int side = 0; side < 2; ++side) {
        if (done[side]) continue;
        sum += contributions[side];
        l1 += abs(contributions[side]);
        bool quiet = abs(contributions[side]) <= tol * Real(1e-3) * l1;
        if (quiet && quiet_prev[side]) {
          done[side] = true;
          reach[side] = j;
        }
        quiet_prev[side] = quiet;
      }
    }
  }

  Real h(1);
  Real estimate = sum;
  for (int level = 1; level <= spec.max_levels; ++level) {
    h = ldexp(h, -1);
    Real added(0);
    Real added_abs(0);
    const long count = static_cast<long>(std::ceil(std::max(reach[0], reach[1]) /
                                                   std::ldexp(1.0, -level)));
    for (long m = 1; m <= count; m += 2) {
      Real t = Real(m) * h;
      double td = t.to_double();
      if (td > t_max) break;
      Real plus;
      Real minus;
      node_pair(t, plus, minus);
      if (td <= reach[0] + 1.0) {
        added += plus;
        added_abs += abs(plus);
      }
      if (td <= reach[1] + 1.0) {
        added += minus;
        added_abs += abs(minus);
      }
    }
    sum += added;
    l1 += added_abs;
    Real next = sum * h;
    Real change = abs(next - estimate);
    estimate = next;
    result.levels = level;
    if (level >= 3 && (change <= tol * l1 * h || change <= abs_tol)) {
      result.value = estimate;
      result.error_estimate = change;
      return result;
    }
  }
  throw QuadratureError("double-exponential quadrature did not converge");
}

QuadratureResult composite_gauss_legendre(const RealFunction& f, const Real& a, const Real& b,
                                          const QuadratureSpec& spec) {
  constexpr int kNodes = 32;
  const QuadratureRule& rule = gauss_legendre(kNodes);
  const Real tol(spec.tolerance);
  QuadratureResult result;
  Real previous;
  bool have_previous = false;
  for (int level = 0, panels = 1; level <= spec.max_levels; ++level, panels *= 2) {
    Real total(0);
    Real l1(0);
    Real width = (b - a) / Real(panels);
    for (int p = 0; p < panels; ++p) {
      Real lo = a + Real(p) * width;
      Real mid = lo + ldexp(width, -1);
      Real hw = ldexp(width, -1);
      for (int i = 0; i < kNodes; ++i) {
        Real v = rule.weights[i] * hw * f(mid + hw * rule.nodes[i]);
        total += v;
        l1 += abs(v);
      }
      result.evaluations += kNodes;
    }
    result.levels = level;
    if (have_previous) {
      Real change = abs(total - previous);
      if (change <= tol * l1 || change <= Real(spec.absolute_tolerance)) {
        result.value = total;
        result.error_estimate = change;
        return result;
      }
    }
    previous = total;
    have_previous = true;
  }
  throw QuadratureError("composite Gauss-Legendre quadrature did not converge");
}

QuadratureRule compute_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Real eps = machine_epsilon();
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x(std::cos(M_PI * (i + 0.75) / (n + 0.5)));
    Real dp;
    for (int iter = 0; iter < 200; ++iter) {
      Real p0(1);
      Real p1 = x;
      for (int k = 2; k <= n; ++k) {
        Real p2 = (Real(2 * k - 1) * x * p1 - Real(k - 1) * p0) / Real(k);
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      if (n == 1) p0 = Real(1);
      dp = Real(n) * (x * p1 - p0) / (x * x - Real(1));
      Real dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= eps * Real(4)) break;
    }
    Real w = Real(2) / ((Real(1) - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = Real(0);
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  static std::shared_mutex mutex;
  static std::map<std::pair<int, mpfr_prec_t>, std::unique_ptr<QuadratureRule>> cache;
  const auto key = std::make_pair(n, working_bits());
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto rule = std::make_unique<QuadratureRule>(compute_gauss_legendre(n));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(rule));
  return *it->second;
}

QuadratureRule gauss_legendre_rule(int n, const Real& a, const Real& b) {
  const QuadratureRule& base = gauss_legendre(n);
  QuadratureRule out;
  Real mid = ldexp(a + b, -1);
  Real hw = ldexp(b - a, -1);
  for (int i = 0; i < n; ++i) {
    out.nodes.push_back(mid + hw * base.nodes[i]);
    out.weights.push_back(hw * base.weights[i]);
  }
  return out;
}

QuadratureResult integrate_detailed(const RealFunction& f, const Interval& interval,
                                    const QuadratureSpec& spec) {
  if (!(spec.tolerance > 0)) throw std::invalid_argument("quadrature tolerance must be positive");
  Interval finite = interval;
  if (interval.lo_infinite || interval.hi_infinite) {
    finite = truncate_tails(f, interval, spec.tail_threshold);
  }
  if (finite.lo == finite.hi) return {Real(0), Real(0), 0, 0};
  if (finite.hi < finite.lo) {
    QuadratureResult r = integrate_detailed(f, Interval::finite(finite.hi, finite.lo), spec);
    r.value = -r.value;
    return r;
  }
  // An interval only a few ulps wide leaves no room for interior nodes.
  if (finite.hi - finite.lo <=
      ldexp(machine_epsilon(), 12) * max(abs(finite.lo), abs(finite.hi))) {
    Real mid = ldexp(finite.lo + finite.hi, -1);
    return {f(mid) * (finite.hi - finite.lo), Real(0), 1, 0};
  }
  if (spec.scheme == QuadratureScheme::GaussLegendre) {
    return composite_gauss_legendre(f, finite.lo, finite.hi, spec);
  }
  return tanh_sinh(f, finite.lo, finite.hi, spec);
}

Real integrate(const RealFunction& f, const Interval& interval, const QuadratureSpec& spec) {
  return integrate_detailed(f, interval, spec).value;
}

}  // namespace rmtgap
