#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "rmtgap/ensemble.hpp"
#include "rmtgap/real.hpp"

namespace rmtgap {

/// F_N(k; s) = sum_{l<k} E_N(l; (s, inf)), the CDF of the k-th largest
/// eigenvalue (k = 1 is the largest). Requires 1 <= k <= N.
Real marginal_cdf_at(const EnsembleSpec& spec, int k, const Real& s, const PrecisionContext& ctx);
std::vector<Real> marginal_cdf(const EnsembleSpec& spec, int k, const std::vector<Real>& s_grid,
                               const PrecisionContext& ctx);

/// Density f_N(k; s) by a local finite-difference stencil of step
/// 2^(-bits/3) * extent. F is evaluated with bits/3 extra bits so the
/// difference quotient keeps the working precision. Near the LOE hard edge
/// the stencil becomes one-sided.
Real marginal_pdf_at(const EnsembleSpec& spec, int k, const Real& s, const Real& extent,
                     const PrecisionContext& ctx, int width = 5);

struct MarginalGrid {
  EnsembleSpec spec;
  int k = 1;
  std::vector<Real> s;
  std::vector<Real> F;
  std::vector<Real> f;
};

/// F and f on an ascending grid. Negative density noise is clamped to 0.
MarginalGrid marginal_pdf(const EnsembleSpec& spec, int k, const std::vector<Real>& s_grid,
                          const PrecisionContext& ctx, int width = 5);

/// `steps` + 1 equally spaced points from lo to hi.
std::vector<Real> uniform_grid(const Real& lo, const Real& hi, int steps);

struct SupportWindow {
  Real lo;
  Real hi;
};

class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Expands [lo, hi] geometrically until F_N(k_low; lo) < eps and
/// F_N(k_high; hi) > 1 - eps, eps = 10^-(digits+4). Pass k_low = k_high = k
/// for a single order statistic; (N, 1) covers every k.
SupportWindow support_window(const EnsembleSpec& spec, int k_high, int k_low,
                             const PrecisionContext& ctx);

struct CumulantSummary {
  EnsembleSpec spec;
  int k = 1;
  Real mu;
  Real sigma;
  /// kappa_p / sigma^p for p = 3..6.
  std::array<Real, 4> gamma;
};

/// Mean, standard deviation and scaled cumulants of the k-th largest
/// eigenvalue. Moments come from the tail integrals
/// E (X-c)^p = int_c^hi p (t-c)^(p-1) P(X > t) dt - int_lo^c p (t-c)^(p-1) P(X <= t) dt.
CumulantSummary cumulants(const EnsembleSpec& spec, int k, const PrecisionContext& ctx);

/// Same for every k = 1..N over one shared window, reusing each gap
/// distribution across k.
std::vector<CumulantSummary> cumulant_table(const EnsembleSpec& spec, const PrecisionContext& ctx);

/// Only the first two: mean and variance of the k-th largest eigenvalue.
struct MeanVariance {
  Real mean;
  Real variance;
};
MeanVariance marginal_mean_variance(const EnsembleSpec& spec, int k, const PrecisionContext& ctx);

}  // namespace rmtgap
