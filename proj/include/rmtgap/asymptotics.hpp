#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rmtgap/ensemble.hpp"
#include "rmtgap/real.hpp"

namespace rmtgap {

/// Mean and variance of the number of eigenvalues in (s, inf).
struct CountingStats {
  EnsembleSpec spec;
  Real s;
  Real mean;
  /// Centred at N/2 for the GOE at s = 0, at the mean otherwise.
  Real variance;
  Real residual;
  int bits_used = 0;
};
CountingStats counting_stats(const EnsembleSpec& spec, const Real& s, const PrecisionContext& ctx);

/// Exact fit of pi^2 Var - log N = c1 + c2 log N / N + c3 / N through three
/// (N, variance) rows. Throws std::invalid_argument for a singular system.
struct VarianceRow {
  int N;
  Real variance;
};
std::array<Real, 3> variance_ansatz_fit(const std::array<VarianceRow, 3>& rows);
/// 3 log 2 + gamma + 1 - pi^2 / 8.
Real ansatz_c1_literature();

enum class Centering { Mean, FloorMean, HalfN };

struct LocalCltRow {
  int k;
  Real p_exact;
  Real p_approx;
  Real delta;
};
struct LocalCltTable {
  CountingStats stats;
  long center = 0;
  std::vector<LocalCltRow> rows;
};
/// p_exact(k) = Pr(count = center + k); p_approx is the Gaussian density with
/// the computed variance at center + k - mean. Mean centering rounds the
/// mean to the nearest integer.
LocalCltTable local_clt_table(const EnsembleSpec& spec, const Real& s,
                              const std::vector<int>& offsets, Centering centering,
                              const PrecisionContext& ctx);

struct LargeDeviationRow {
  int N;
  Real exact;
  Real predicted;
  Real delta;
  int bits_used = 0;
};
/// c~1 N^2 + c~2 N + c~3 log N + c~4 for log Pr(no GOE eigenvalue in (0, inf)).
Real goe_large_deviation_prediction(int N);
LargeDeviationRow large_deviation_check(int N, const PrecisionContext& ctx);
/// zeta'(-1).
Real zeta_prime_minus_one();

/// Five-term large-N expansion of the GUE counting variance on (0, inf).
Real gue_variance_expansion(int N);

/// Marchenko-Pastur law with aspect ratio c in (0, 1].
struct MPLaw {
  double c = 1.0;
  Real c_minus() const;
  Real c_plus() const;
  Real density(const Real& x) const;
  /// Mass of (x, c_+). Throws std::domain_error outside [c_-, c_+].
  Real tail_mass(const Real& x) const;
  /// gamma with tail_mass(gamma) = q.
  Real quantile(const Real& q) const;
};

/// Scaled central GOE eigenvalue against its normal limit.
struct BulkProbe {
  int N = 0;
  int k = 0;
  Real scale;  // (2N / log N)^(1/2)
  std::vector<Real> X;
  std::vector<Real> density;
  std::vector<Real> gaussian;
  std::vector<Real> difference;
  /// c (1 + X d/dX) e^{-X^2/2} at each X, c matched at the origin.
  std::vector<Real> shape;
  Real c;
};
/// N odd, k = (N+1)/2. The grid should contain 0 for the origin match;
/// otherwise the point nearest 0 is used.
BulkProbe bulk_probe_goe(int N, const std::vector<Real>& X, const PrecisionContext& ctx);

struct BulkLawReport {
  EnsembleSpec spec;
  int l = 0;
  Real mean;
  Real sd;
  Real gamma_l;
  std::vector<Real> z;
  std::vector<Real> density;
  Real max_deviation;
};
/// Density of (x_l - E x_l) / sd(x_l), x_l the l-th largest LOE eigenvalue,
/// against the standard normal density on the z grid.
BulkLawReport bulk_law_loe(int N, double a, int l, const std::vector<Real>& z,
                           const PrecisionContext& ctx);

struct InterlacingReport {
  EnsembleSpec spec;
  /// Means of the k-th largest eigenvalue, k = 1..N (descending).
  std::vector<Real> means;
  /// Zeros descending.
  std::vector<Real> zeros;
  /// Range checked: k = 1..K with K = floor(N/2) (GOE) or N (LOE).
  int checked = 0;
  /// mean_k > zero_k and zero_k > mean_{k+1} for all checked k.
  bool chain = false;
  /// Partial sums of means dominate partial sums of zeros.
  bool partial_sums = false;
};
/// GOE zeros are the eigenvalues of the mean tridiagonal matrix
/// (off-diagonals sqrt((N-j)/2)); LOE zeros are those of L_N^{2a-1}.
InterlacingReport interlacing_report(const EnsembleSpec& spec, const PrecisionContext& ctx);

}  // namespace rmtgap
