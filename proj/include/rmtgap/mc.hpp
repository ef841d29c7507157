#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rmtgap/ensemble.hpp"

namespace rmtgap {

/// Monte Carlo via the tridiagonal GOE model (N(0,1) diagonal, chi_{N-j}/sqrt 2
/// off-diagonal) and the bidiagonal Laguerre model L = B B^T with
/// B_ii ~ chi_{n-i+1}, B_{i+1,i} ~ chi_{N-i}, n = 2a + N + 1. Both already
/// carry the weights e^{-x^2/2} and x^a e^{-x/2}; no rescaling is applied.
struct SamplerConfig {
  EnsembleSpec spec;
  long samples = 100000;
  std::uint64_t seed = 1;
  int workers = 1;
};

/// SplitMix64, used to derive one seed per chunk of draws.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

/// Draws per independent stream; results do not depend on the worker count.
constexpr long kChunkSize = 1 << 15;

/// chi variate with `dof` > 0 degrees of freedom (sqrt of a gamma(dof/2, 2) draw).
double chi_variate(double dof, std::mt19937_64& rng);

/// Diagonal and off-diagonal of one sampled tridiagonal matrix.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};
Tridiagonal sample_tridiagonal(const EnsembleSpec& spec, std::mt19937_64& rng);

/// Eigenvalues of one draw, ascending.
std::vector<double> sample_spectrum(const EnsembleSpec& spec, std::mt19937_64& rng);

/// Number of eigenvalues of the tridiagonal matrix above s (Sturm count).
int count_above(const Tridiagonal& t, double s);

struct EmpiricalGap {
  long samples = 0;
  /// Frequency of k eigenvalues above s, k = 0..N; sums to 1.
  std::vector<double> frequency;
  /// sqrt(p (1 - p) / M) with the empirical p.
  std::vector<double> standard_error;
};
EmpiricalGap empirical_gap_distribution(const SamplerConfig& config, double s);

struct EmpiricalOrderStats {
  long samples = 0;
  /// k = 1..N (largest first).
  std::vector<double> mean;
  std::vector<double> standard_error;
};
EmpiricalOrderStats empirical_order_statistics(const SamplerConfig& config);

struct EmpiricalCounting {
  long samples = 0;
  double mean = 0;
  double variance = 0;
  double mean_error = 0;
  /// Standard error of the sample variance from the fourth central moment.
  double variance_error = 0;
};
EmpiricalCounting empirical_counting(const SamplerConfig& config, double s);

/// Histogram of the k-th largest eigenvalue on [lo, hi) with `bins` bins,
/// as densities (counts / (M * width)); draws outside are dropped.
std::vector<double> order_statistic_histogram(const SamplerConfig& config, int k, double lo,
                                              double hi, int bins);

}  // namespace rmtgap
