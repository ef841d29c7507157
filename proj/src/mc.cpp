#include "rmtgap/mc.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rmtgap/parallel.hpp"

namespace rmtgap {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

void check_config(const SamplerConfig& c) {
  c.spec.validate();
  if (c.samples < 1) throw std::invalid_argument("samples must be positive");
}

// Runs body(chunk_rng, count, chunk_index) over fixed-size chunks.
template <class Body>
void for_chunks(const SamplerConfig& c, Body&& body) {
  const long chunks = (c.samples + kChunkSize - 1) / kChunkSize;
  parallel_for(static_cast<std::size_t>(chunks), c.workers, [&](std::size_t i) {
    SplitMix64 mix(c.seed ^ (0x5851f42d4c957f2dULL * (i + 1)));
    std::mt19937_64 rng(mix.next());
    const long first = static_cast<long>(i) * kChunkSize;
    const long count = std::min(kChunkSize, c.samples - first);
    body(rng, count, i);
  });
}

long chunk_count(const SamplerConfig& c) { return (c.samples + kChunkSize - 1) / kChunkSize; }

}  // namespace

double chi_variate(double dof, std::mt19937_64& rng) {
  std::gamma_distribution<double> g(dof / 2.0, 2.0);
  return std::sqrt(g(rng));
}

Tridiagonal sample_tridiagonal(const EnsembleSpec& spec, std::mt19937_64& rng) {
  const int N = spec.N;
  Tridiagonal t;
  t.diag.resize(N);
  t.off.resize(N > 0 ? N - 1 : 0);
  if (spec.is_goe()) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < N; ++i) t.diag[i] = normal(rng);
    for (int j = 1; j < N; ++j) t.off[j - 1] = chi_variate(N - j, rng) / std::sqrt(2.0);
    return t;
  }
  const double n = 2.0 * spec.a + N + 1.0;
  std::vector<double> d(N);
  std::vector<double> sub(N > 0 ? N - 1 : 0);
  for (int i = 1; i <= N; ++i) d[i - 1] = chi_variate(n - i + 1, rng);
  for (int i = 1; i < N; ++i) sub[i - 1] = chi_variate(N - i, rng);
  // B B^T for lower bidiagonal B.
  for (int i = 0; i < N; ++i) t.diag[i] = d[i] * d[i] + (i > 0 ? sub[i - 1] * sub[i - 1] : 0.0);
  for (int i = 0; i + 1 < N; ++i) t.off[i] = d[i] * sub[i];
  return t;
}

std::vector<double> sample_spectrum(const EnsembleSpec& spec, std::mt19937_64& rng) {
  Tridiagonal t = sample_tridiagonal(spec, rng);
  const int N = spec.N;
  if (N == 1) return {t.diag[0]};
  Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(t.diag.data(), N);
  Eigen::VectorXd off = Eigen::Map<Eigen::VectorXd>(t.off.data(), N - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + N);
}

int count_above(const Tridiagonal& t, double s) {
  // Sturm count of eigenvalues below s.
  int below = 0;
  double q = t.diag[0] - s;
  if (q < 0) ++below;
  for (std::size_t i = 1; i < t.diag.size(); ++i) {
    double denom = q == 0.0 ? 1e-300 : q;
    q = t.diag[i] - s - t.off[i - 1] * t.off[i - 1] / denom;
    if (q < 0) ++below;
  }
  return static_cast<int>(t.diag.size()) - below;
}

EmpiricalGap empirical_gap_distribution(const SamplerConfig& config, double s) {
  check_config(config);
  const int N = config.spec.N;
  std::vector<std::vector<long>> counts(chunk_count(config), std::vector<long>(N + 1, 0));
  for_chunks(config, [&](std::mt19937_64& rng, long count, std::size_t chunk) {
    for (long m = 0; m < count; ++m) ++counts[chunk][count_above(sample_tridiagonal(config.spec, rng), s)];
  });
  EmpiricalGap out;
  out.samples = config.samples;
  std::vector<long> total(N + 1, 0);
  for (const auto& c : counts)
    for (int k = 0; k <= N; ++k) total[k] += c[k];
  const double M = static_cast<double>(config.samples);
  for (int k = 0; k <= N; ++k) {
    double p = total[k] / M;
    out.frequency.push_back(p);
    out.standard_error.push_back(std::sqrt(p * (1 - p) / M));
  }
  return out;
}

EmpiricalOrderStats empirical_order_statistics(const SamplerConfig& config) {
  check_config(config);
  const int N = config.spec.N;
  // Per-chunk sums, reduced in chunk order for reproducibility.
  std::vector<std::vector<double>> sum(chunk_count(config), std::vector<double>(N, 0.0));
  std::vector<std::vector<double>> sum2 = sum;
  for_chunks(config, [&](std::mt19937_64& rng, long count, std::size_t chunk) {
    for (long m = 0; m < count; ++m) {
      std::vector<double> ev = sample_spectrum(config.spec, rng);
      for (int k = 0; k < N; ++k) {
        double x = ev[N - 1 - k];
        sum[chunk][k] += x;
        sum2[chunk][k] += x * x;
      }
    }
  });
  EmpiricalOrderStats out;
  out.samples = config.samples;
  const double M = static_cast<double>(config.samples);
  for (int k = 0; k < N; ++k) {
    double s1 = 0;
    double s2 = 0;
    for (std::size_t c = 0; c < sum.size(); ++c) {
      s1 += sum[c][k];
      s2 += sum2[c][k];
    }
    double mean = s1 / M;
    double var = std::max(0.0, s2 / M - mean * mean);
    out.mean.push_back(mean);
    out.standard_error.push_back(std::sqrt(var / M));
  }
  return out;
}

EmpiricalCounting empirical_counting(const SamplerConfig& config, double s) {
  EmpiricalGap g = empirical_gap_distribution(config, s);
  EmpiricalCounting out;
  out.samples = g.samples;
  const int N = config.spec.N;
  for (int k = 0; k <= N; ++k) out.mean += k * g.frequency[k];
  double m4 = 0;
  for (int k = 0; k <= N; ++k) {
    double d = k - out.mean;
    out.variance += d * d * g.frequency[k];
    m4 += d * d * d * d * g.frequency[k];
  }
  const double M = static_cast<double>(g.samples);
  out.mean_error = std::sqrt(out.variance / M);
  out.variance_error = std::sqrt(std::max(0.0, m4 - out.variance * out.variance) / M);
  return out;
}

std::vector<double> order_statistic_histogram(const SamplerConfig& config, int k, double lo,
                                              double hi, int bins) {
  check_config(config);
  if (k < 1 || k > config.spec.N) throw std::invalid_argument("order index out of range");
  if (bins < 1 || !(hi > lo)) throw std::invalid_argument("bad histogram range");
  const int N = config.spec.N;
  std::vector<std::vector<long>> counts(chunk_count(config), std::vector<long>(bins, 0));
  const double width = (hi - lo) / bins;
  for_chunks(config, [&](std::mt19937_64& rng, long count, std::size_t chunk) {
    for (long m = 0; m < count; ++m) {
      double x = sample_spectrum(config.spec, rng)[N - k];
      if (x < lo || x >= hi) continue;
      int b = std::min(bins - 1, static_cast<int>((x - lo) / width));
      ++counts[chunk][b];
    }
  });
  std::vector<double> out(bins, 0.0);
  for (const auto& c : counts)
    for (int b = 0; b < bins; ++b) out[b] += static_cast<double>(c[b]);
  for (double& v : out) v /= static_cast<double>(config.samples) * width;
  return out;
}

}  // namespace rmtgap
