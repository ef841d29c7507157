#pragma once

#include <optional>
#include <string>

namespace rmtgap {

enum class Ensemble { GOE, LOE };

/// Which orthogonal ensemble, its size, and the Laguerre parameter.
struct EnsembleSpec {
  Ensemble kind = Ensemble::GOE;
  int N = 1;
  /// Laguerre parameter a > -1 (LOE only).
  double a = 0.0;

  static EnsembleSpec goe(int n) { return {Ensemble::GOE, n, 0.0}; }
  static EnsembleSpec loe(int n, double a) { return {Ensemble::LOE, n, a}; }

  /// Throws std::invalid_argument if N < 1 or (LOE) a <= -1.
  void validate() const;

  bool is_goe() const noexcept { return kind == Ensemble::GOE; }
  bool is_loe() const noexcept { return kind == Ensemble::LOE; }

  /// n = 2a + N + 1 for the LOE when 2a is an integer.
  std::optional<int> n() const;
  /// Aspect ratio c = N / n, when n is defined.
  std::optional<double> c() const;

  std::string label() const;
};

}  // namespace rmtgap
