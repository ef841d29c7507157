#include "rmtgap/ensemble.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rmtgap {

void EnsembleSpec::validate() const {
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  if (kind == Ensemble::LOE && !(a > -1.0)) {
    throw std::invalid_argument("Laguerre parameter a must exceed -1");
  }
}

std::optional<int> EnsembleSpec::n() const {
  if (kind != Ensemble::LOE) return std::nullopt;
  double twice = 2.0 * a;
  if (twice != std::floor(twice)) return std::nullopt;
  return static_cast<int>(twice) + N + 1;
}

std::optional<double> EnsembleSpec::c() const {
  auto m = n();
  if (!m) return std::nullopt;
  return static_cast<double>(N) / *m;
}

std::string EnsembleSpec::label() const {
  std::ostringstream os;
  if (kind == Ensemble::GOE) {
    os << "goe N=" << N;
  } else {
    os << "loe N=" << N << " a=" << a;
  }
  return os.str();
}

}  // namespace rmtgap
