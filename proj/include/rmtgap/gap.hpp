#pragma once

#include <stdexcept>
#include <vector>

#include "rmtgap/ensemble.hpp"
#include "rmtgap/kernels.hpp"
#include "rmtgap/real.hpp"

namespace rmtgap {

/// Raised when the normalization residual is still above 10^-target_digits
/// after the last allowed precision doubling.
class PrecisionExhausted : public std::runtime_error {
 public:
  PrecisionExhausted(const std::string& what, double residual, int bits)
      : std::runtime_error(what), residual(residual), bits(bits) {}
  double residual;
  int bits;
};

struct GeneratingFunctionSample {
  EnsembleSpec spec;
  Real s;
  Complex zeta;
  Complex value;
};

/// Xi_N((s, inf); zeta) at ctx.bits. Odd N is normalized by the bordered
/// Pfaffian at zeta = 1.
GeneratingFunctionSample xi(const EnsembleSpec& spec, const Real& s, const Complex& zeta,
                            const PrecisionContext& ctx);

/// Pfaffian of H0 + zeta H1 + zeta^2 H2 (bordered by nu for odd N),
/// without the prefactor.
Complex raw_pfaffian(const PfaffianIngredients& ing, const Complex& zeta);

struct GapDistribution {
  EnsembleSpec spec;
  Real s;
  /// E[k] = probability of exactly k eigenvalues in (s, inf), k = 0..N.
  std::vector<Real> E;
  /// max of |Xi(1) - 1| with the analytic prefactor, |sum E - 1| and the
  /// largest negative E before clamping.
  Real residual;
  Real normalization_defect;
  int bits_used = 0;
  int escalations = 0;
};

/// Roots-of-unity extraction with residual-driven precision escalation.
GapDistribution gap_distribution(const EnsembleSpec& spec, const Real& s,
                                 const PrecisionContext& ctx);

/// Largest bits and residual over every gap_distribution call in this
/// process since the last reset. Thread-safe.
struct GapDiagnostics {
  int max_bits = 0;
  double max_residual = 0.0;
  long calls = 0;
  int escalations = 0;
};
GapDiagnostics gap_diagnostics();
void reset_gap_diagnostics();

/// One extraction at exactly `bits`, no escalation and no clamping.
GapDistribution gap_distribution_at_bits(const EnsembleSpec& spec, const Real& s, int bits,
                                         int workers = 1);

/// Fourier-fold E[k] from Xi at zeta = e^{2 pi i l/(N+1)}, l = 0..floor((N+1)/2).
std::vector<Real> fourier_fold(int N, const std::vector<Complex>& xi_values);

struct XiTracePoint {
  Real s;
  Complex xi;
  /// prefactor^2 * det of the (bordered) matrix.
  Complex xi_squared;
};

/// Xi and Xi^2 along an s sweep (s_from may exceed s_to); diagnostic only.
std::vector<XiTracePoint> trace_xi_curve(const EnsembleSpec& spec, const Complex& zeta,
                                         const Real& s_from, const Real& s_to, int steps,
                                         const PrecisionContext& ctx);

/// log E_N(0; (s, inf)) = log Xi(0) evaluated directly, with the working
/// precision raised until two runs 64 bits apart agree to target digits.
struct LogGapResult {
  Real value;
  int bits_used = 0;
};
LogGapResult log_empty_probability(const EnsembleSpec& spec, const Real& s,
                                   const PrecisionContext& ctx);

}  // namespace rmtgap
