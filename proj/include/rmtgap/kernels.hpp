#pragma once

#include <vector>

#include "rmtgap/ensemble.hpp"
#include "rmtgap/matrix.hpp"
#include "rmtgap/real.hpp"

namespace rmtgap {

/// Gaussian one-point integrals Psi(j; .) and their upper counterparts for
/// j = 0..2N, at x and at sqrt(2) x.
struct GaussianPsi {
  Real x;
  std::vector<Real> psi;          // Psi(j; x)
  std::vector<Real> psi_tilde;    // Psi~(j; x)
  std::vector<Real> psi2;         // Psi(j; sqrt(2) x)
  std::vector<Real> psi2_tilde;   // Psi~(j; sqrt(2) x)
};

GaussianPsi build_gaussian_psi(int N, const Real& x);

/// I(j,k; x) and I~(j,k; x) for 0 <= j,k <= N (row and column 0 vanish).
struct PairIntegrals {
  RealMatrix I;
  RealMatrix I_tilde;
};

PairIntegrals build_gaussian_I(int N, const GaussianPsi& psi);

/// Laguerre one-point integrals in the e^{-x} kernel scale:
/// psi[j] = Psi(a+j; x) for j = 1..N and psi2[m] = Psi(2a+m; 2x) for m = 2..2N.
struct LaguerrePsi {
  Real x;
  Real a;
  std::vector<Real> psi;
  std::vector<Real> psi_tilde;
  std::vector<Real> psi2;
  std::vector<Real> psi2_tilde;
};

/// Throws std::domain_error if a <= -1 or x < 0.
LaguerrePsi build_laguerre_psi(int N, const Real& a, const Real& x);

/// I(a+j, a+k; x) and I~ for 1 <= j,k <= N, stored at [j][k].
PairIntegrals build_laguerre_I(int N, const LaguerrePsi& psi);

/// The zeta-independent pieces of the Pfaffian generating function at one s.
struct PfaffianIngredients {
  EnsembleSpec spec;
  /// Threshold in the eigenvalue scale of the ensemble.
  Real s;
  RealMatrix H0;
  RealMatrix H1;
  RealMatrix H2;
  /// nu_j = psi[j] + zeta psi_tilde[j], j = 1..N (index 0 unused).
  std::vector<Real> nu_psi;
  std::vector<Real> nu_psi_tilde;
  /// Analytic normalization in front of the Pfaffian.
  Real prefactor;

  bool odd() const noexcept { return spec.N % 2 == 1; }
};

/// Builds H0, H1, H2 and the border data. The LOE threshold is halved
/// internally for the e^{-x} kernel scale.
PfaffianIngredients assemble_ingredients(const EnsembleSpec& spec, const Real& s);

/// LOE H0 and H2 by the direct recurrence in k with H(j,j) = 0, as a cross
/// check on the I-array route. Indices 1..N as above; x in kernel scale.
void laguerre_H_direct(int N, const LaguerrePsi& psi, RealMatrix& H0, RealMatrix& H2);

/// u_j: 2^{j/2} for odd j, 0 for even j.
Real gaussian_u(int j);

/// Analytic prefactor of the Pfaffian formula.
Real ensemble_prefactor(const EnsembleSpec& spec);

}  // namespace rmtgap
