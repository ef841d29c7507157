#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "rmtgap/quadrature.hpp"
#include "rmtgap/real.hpp"

namespace rmtgap {

/// Finite-difference weights (Fornberg) for the derivative of the given
/// order at x0, using the supplied nodes.
std::vector<Real> fornberg_weights(const Real& x0, const std::vector<Real>& nodes, int order);

/// dF/ds on a uniform grid. Interior points use a centred stencil of the
/// given width (3, 5 or 7); the first and last width/2 points use one-sided
/// stencils of the same width. Throws std::invalid_argument if the grid is
/// not uniform, is shorter than the stencil, or the width is unsupported.
std::vector<Real> differentiate_grid(const std::vector<Real>& s, const std::vector<Real>& F,
                                     int width = 5);

/// Step 2^(-bits/3) * extent.
Real fd_step(const Real& extent);

/// Centred derivative of F at x with step h.
Real derivative_at(const RealFunction& F, const Real& x, const Real& h, int width = 5);

class RootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root of g in [lo, hi] by bisection with secant (Illinois) steps, to the
/// absolute tolerance `tol` in x (default: a few ulp of the bracket).
/// Throws RootError if g(lo) and g(hi) have the same strict sign.
Real find_root(const RealFunction& g, Real lo, Real hi, const Real& tol = Real(0));

}  // namespace rmtgap
