#pragma once

#include <cstdint>

#include "fracdn/solver.hpp"

namespace fracdn {

struct QuadratureConfig {
  int levels = 10;            // tanh-sinh refinement levels
  double abs_tol = 1e-9;
  double diff_step_rel = 1e-5;

  void validate() const;      // levels in [4, 14], tolerances positive
};

// I^{sigma} t^{delta} at y by tanh-sinh quadrature; both endpoint
// singularities (t -> 0 for delta < 0, t -> y for sigma < 1) are inside the
// node transform's double-exponential decay.  sigma > 0, delta > -1, y > 0.
double rl_integral_numeric(double sigma, double delta, double y,
                           const QuadratureConfig& cfg = {});

// D^{gamma_ord} t^{delta} at y for gamma_ord in (0, 1]: central finite
// difference with one Richardson step of rl_integral_numeric(1-gamma_ord),
// step y * diff_step_rel; ~1e-6 relative accuracy.
double rl_derivative_numeric(double gamma_ord, double delta, double y,
                             const QuadratureConfig& cfg = {});

// Randomized cross-check of the monomial algebra against the quadrature:
// rl_step vs rl_derivative_numeric on (gamma, delta, y) draws, kernel powers
// included, plus stage-by-stage traces of m = 1 compositions.  Pass threshold
// 1e-5 relative.
ResidualReport validate_algebra(std::uint64_t seed, int trials,
                                const QuadratureConfig& cfg = {});

}  // namespace fracdn
