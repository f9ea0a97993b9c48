#pragma once

// Independent per-frequency oracle: the scalar ODE
//
//   v'' + ρ⁴ v' + ρ² v = 0,  v(0) = a, v'(0) = b,
//
// integrated with the Dormand-Prince 5(4) pair. Shares no code with the
// multiplier formulas.

#include <cstddef>
#include <span>
#include <vector>

namespace sdwave {

/// Largest admissible ρ⁴·t; beyond it the explicit pair is stiffness-bound.
inline constexpr double kStiffnessGuard = 1e5;

struct OdeSample {
  double t = 0.0;
  double v = 0.0;
  double dv = 0.0;
};

struct OdeSolution {
  double rho = 0.0;
  std::vector<OdeSample> samples;  ///< one per target, same order
  double est_error = 0.0;          ///< sum of accepted local error estimates
  std::size_t steps = 0;
};

/// Targets must be sorted and >= 0. Throws Error(StiffnessGuard) when
/// ρ⁴·max(t) exceeds kStiffnessGuard.
OdeSolution ode_evolve(double rho, double a, double b, std::span<const double> t_targets,
                       double rel_tol = 1e-12);

}  // namespace sdwave
