#pragma once

// Fourier multipliers of the structurally damped wave operator
//
//   u_tt - Δu + Δ²u_t = 0,
//
// at radial frequency rho = |ξ|. The characteristic polynomial is
// λ² + ρ⁴λ + ρ² = 0; its discriminant ρ⁸ - 4ρ² changes sign on the ring
// ρ = 2^{1/3}, where the roots coalesce and the propagators have a removable
// singularity.
//
// Evaluation strategy:
//   * oscillatory side (ρ < 2^{1/3}): e^{-tρ⁴/2} cos / sin forms;
//   * hyperbolic side (ρ > 2^{1/3}): exponential pair e^{λ+ t}, e^{λ- t} with
//     λ+ from the rationalised root formula, never cosh/sinh;
//   * a thin tube around the ring, when the signed phase argument is small:
//     the unified power series C(z), S(z);
//   * ρ = 0 and t = 0 by their exact limits.

#include <cstddef>

namespace sdwave {

inline constexpr double kRingRadius = 1.2599210498948731648;  // 2^{1/3}
inline constexpr double kSqrt2 = 1.4142135623730950488;
inline constexpr double kDefaultRingTube = 1e-3;

enum class Regime { Oscillatory, Critical, Hyperbolic };

const char* regime_name(Regime regime) noexcept;

struct RegimeInfo {
  Regime regime = Regime::Oscillatory;
  /// ρ lies in the tube |ρ⁶ - 4| < 4·ring_tube around the removable ring.
  bool near_ring = false;
};

/// Classifies by the sign of ρ⁸ - 4ρ². Points within a few ulps of the ring
/// are reported as Critical. Throws Error(Domain) for negative or NaN rho.
RegimeInfo classify_regime(double rho, double ring_tube = kDefaultRingTube);

struct CharRoots {
  double rho = 0.0;
  Regime regime = Regime::Oscillatory;
  double decay_part = 0.0;  ///< real part -ρ⁴/2
  double osc_freq = 0.0;    ///< √(4ρ² - ρ⁸)/2, oscillatory regime only
  /// Real roots; NaN in the oscillatory regime. Equal at the ring.
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
};

CharRoots char_roots(double rho);

struct Propagators {
  double e0 = 1.0;
  double e1 = 0.0;
};

Propagators propagators(double t, double rho);
double eval_E0(double t, double rho);
double eval_E1(double t, double rho);

struct MultiplierState {
  double t = 0.0;
  double rho = 0.0;
  double u_hat = 0.0;
  double ut_hat = 0.0;
};

/// (û, û_t)(t, ρ) for radial data û(0) = a, û_t(0) = b.
MultiplierState eval_state(double t, double rho, double a, double b);

/// ρ⁶ - 4, accurate to a few ulps of the result even next to the ring.
double ring_gap(double rho);

namespace detail {

struct SeriesPair {
  double c = 1.0;  ///< Σ z^k / (2k)!
  double s = 1.0;  ///< Σ z^k / (2k+1)!
  std::size_t terms = 0;
};

SeriesPair ring_series(double z);

/// Largest |z| for which the tube evaluation uses the series.
inline constexpr double kSeriesMaxAbsZ = 1.0;

// Both routes are exposed so tests can compare them in the overlap zone.
// They assume t > 0 and ρ > 0; direct additionally assumes ρ off the ring.
Propagators propagators_series(double t, double rho);
Propagators propagators_direct(double t, double rho);

}  // namespace detail

}  // namespace sdwave
