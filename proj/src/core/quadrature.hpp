#pragma once

// Adaptive Gauss-Kronrod (7/15) integration of radial integrands.
//
// Every panel is evaluated with the embedded pair; the panel error estimate is
// |K15 - G7| (never scaled down), floored by a rounding term. The global
// driver bisects the panel with the largest estimate until
//
//   Σ err <= max(rel_tol·|Σ value|, abs_tol) + 1e-300.
//
// Initial panels are split at the mandatory band breaks {1, 2^{1/3}, √2}
// and at any caller-supplied breaks. Results are reduced by pairwise
// summation over panels in ascending position, so they do not depend on the
// refinement order.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sdwave {

using Integrand = std::function<double(double)>;

/// x ↦ an upper bound of ∫ₓ^∞ |f|, valid for every x at or beyond the tail
/// start. Must be non-increasing.
using TailMajorant = std::function<double(double)>;

struct BandSpec {
  double lo = 0.0;
  double hi = 1.0;  ///< may be +inf
  std::vector<double> mandatory_breaks;

  /// Validates lo < hi and fills mandatory_breaks with the members of
  /// {1, 2^{1/3}, √2} strictly inside (lo, hi).
  static BandSpec make(double lo, double hi);
};

struct QuadratureResult {
  double value = 0.0;
  double err_bound = 0.0;
  std::size_t panels_used = 0;
  /// False when a panel hit the depth/panel limit or a tail could not be
  /// certified; value and err_bound are still the best available.
  bool reliable = true;

  QuadratureResult& operator+=(const QuadratureResult& other);
};

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::vector<double> extra_breaks;
  int max_depth = 60;
  std::size_t max_panels = std::size_t{1} << 21;
};

inline constexpr double kMinRelTol = 1e-13;
inline constexpr double kMaxRelTol = 1e-3;

QuadratureResult integrate(const Integrand& f, const BandSpec& band, double rel_tol);
QuadratureResult integrate(const Integrand& f, const BandSpec& band,
                           const QuadratureOptions& options);

/// ∫_R^∞ f. Panels [R·2^k, R·2^{k+1}] are appended until the majorant
/// remainder beyond the last panel is within half the tolerance; the
/// remainder is added to err_bound. Throws Error(DivergentTail) when the
/// majorant at R is not finite.
QuadratureResult integrate_tail(const Integrand& f, double R, const TailMajorant& majorant,
                                double rel_tol);
QuadratureResult integrate_tail(const Integrand& f, double R, const TailMajorant& majorant,
                                const QuadratureOptions& options);

/// Deterministic pairwise (cascade) sum.
double pairwise_sum(std::span<const double> values);

namespace detail {

struct RuleResult {
  double kronrod = 0.0;
  double gauss = 0.0;
  double abs_integral = 0.0;  ///< K15 applied to |f|
};

RuleResult gauss_kronrod15(const Integrand& f, double a, double b);

}  // namespace detail

}  // namespace sdwave
