#pragma once

// Decay-rate measurement and the closed-form kernel quantities it is checked
// against.

#include <cstddef>
#include <span>

namespace sdwave {

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;  ///< natural log of the prefactor
  double rmse = 0.0;       ///< in log space
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t points = 0;
};

/// Least squares of log value on log t over the samples with t in
/// [t_min, t_max]. Throws Error(NonPositiveValue) or
/// Error(InsufficientPoints) (fewer than 3 distinct times).
RateFit fit_rate(std::span<const double> t, std::span<const double> value, double t_min,
                 double t_max);

/// ‖ |ξ|^m e^{-t|ξ|⁴/2} ‖_{L²(|ξ|<=1)} in Rⁿ, via the lower incomplete gamma.
double kernel_low_norm(int n, double m, double t);

/// sup_{ρ>=1} e^{-t/ρ²} ρ^{-m}.
double kernel_sup(double m, double t);

/// Leading term (t^{-(ℓ+δ)}/2)·2^{-(ℓ+δ)}·γ(ℓ+δ, t) of
/// ∫_{√2}^∞ e^{-2t/ρ²} ρ^{-2s} ρ^{n-1} dρ for s = ℓ + n/2 + δ.
double highband_rate_oracle(double ell, double delta, int n, double t);

}  // namespace sdwave
