#pragma once

// Radial Fourier-space initial data. Values are real and non-negative on
// ρ >= 0; norms follow the unitary Fourier convention, so ‖f‖ = ‖f̂‖.

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "quadrature.hpp"

namespace sdwave {

enum class ProfileKind { Gaussian, PowerTail, Shell, Zero };

const char* profile_kind_name(ProfileKind kind) noexcept;

struct GaussianParams {
  double sigma = 1.0;
  double amplitude = 1.0;

  bool operator==(const GaussianParams&) const = default;
};

/// A·(1 + ρ)^{-s}
struct PowerTailParams {
  double exponent = 1.0;
  double amplitude = 1.0;

  bool operator==(const PowerTailParams&) const = default;
};

/// A·e·exp(-1/(1 - x²)), x = (ρ - c)/h, so the peak value is A.
struct ShellParams {
  double center = 1.0;
  double half_width = 0.5;
  double amplitude = 1.0;

  bool operator==(const ShellParams&) const = default;
};

struct ZeroParams {
  bool operator==(const ZeroParams&) const = default;
};

class SpectralProfile {
 public:
  using Params = std::variant<GaussianParams, PowerTailParams, ShellParams, ZeroParams>;

  SpectralProfile() : params_(ZeroParams{}) {}

  static SpectralProfile gaussian(double sigma, double amplitude = 1.0);
  static SpectralProfile power_tail(double exponent, double amplitude = 1.0);
  static SpectralProfile shell(double center, double half_width, double amplitude = 1.0);
  static SpectralProfile zero() { return {}; }

  ProfileKind kind() const noexcept;
  const Params& params() const noexcept { return params_; }

  double eval(double rho) const;

  /// Analytic continuation off the real axis. Only for analytic kinds.
  std::complex<double> eval_complex(std::complex<double> z) const;

  /// Gaussian, PowerTail and Zero extend analytically to a strip around
  /// [0, ∞); Shell does not.
  bool analytic() const noexcept;

  /// Closed interval outside which eval is exactly zero; hi may be +inf.
  /// Zero returns an empty interval (lo > hi).
  std::pair<double, double> support() const noexcept;

  /// ‖D^ℓ f‖ < ∞ in Rⁿ.
  bool in_sobolev(double ell, int n) const;

  /// Physical-space ‖f‖_{L¹} when known in closed form.
  std::optional<double> l1_norm(int n) const;

  /// Profile with amplitude multiplied by k.
  SpectralProfile scaled(double k) const;

  friend bool operator==(const SpectralProfile&, const SpectralProfile&) = default;

 private:
  explicit SpectralProfile(Params p) : params_(p) {}
  Params params_;
};

/// ‖D^ℓ f‖² = ω_{n-1} ∫₀^∞ ρ^{2ℓ+n-1} f(ρ)² dρ by quadrature.
/// Throws Error(DivergentNorm) outside the Sobolev space.
QuadratureResult sobolev_norm_sq(const SpectralProfile& profile, double ell, int n,
                                 double rel_tol = 1e-10);

/// Upper bound of ∫_R^∞ ρ^p f(ρ)² dρ. Throws Error(DivergentTail) when the
/// integral diverges.
double tail_majorant_integral(const SpectralProfile& profile, double R, double p);

}  // namespace sdwave
