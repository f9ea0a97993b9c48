#pragma once

// Total and band energies
//
//   E(t) = ω_{n-1} ∫₀^∞ (|û_t|² + ρ²|û|²) ρ^{n-1} dρ
//
// evaluated from the exact multipliers at each requested time.
//
// Finite bands use adaptive quadrature with initial panels placed every π of
// the phase 2wt and at the scales t^{-1/4}·2^k. For t >= kContourMinTime and
// analytic data the oscillating part of the [0, 1] piece is moved onto the
// contour lo → lo+iY → hi+iY → hi, Y = 20/t, where it decays like e^{-2yt};
// the top edge is bounded and charged to err_bound. The band reaching to
// infinity is integrated with integrate_tail against the smaller of two
// majorants: per-frequency energy never increases, and for large enough ρ
// the hyperbolic propagators obey explicit power bounds.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "multipliers.hpp"
#include "profiles.hpp"
#include "quadrature.hpp"

namespace sdwave {

inline constexpr double kContourMinTime = 400.0;

struct EnergyReport {
  double t = 0.0;
  double e_low = 0.0;
  double e_mid = 0.0;
  double e_high = 0.0;
  double e_total = 0.0;
  double err_bound = 0.0;
  int n = 1;
  bool reliable = true;
};

/// Split points of the three-band decomposition: low [0, low_mid],
/// mid [low_mid, mid_high], high [mid_high, ∞).
struct BandSplits {
  double low_mid = 1.0;
  double mid_high = kSqrt2;

  bool operator==(const BandSplits&) const = default;
};

void validate(const BandSplits& splits);

/// (|û_t|² + ρ²|û|²) ρ^{n-1}, without the sphere measure.
double energy_density(double t, double rho, const SpectralProfile& u0,
                      const SpectralProfile& u1, int n);

QuadratureResult band_energy(double t, const BandSpec& band, const SpectralProfile& u0,
                             const SpectralProfile& u1, int n, double rel_tol);

EnergyReport energy_report(double t, const SpectralProfile& u0, const SpectralProfile& u1,
                           int n, double rel_tol, const BandSplits& splits = {});

/// t_k = t0·ratio^k, k = 0..steps-1.
std::vector<double> geometric_grid(double t0, double ratio, std::size_t steps);

inline constexpr std::size_t kMaxGridSize = 10'000;

/// Reports in grid order. Grid points are distributed over `threads`
/// workers; each report depends only on its own time, so the result does not
/// depend on the thread count.
std::vector<EnergyReport> energy_series(const SpectralProfile& u0, const SpectralProfile& u1,
                                        int n, const std::vector<double>& t_grid,
                                        double rel_tol, const BandSplits& splits = {},
                                        unsigned threads = 1);

/// 17 significant digits, "." separator regardless of locale.
std::string format_double(double x);

inline constexpr const char* kSeriesCsvHeader = "t,e_low,e_mid,e_high,e_total,err_bound";

std::string series_csv(const std::vector<EnergyReport>& reports);

namespace detail {

/// Non-oscillating and oscillating parts of the density in the oscillatory
/// regime: density = P(ρ) + Re H(ρ).
double density_mean(double t, double rho, const SpectralProfile& u0,
                    const SpectralProfile& u1, int n);
std::complex<double> density_wave(double t, std::complex<double> z, const SpectralProfile& u0,
                                  const SpectralProfile& u1, int n);

/// Bound on ∫_X^∞ energy_density, or +inf when no bound is available.
double tail_majorant(double t, double X, const SpectralProfile& u0, const SpectralProfile& u1,
                     int n);

}  // namespace detail

}  // namespace sdwave
