#include "energy.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "errors.hpp"
#include "special.hpp"

namespace sdwave {

namespace {

using cplx = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxPhaseBreaks = 4096;

void check_common(double t, int n, double rel_tol) {
  if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorCode::Domain, "time must be finite and >= 0");
  if (n < 1) fail(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!(rel_tol >= kMinRelTol && rel_tol <= kMaxRelTol))
    fail(ErrorCode::InvalidArgument, "rel_tol must lie in [1e-13, 1e-3]");
}

double osc_freq(double rho) { return 0.5 * rho * std::sqrt(std::max(-ring_gap(rho), 0.0)); }

// Points in (p, q) where the phase 2wt crosses multiples of π, assuming w
// monotone on [p, q].
void phase_breaks(double t, double p, double q, std::vector<double>& out) {
  if (!(q > p) || t == 0.0) return;
  const double wp = osc_freq(p);
  const double wq = osc_freq(q);
  const double span = 2.0 * t * std::abs(wq - wp) / std::numbers::pi;
  if (!(span >= 2.0)) return;
  const auto count = static_cast<std::size_t>(std::min(span, double(kMaxPhaseBreaks)));
  const bool rising = wq > wp;
  for (std::size_t k = 1; k < count; ++k) {
    const double target = wp + (wq - wp) * double(k) / double(count);
    double lo = p;
    double hi = q;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      if ((osc_freq(mid) < target) == rising)
        lo = mid;
      else
        hi = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
}

void scale_breaks(double t, double lo, double hi, std::vector<double>& out) {
  if (t <= 1.0) return;
  const double base = std::pow(t, -0.25);
  for (int k = -2; k < 64; ++k) {
    const double x = std::ldexp(base, k);
    if (x >= hi) break;
    if (x > lo) out.push_back(x);
  }
}

QuadratureResult integrate_direct(double t, double lo, double hi, const SpectralProfile& u0,
                                  const SpectralProfile& u1, int n, double rel_tol) {
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  phase_breaks(t, lo, std::min(hi, 1.0), opts.extra_breaks);
  phase_breaks(t, std::max(lo, 1.0), std::min(hi, kRingRadius), opts.extra_breaks);
  scale_breaks(t, lo, hi, opts.extra_breaks);
  const Integrand f = [&](double rho) { return energy_density(t, rho, u0, u1, n); };
  return integrate(f, BandSpec::make(lo, hi), opts);
}

// [lo, hi] ⊂ [0, 1], analytic data, large t. Returns an empty optional-like
// flag through `ok` when the top edge is too large to neglect.
QuadratureResult integrate_contour(double t, double lo, double hi, const SpectralProfile& u0,
                                   const SpectralProfile& u1, int n, double rel_tol,
                                   bool& ok) {
  QuadratureOptions mean_opts;
  mean_opts.rel_tol = rel_tol;
  scale_breaks(t, lo, hi, mean_opts.extra_breaks);
  const Integrand mean = [&](double rho) { return detail::density_mean(t, rho, u0, u1, n); };
  QuadratureResult result = integrate(mean, BandSpec::make(lo, hi), mean_opts);

  const double height = std::min(20.0 / t, 0.05);
  QuadratureOptions leg_opts;
  leg_opts.rel_tol = rel_tol;
  leg_opts.abs_tol = 0.05 * rel_tol * std::abs(result.value);
  const BandSpec vertical{0.0, height, {}};
  const auto leg = [&](double x) {
    return [&, x](double y) { return detail::density_wave(t, cplx(x, y), u0, u1, n).imag(); };
  };
  auto left = integrate(leg(lo), vertical, leg_opts);
  auto right = integrate(leg(hi), vertical, leg_opts);

  QuadratureOptions top_opts;
  top_opts.rel_tol = 1e-3;
  top_opts.abs_tol = 1e-3 * leg_opts.abs_tol;
  const auto top = integrate(
      [&](double x) { return std::abs(detail::density_wave(t, cplx(x, height), u0, u1, n)); },
      BandSpec{lo, hi, {}}, top_opts);
  const double top_bound = 2.0 * (top.value + top.err_bound);
  ok = top_bound <= 0.1 * rel_tol * std::abs(result.value) || top_bound == 0.0;

  result.value += right.value - left.value;
  result.err_bound += left.err_bound + right.err_bound + top_bound;
  result.panels_used += left.panels_used + right.panels_used + top.panels_used;
  result.reliable = result.reliable && left.reliable && right.reliable;
  return result;
}

double tail_or_inf(const SpectralProfile& f, double X, double p) {
  if (f.kind() == ProfileKind::Zero) return 0.0;
  try {
    return tail_majorant_integral(f, X, p);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DivergentTail) return kInf;
    throw;
  }
}

}  // namespace

void validate(const BandSplits& splits) {
  if (!(splits.low_mid > 0.0 && splits.mid_high > splits.low_mid &&
        std::isfinite(splits.mid_high)))
    fail(ErrorCode::InvalidArgument, "band splits must satisfy 0 < low_mid < mid_high < inf");
}

double energy_density(double t, double rho, const SpectralProfile& u0,
                      const SpectralProfile& u1, int n) {
  const double a = u0.eval(rho);
  const double b = u1.eval(rho);
  if (a == 0.0 && b == 0.0) return 0.0;
  const auto s = eval_state(t, rho, a, b);
  const double e = s.ut_hat * s.ut_hat + rho * rho * s.u_hat * s.u_hat;
  return n == 1 ? e : e * std::pow(rho, n - 1);
}

QuadratureResult band_energy(double t, const BandSpec& band, const SpectralProfile& u0,
                             const SpectralProfile& u1, int n, double rel_tol) {
  check_common(t, n, rel_tol);
  if (!(band.lo >= 0.0) || !(band.hi > band.lo))
    fail(ErrorCode::InvalidArgument, "band requires 0 <= lo < hi");

  const auto [lo0, hi0] = u0.support();
  const auto [lo1, hi1] = u1.support();
  const double lo = std::max(band.lo, std::min(lo0, lo1));
  const double hi = std::min(band.hi, std::max(hi0, hi1));
  QuadratureResult result;
  if (!(hi > lo)) return result;

  const double finite_hi = std::isfinite(hi) ? hi : std::max(lo, kSqrt2);
  if (finite_hi > lo) {
    const double split = std::min(finite_hi, 1.0);
    bool done = false;
    if (t >= kContourMinTime && u0.analytic() && u1.analytic() && split > lo) {
      bool ok = false;
      auto part = integrate_contour(t, lo, split, u0, u1, n, rel_tol, ok);
      if (ok) {
        result += part;
        if (finite_hi > split) result += integrate_direct(t, split, finite_hi, u0, u1, n, rel_tol);
        done = true;
      }
    }
    if (!done) result += integrate_direct(t, lo, finite_hi, u0, u1, n, rel_tol);
  }
  if (std::isinf(hi)) {
    const double R = std::max(lo, kSqrt2);
    const Integrand f = [&](double rho) { return energy_density(t, rho, u0, u1, n); };
    result += integrate_tail(
        f, R, [&](double x) { return detail::tail_majorant(t, x, u0, u1, n); }, rel_tol);
  }
  const double omega = special::sphere_measure(n);
  result.value *= omega;
  result.err_bound *= omega;
  return result;
}

EnergyReport energy_report(double t, const SpectralProfile& u0, const SpectralProfile& u1,
                           int n, double rel_tol, const BandSplits& splits) {
  validate(splits);
  const auto low = band_energy(t, BandSpec::make(0.0, splits.low_mid), u0, u1, n, rel_tol);
  const auto mid =
      band_energy(t, BandSpec::make(splits.low_mid, splits.mid_high), u0, u1, n, rel_tol);
  const auto high = band_energy(t, BandSpec::make(splits.mid_high, kInf), u0, u1, n, rel_tol);
  EnergyReport r;
  r.t = t;
  r.n = n;
  r.e_low = low.value;
  r.e_mid = mid.value;
  r.e_high = high.value;
  r.e_total = r.e_low + r.e_mid + r.e_high;
  r.err_bound = low.err_bound + mid.err_bound + high.err_bound;
  r.reliable = low.reliable && mid.reliable && high.reliable;
  return r;
}

std::vector<double> geometric_grid(double t0, double ratio, std::size_t steps) {
  if (!(t0 > 0.0) || !std::isfinite(t0)) fail(ErrorCode::InvalidArgument, "t0 must be > 0");
  if (!(ratio > 1.0) || !std::isfinite(ratio))
    fail(ErrorCode::InvalidArgument, "grid ratio must be > 1");
  if (steps == 0 || steps > kMaxGridSize)
    fail(ErrorCode::InvalidArgument, "grid length must lie in [1, 10000]");
  std::vector<double> grid(steps);
  for (std::size_t k = 0; k < steps; ++k) grid[k] = t0 * std::pow(ratio, double(k));
  if (!std::isfinite(grid.back())) fail(ErrorCode::InvalidArgument, "grid overflows");
  return grid;
}

std::vector<EnergyReport> energy_series(const SpectralProfile& u0, const SpectralProfile& u1,
                                        int n, const std::vector<double>& t_grid,
                                        double rel_tol, const BandSplits& splits,
                                        unsigned threads) {
  if (t_grid.size() > kMaxGridSize)
    fail(ErrorCode::InvalidArgument, "grid length must be <= 10000");
  validate(splits);
  std::vector<EnergyReport> out(t_grid.size());
  std::vector<std::exception_ptr> errors(t_grid.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < t_grid.size();) {
      try {
        out[i] = energy_report(t_grid[i], u0, u1, n, rel_tol, splits);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(t_grid.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string series_csv(const std::vector<EnergyReport>& reports) {
  std::string out = kSeriesCsvHeader;
  out += '\n';
  for (const auto& r : reports) {
    for (double v : {r.t, r.e_low, r.e_mid, r.e_high, r.e_total}) {
      out += format_double(v);
      out += ',';
    }
    out += format_double(r.err_bound);
    out += '\n';
  }
  return out;
}

namespace detail {

// In the oscillatory regime write û = e^{-αt}(A₁ cos θ + B₁ sin θ) and
// û_t = e^{-αt}(A₂ cos θ + B₂ sin θ), α = ρ⁴/2, θ = wt, w = ρs,
// s = √(1 - ρ⁶/4). Squaring splits the density into a mean and a cos 2θ,
// sin 2θ wave.
namespace {

struct Coefficients {
  cplx mean;  // (A₂² + B₂² + (ρA₁)² + (ρB₁)²)/2
  cplx q;     // cos 2θ coefficient
  cplx r;     // sin 2θ coefficient
  cplx s;
};

template <class T>
Coefficients coefficients(T z, T a0, T b) {
  const T z3 = z * z * z;
  const T s = std::sqrt(T(1.0) - z3 * z3 / T(4.0));
  const T alpha = z3 * z / T(2.0);
  const T ra1 = z * a0;
  const T rb1 = (alpha * a0 + b) / s;
  const T a2 = b;
  const T b2 = (-z * a0 - z3 / T(2.0) * b) / s;
  Coefficients c;
  c.mean = (a2 * a2 + b2 * b2 + ra1 * ra1 + rb1 * rb1) / T(2.0);
  c.q = (a2 * a2 - b2 * b2 + ra1 * ra1 - rb1 * rb1) / T(2.0);
  c.r = a2 * b2 + ra1 * rb1;
  c.s = s;
  return c;
}

}  // namespace

double density_mean(double t, double rho, const SpectralProfile& u0, const SpectralProfile& u1,
                    int n) {
  const double a0 = u0.eval(rho);
  const double b = u1.eval(rho);
  if (a0 == 0.0 && b == 0.0) return 0.0;
  const auto c = coefficients<double>(rho, a0, b);
  const double r2 = rho * rho;
  const double weight = n == 1 ? 1.0 : std::pow(rho, n - 1);
  return std::exp(-r2 * r2 * t) * c.mean.real() * weight;
}

cplx density_wave(double t, cplx z, const SpectralProfile& u0, const SpectralProfile& u1,
                  int n) {
  const cplx a0 = u0.eval_complex(z);
  const cplx b = u1.eval_complex(z);
  const auto c = coefficients<cplx>(z, a0, b);
  const cplx z2 = z * z;
  const cplx phase = t * (-z2 * z2 + 2.0 * cplx(0.0, 1.0) * z * c.s);
  cplx weight = 1.0;
  for (int k = 1; k < n; ++k) weight *= z;
  return (c.q - cplx(0.0, 1.0) * c.r) * weight * std::exp(phase);
}

double tail_majorant(double t, double X, const SpectralProfile& u0, const SpectralProfile& u1,
                     int n) {
  const double trivial = tail_or_inf(u1, X, n - 1.0) + tail_or_inf(u0, X, n + 1.0);
  double sharp = kInf;
  const double X4 = X * X * X * X;
  if (X >= kSqrt2 && X4 * t >= 3.0 && 0.5 * X4 * t >= 6.0 * std::log(X)) {
    const double x6 = 1.0 / (X4 * X * X);
    const double q = std::sqrt(1.0 - 4.0 * x6);
    const double kappa2 = 1.0 / (q * q);
    sharp = 2.0 * kappa2 *
            ((1.0 + x6) * tail_or_inf(u0, X, n + 1.0) +
             (1.0 + 9.0 * x6) * tail_or_inf(u1, X, n - 7.0));
  }
  return std::min(trivial, sharp);
}

}  // namespace detail

}  // namespace sdwave
