#include "profiles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "multipliers.hpp"
#include "special.hpp"

namespace sdwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

double shell_value(const ShellParams& p, double rho) {
  const double x = (rho - p.center) / p.half_width;
  if (!(std::abs(x) < 1.0)) return 0.0;
  return p.amplitude * std::exp(1.0 - 1.0 / (1.0 - x * x));
}

// ∫_R^∞ ρ^p e^{-cρ²} dρ, bounded above.
double gaussian_tail(double c, double R, double p) {
  const double excess = std::max(p - 1.0, 0.0);
  const double denom = 2.0 * c - excess / (R * R);
  if (denom > 0.0) {
    const double log_bound = (p - 1.0) * std::log(R) - c * R * R - std::log(denom);
    return std::exp(log_bound);
  }
  const double a = 0.5 * (p + 1.0);
  return special::upper_gamma(a, c * R * R) / (2.0 * std::pow(c, a)) * (1.0 + 1e-9);
}

}  // namespace

const char* profile_kind_name(ProfileKind kind) noexcept {
  switch (kind) {
    case ProfileKind::Gaussian: return "gaussian";
    case ProfileKind::PowerTail: return "power_tail";
    case ProfileKind::Shell: return "shell";
    case ProfileKind::Zero: return "zero";
  }
  return "?";
}

SpectralProfile SpectralProfile::gaussian(double sigma, double amplitude) {
  require(std::isfinite(sigma) && sigma > 0.0, "gaussian sigma must be finite and > 0");
  require(finite_nonneg(amplitude), "amplitude must be finite and >= 0");
  return SpectralProfile(GaussianParams{sigma, amplitude});
}

SpectralProfile SpectralProfile::power_tail(double exponent, double amplitude) {
  require(std::isfinite(exponent) && exponent > 0.0,
          "power_tail exponent must be finite and > 0");
  require(finite_nonneg(amplitude), "amplitude must be finite and >= 0");
  return SpectralProfile(PowerTailParams{exponent, amplitude});
}

SpectralProfile SpectralProfile::shell(double center, double half_width, double amplitude) {
  require(std::isfinite(center) && center > 0.0, "shell center must be finite and > 0");
  require(half_width > 0.0 && half_width <= center,
          "shell half_width must satisfy 0 < half_width <= center");
  require(finite_nonneg(amplitude), "amplitude must be finite and >= 0");
  return SpectralProfile(ShellParams{center, half_width, amplitude});
}

ProfileKind SpectralProfile::kind() const noexcept {
  return std::visit(Overload{
                        [](const GaussianParams&) { return ProfileKind::Gaussian; },
                        [](const PowerTailParams&) { return ProfileKind::PowerTail; },
                        [](const ShellParams&) { return ProfileKind::Shell; },
                        [](const ZeroParams&) { return ProfileKind::Zero; },
                    },
                    params_);
}

double SpectralProfile::eval(double rho) const {
  if (!(rho >= 0.0))
    fail(ErrorCode::Domain, "profile evaluated at negative or NaN rho");
  return std::visit(Overload{
                        [&](const GaussianParams& p) {
                          return p.amplitude * std::exp(-p.sigma * p.sigma * rho * rho);
                        },
                        [&](const PowerTailParams& p) {
                          return p.amplitude * std::pow(1.0 + rho, -p.exponent);
                        },
                        [&](const ShellParams& p) { return shell_value(p, rho); },
                        [](const ZeroParams&) { return 0.0; },
                    },
                    params_);
}

std::complex<double> SpectralProfile::eval_complex(std::complex<double> z) const {
  using C = std::complex<double>;
  return std::visit(Overload{
                        [&](const GaussianParams& p) -> C {
                          return p.amplitude * std::exp(-p.sigma * p.sigma * z * z);
                        },
                        [&](const PowerTailParams& p) -> C {
                          return p.amplitude * std::pow(1.0 + z, -p.exponent);
                        },
                        [](const ShellParams&) -> C {
                          fail(ErrorCode::Domain, "shell profile has no analytic continuation");
                        },
                        [](const ZeroParams&) -> C { return 0.0; },
                    },
                    params_);
}

bool SpectralProfile::analytic() const noexcept { return kind() != ProfileKind::Shell; }

std::pair<double, double> SpectralProfile::support() const noexcept {
  return std::visit(
      Overload{
          [](const ShellParams& p) {
            return std::pair{p.center - p.half_width, p.center + p.half_width};
          },
          [](const ZeroParams&) { return std::pair{kInf, 0.0}; },
          [](const auto&) { return std::pair{0.0, kInf}; },
      },
      params_);
}

bool SpectralProfile::in_sobolev(double ell, int n) const {
  if (const auto* p = std::get_if<PowerTailParams>(&params_))
    return p->exponent > ell + 0.5 * n;
  return true;
}

std::optional<double> SpectralProfile::l1_norm(int n) const {
  if (const auto* p = std::get_if<GaussianParams>(&params_))
    return p->amplitude * std::pow(2.0 * std::numbers::pi, 0.5 * n);
  if (kind() == ProfileKind::Zero) return 0.0;
  return std::nullopt;
}

SpectralProfile SpectralProfile::scaled(double k) const {
  require(finite_nonneg(k), "scale factor must be finite and >= 0");
  Params p = params_;
  std::visit(Overload{
                 [](ZeroParams&) {},
                 [&](auto& q) { q.amplitude *= k; },
             },
             p);
  return SpectralProfile(p);
}

QuadratureResult sobolev_norm_sq(const SpectralProfile& profile, double ell, int n,
                                 double rel_tol) {
  require(n >= 1, "dimension must be >= 1");
  require(std::isfinite(ell) && ell >= 0.0, "Sobolev order must be finite and >= 0");
  if (!profile.in_sobolev(ell, n))
    fail(ErrorCode::DivergentNorm, "profile is not in H^" + std::to_string(ell) + " of R^" +
                                       std::to_string(n));
  QuadratureResult result;
  if (profile.kind() == ProfileKind::Zero) return result;
  const double p = 2.0 * ell + n - 1.0;
  const Integrand f = [&](double rho) {
    const double v = profile.eval(rho);
    return v == 0.0 ? 0.0 : std::pow(rho, p) * v * v;
  };
  const auto [lo, hi] = profile.support();
  if (std::isfinite(hi)) {
    result = integrate(f, BandSpec::make(lo, hi), rel_tol);
  } else {
    result = integrate(f, BandSpec::make(0.0, kSqrt2), rel_tol);
    result += integrate_tail(
        f, kSqrt2, [&](double x) { return tail_majorant_integral(profile, x, p); }, rel_tol);
  }
  const double omega = special::sphere_measure(n);
  result.value *= omega;
  result.err_bound *= omega;
  return result;
}

double tail_majorant_integral(const SpectralProfile& profile, double R, double p) {
  if (!(R > 0.0)) fail(ErrorCode::InvalidArgument, "tail start must be > 0");
  if (!std::isfinite(p)) fail(ErrorCode::InvalidArgument, "weight power must be finite");
  if (std::isinf(R)) return 0.0;
  return std::visit(
      Overload{
          [&](const GaussianParams& g) {
            const double c = 2.0 * g.sigma * g.sigma;
            return g.amplitude * g.amplitude * gaussian_tail(c, R, p);
          },
          [&](const PowerTailParams& q) {
            const double k = p + 1.0 - 2.0 * q.exponent;
            if (k >= 0.0)
              fail(ErrorCode::DivergentTail,
                   "power_tail tail integral diverges for weight power " + std::to_string(p));
            return q.amplitude * q.amplitude * std::exp(k * std::log(R)) / -k;
          },
          [&](const ShellParams& s) {
            const double top = s.center + s.half_width;
            if (R >= top) return 0.0;
            const double from = std::max(R, s.center - s.half_width);
            const double peak = std::max(std::pow(from, p), std::pow(top, p));
            return s.amplitude * s.amplitude * peak * (top - from);
          },
          [](const ZeroParams&) { return 0.0; },
      },
      profile.params());
}

}  // namespace sdwave
