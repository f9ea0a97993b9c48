#include "analysis.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "special.hpp"

namespace sdwave {

RateFit fit_rate(std::span<const double> t, std::span<const double> value, double t_min,
                 double t_max) {
  if (t.size() != value.size())
    fail(ErrorCode::InvalidArgument, "time and value columns differ in length");
  if (!(t_min > 0.0) || !(t_max >= t_min))
    fail(ErrorCode::InvalidArgument, "fit window requires 0 < t_min <= t_max");
  const double lo = t_min * (1.0 - 1e-12);
  const double hi = t_max * (1.0 + 1e-12);
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] >= lo && t[i] <= hi)) continue;
    if (!(value[i] > 0.0) || !std::isfinite(value[i]))
      fail(ErrorCode::NonPositiveValue,
           "non-positive value " + std::to_string(value[i]) + " at t = " + std::to_string(t[i]));
    xs.push_back(std::log(t[i]));
    ys.push_back(std::log(value[i]));
  }
  const std::size_t count = xs.size();
  if (count < 3)
    fail(ErrorCode::InsufficientPoints,
         "fit window holds " + std::to_string(count) + " points, need 3");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(count);
  my /= double(count);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) fail(ErrorCode::InsufficientPoints, "fit window holds a single time");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.rmse = std::sqrt(ss / double(count));
  fit.t_min = t_min;
  fit.t_max = t_max;
  fit.points = count;
  return fit;
}

double kernel_low_norm(int n, double m, double t) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!(m >= 0.0) || !std::isfinite(m)) fail(ErrorCode::Domain, "m must be finite and >= 0");
  if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorCode::Domain, "t must be finite and > 0");
  const double a = 0.25 * (n + 2.0 * m);
  const double sq =
      special::sphere_measure(n) * 0.25 * std::pow(t, -a) * special::lower_gamma(a, t);
  return std::sqrt(sq);
}

double kernel_sup(double m, double t) {
  if (!(m >= 0.0) || !std::isfinite(m)) fail(ErrorCode::Domain, "m must be finite and >= 0");
  if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorCode::Domain, "t must be finite and >= 0");
  if (m == 0.0) return 1.0;
  if (2.0 * t < m) return std::exp(-t);
  return std::exp(0.5 * m * (std::log(m / (2.0 * t)) - 1.0));
}

double highband_rate_oracle(double ell, double delta, int n, double t) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!(ell >= 0.0) || !std::isfinite(ell)) fail(ErrorCode::Domain, "ell must be >= 0");
  if (!(delta > 0.0 && delta <= 0.5)) fail(ErrorCode::Domain, "delta must lie in (0, 1/2]");
  if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorCode::Domain, "t must be finite and > 0");
  const double a = ell + delta;
  return 0.5 * std::pow(2.0 * t, -a) * special::lower_gamma(a, t);
}

}  // namespace sdwave
