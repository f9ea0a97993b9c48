#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace sdwave {

namespace {

using State = std::array<double, 2>;

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Fourth-order weights minus fifth-order weights.
constexpr double e1 = 5179.0 / 57600 - b1, e3 = 7571.0 / 16695 - b3, e4 = 393.0 / 640 - b4,
                 e5 = -92097.0 / 339200 - b5, e6 = 187.0 / 2100 - b6, e7 = 1.0 / 40;

constexpr std::size_t kMaxSteps = 50'000'000;

struct Rhs {
  double rho2;
  double rho4;
  State operator()(const State& y) const { return {y[1], -rho4 * y[1] - rho2 * y[0]}; }
};

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> ks) {
  State out = y;
  for (const auto& [w, k] : ks) {
    out[0] += h * w * (*k)[0];
    out[1] += h * w * (*k)[1];
  }
  return out;
}

}  // namespace

OdeSolution ode_evolve(double rho, double a, double b, std::span<const double> t_targets,
                       double rel_tol) {
  if (!(rho >= 0.0) || !std::isfinite(rho))
    fail(ErrorCode::Domain, "radial frequency must be finite and >= 0");
  if (!std::isfinite(a) || !std::isfinite(b))
    fail(ErrorCode::InvalidArgument, "initial values must be finite");
  if (!(rel_tol > 0.0)) fail(ErrorCode::InvalidArgument, "rel_tol must be > 0");
  for (std::size_t i = 0; i < t_targets.size(); ++i) {
    if (!(t_targets[i] >= 0.0) || !std::isfinite(t_targets[i]))
      fail(ErrorCode::Domain, "targets must be finite and >= 0");
    if (i > 0 && t_targets[i] < t_targets[i - 1])
      fail(ErrorCode::InvalidArgument, "targets must be sorted");
  }
  const double rho2 = rho * rho;
  const double rho4 = rho2 * rho2;
  if (!t_targets.empty() && rho4 * t_targets.back() > kStiffnessGuard)
    fail(ErrorCode::StiffnessGuard, "rho^4 * t = " + std::to_string(rho4 * t_targets.back()) +
                                        " exceeds the stiffness guard");

  const Rhs f{rho2, rho4};
  OdeSolution sol;
  sol.rho = rho;
  State y = {a, b};
  double t = 0.0;
  // Error is measured against the state norm alone: the solution may decay
  // by many orders of magnitude and must stay relatively accurate throughout.
  constexpr double abs_tol = 1e-300;
  double h = 1e-3 / std::max(1.0, rho4);
  State k1 = f(y);

  for (double target : t_targets) {
    while (t < target) {
      if (++sol.steps > kMaxSteps)
        fail(ErrorCode::MaxDepthExceeded, "ODE oracle exceeded its step budget");
      const bool last = t + h >= target;
      const double step = last ? target - t : h;
      const State k2 = f(axpy(y, step, {{a21, &k1}}));
      const State k3 = f(axpy(y, step, {{a31, &k1}, {a32, &k2}}));
      const State k4 = f(axpy(y, step, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      const State k5 = f(axpy(y, step, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      const State k6 =
          f(axpy(y, step, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      const State y_new =
          axpy(y, step, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      const State k7 = f(y_new);
      const double norm = std::max({std::abs(y[0]), std::abs(y[1]), std::abs(y_new[0]),
                                    std::abs(y_new[1])});
      double err_abs = 0.0;
      for (int i = 0; i < 2; ++i) {
        const double e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                 e6 * k6[i] + e7 * k7[i]);
        err_abs = std::max(err_abs, std::abs(e));
      }
      const double err = err_abs / (abs_tol + rel_tol * norm);
      const double factor =
          err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (err <= 1.0) {
        t = last ? target : t + step;
        y = y_new;
        k1 = k7;
        sol.est_error += err_abs;
        if (!last) h = step * factor;
      } else {
        h = step * factor;
      }
    }
    sol.samples.push_back({target, y[0], y[1]});
  }
  return sol;
}

}  // namespace sdwave
