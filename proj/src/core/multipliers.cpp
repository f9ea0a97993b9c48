#include "multipliers.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"

namespace sdwave {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// |ρ⁶ - 4| below this is treated as the ring itself (about ten ulps of ρ).
constexpr double kCriticalGap = 64.0 * kEps;

void check_rho(double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho))
    fail(ErrorCode::Domain, "radial frequency must be finite and >= 0, got " +
                                std::to_string(rho));
}

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    fail(ErrorCode::Domain,
         "time must be finite and >= 0, got " + std::to_string(t));
}

// Everything eval_state needs, arranged so that no intermediate overflows:
//   û   = e0·a + e1·b + a_e1·a
//   û_t = -rho2_e1·a + ut_b·b
struct Kernel {
  double e0 = 1.0;
  double e1 = 0.0;
  double a_e1 = 0.0;     // (ρ⁴/2)·E₁
  double rho2_e1 = 0.0;  // ρ²·E₁
  double ut_b = 1.0;     // coefficient of b in û_t
};

Kernel from_cos_sin(double rho, double env, double c, double s_over_w) {
  const double rho2 = rho * rho;
  const double a = 0.5 * rho2 * rho2;
  Kernel k;
  k.e0 = env * c;
  k.e1 = env * s_over_w;
  k.a_e1 = a * k.e1;
  k.rho2_e1 = rho2 * k.e1;
  k.ut_b = k.e0 - k.a_e1;
  return k;
}

Kernel kernel_series(double t, double rho) {
  const double rho2 = rho * rho;
  const double z = 0.25 * t * t * rho2 * ring_gap(rho);
  const auto series = detail::ring_series(z);
  const double env = std::exp(-0.5 * rho2 * rho2 * t);
  return from_cos_sin(rho, env, series.c, t * series.s);
}

Kernel kernel_oscillatory(double t, double rho) {
  const double rho2 = rho * rho;
  const double w = 0.5 * rho * std::sqrt(-ring_gap(rho));
  const double env = std::exp(-0.5 * rho2 * rho2 * t);
  const double theta = w * t;
  return from_cos_sin(rho, env, std::cos(theta), std::sin(theta) / w);
}

// q = √(1 - 4/ρ⁶) for ρ above the ring.
double hyperbolic_q(double rho) {
  if (rho < 2.0) return std::sqrt(ring_gap(rho)) / (rho * rho * rho);
  const double r3 = rho * rho * rho;
  return std::sqrt(1.0 - 4.0 / (r3 * r3));
}

Kernel kernel_hyperbolic(double t, double rho) {
  const double rho2 = rho * rho;
  const double rho4 = rho2 * rho2;
  const double q = hyperbolic_q(rho);
  const double lambda_plus = -2.0 / (rho2 * (1.0 + q));
  const double lambda_minus = -0.5 * rho4 * (1.0 + q);
  const double two_wt = rho4 * q * t;
  const double ep = std::exp(lambda_plus * t);
  const double em = std::exp(lambda_minus * t);
  const double gap = -std::expm1(-two_wt);  // 1 - e^{-2wt}
  Kernel k;
  k.e0 = 0.5 * (ep + em);
  k.e1 = ep * gap / (rho4 * q);
  k.a_e1 = ep * gap / (2.0 * q);
  k.rho2_e1 = ep * gap / (rho2 * q);
  // (λ+ e+ - λ- e-) / (2w)
  k.ut_b = lambda_plus / (rho2 * rho2 * q) * ep + (1.0 + q) / (2.0 * q) * em;
  return k;
}

Kernel kernel(double t, double rho) {
  check_rho(rho);
  check_time(t);
  Kernel k;
  if (t == 0.0) return k;
  if (rho == 0.0) {
    k.e1 = t;
    return k;
  }
  const auto info = classify_regime(rho);
  if (info.near_ring) {
    const double z = 0.25 * t * t * rho * rho * ring_gap(rho);
    if (info.regime == Regime::Critical || std::abs(z) <= detail::kSeriesMaxAbsZ)
      return kernel_series(t, rho);
  }
  return info.regime == Regime::Hyperbolic ? kernel_hyperbolic(t, rho)
                                           : kernel_oscillatory(t, rho);
}

}  // namespace

const char* regime_name(Regime regime) noexcept {
  switch (regime) {
    case Regime::Oscillatory: return "Oscillatory";
    case Regime::Critical: return "Critical";
    case Regime::Hyperbolic: return "Hyperbolic";
  }
  return "?";
}

double ring_gap(double rho) {
  if (rho >= 2.0 || rho < 1.0) {
    const double r3 = rho * rho * rho;
    return r3 * r3 - 4.0;
  }
  // Double-double ρ⁶; next to the ring r6 - 4 is exact (Sterbenz).
  const double r2 = rho * rho;
  const double e2 = std::fma(rho, rho, -r2);
  const double r4 = r2 * r2;
  const double e4 = std::fma(r2, r2, -r4) + 2.0 * r2 * e2;
  const double r6 = r4 * r2;
  const double e6 = std::fma(r4, r2, -r6) + r4 * e2 + e4 * r2;
  return (r6 - 4.0) + e6;
}

RegimeInfo classify_regime(double rho, double ring_tube) {
  check_rho(rho);
  if (!(ring_tube >= 0.0)) fail(ErrorCode::InvalidArgument, "ring tube must be >= 0");
  const double gap = ring_gap(rho);
  RegimeInfo info;
  if (rho == 0.0 || gap < -kCriticalGap)
    info.regime = Regime::Oscillatory;
  else if (gap > kCriticalGap)
    info.regime = Regime::Hyperbolic;
  else
    info.regime = Regime::Critical;
  info.near_ring = std::abs(gap) < 4.0 * ring_tube || info.regime == Regime::Critical;
  return info;
}

CharRoots char_roots(double rho) {
  const auto info = classify_regime(rho);
  CharRoots roots;
  roots.rho = rho;
  roots.regime = info.regime;
  const double rho2 = rho * rho;
  roots.decay_part = -0.5 * rho2 * rho2;
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  switch (info.regime) {
    case Regime::Oscillatory:
      roots.osc_freq = 0.5 * rho * std::sqrt(-ring_gap(rho));
      roots.lambda_plus = nan;
      roots.lambda_minus = nan;
      break;
    case Regime::Critical:
      roots.lambda_plus = roots.decay_part;
      roots.lambda_minus = roots.decay_part;
      break;
    case Regime::Hyperbolic: {
      const double q = hyperbolic_q(rho);
      roots.lambda_plus = -2.0 / (rho2 * (1.0 + q));
      roots.lambda_minus = rho2 / roots.lambda_plus;
      break;
    }
  }
  return roots;
}

Propagators propagators(double t, double rho) {
  const auto k = kernel(t, rho);
  return {k.e0, k.e1};
}

double eval_E0(double t, double rho) { return propagators(t, rho).e0; }

double eval_E1(double t, double rho) { return propagators(t, rho).e1; }

MultiplierState eval_state(double t, double rho, double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b))
    fail(ErrorCode::InvalidArgument, "initial values must be finite");
  const auto k = kernel(t, rho);
  MultiplierState state;
  state.t = t;
  state.rho = rho;
  if (t == 0.0) {
    state.u_hat = a;
    state.ut_hat = b;
    return state;
  }
  state.u_hat = k.e0 * a + k.e1 * b + k.a_e1 * a;
  state.ut_hat = -k.rho2_e1 * a + k.ut_b * b;
  return state;
}

namespace detail {

SeriesPair ring_series(double z) {
  SeriesPair out;
  double tc = 1.0;  // z^k / (2k)!
  double ts = 1.0;  // z^k / (2k+1)!
  out.terms = 1;
  for (int k = 1; k < 200; ++k) {
    tc *= z / ((2.0 * k - 1.0) * (2.0 * k));
    ts *= z / ((2.0 * k) * (2.0 * k + 1.0));
    out.c += tc;
    out.s += ts;
    out.terms = static_cast<std::size_t>(k) + 1;
    if (std::abs(tc) < 1e-17 * std::abs(out.c) && std::abs(ts) < 1e-17 * std::abs(out.s))
      break;
  }
  return out;
}

Propagators propagators_series(double t, double rho) {
  const auto k = kernel_series(t, rho);
  return {k.e0, k.e1};
}

Propagators propagators_direct(double t, double rho) {
  const auto k = ring_gap(rho) > 0.0 ? kernel_hyperbolic(t, rho)
                                     : kernel_oscillatory(t, rho);
  return {k.e0, k.e1};
}

}  // namespace detail

}  // namespace sdwave
