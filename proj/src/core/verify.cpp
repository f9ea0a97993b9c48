#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>

#include "analysis.hpp"
#include "energy.hpp"
#include "errors.hpp"
#include "multipliers.hpp"
#include "oracles.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace sdwave {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPositive = std::numeric_limits<double>::denorm_min();

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

class Recorder {
 public:
  Recorder(std::string suite, const CheckSink& sink) : suite_(std::move(suite)), sink_(sink) {}

  void within(const std::string& check, double measured, double expected, double tol,
              const std::string& note = {}) {
    emit(check, Relation::Within, measured, expected, tol,
         std::abs(measured - expected) <= tol, note);
  }
  void at_most(const std::string& check, double measured, double bound, double tol = 0.0,
               const std::string& note = {}) {
    emit(check, Relation::AtMost, measured, bound, tol, measured <= bound + tol, note);
  }
  void at_least(const std::string& check, double measured, double bound, double tol = 0.0,
                const std::string& note = {}) {
    emit(check, Relation::AtLeast, measured, bound, tol, measured >= bound - tol, note);
  }
  void skip(const std::string& check, const std::string& note) {
    CheckResult r;
    r.suite = suite_;
    r.check = check;
    r.status = CheckStatus::Skip;
    r.measured = r.expected = r.tol = std::numeric_limits<double>::quiet_NaN();
    r.note = note;
    sink_(r);
  }
  bool ok() const { return ok_; }

 private:
  void emit(const std::string& check, Relation rel, double measured, double expected, double tol,
            bool pass, const std::string& note) {
    CheckResult r;
    r.suite = suite_;
    r.check = check;
    r.relation = rel;
    r.measured = measured;
    r.expected = expected;
    r.tol = tol;
    r.status = pass ? CheckStatus::Pass : CheckStatus::Fail;
    r.note = note;
    ok_ = ok_ && pass;
    sink_(r);
  }

  std::string suite_;
  const CheckSink& sink_;
  bool ok_ = true;
};

double rel_err(double x, double ref) {
  const double d = std::abs(x - ref);
  return std::abs(ref) > 1e-30 ? d / std::abs(ref) : d;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  std::vector<double> out;
  const int count = static_cast<int>(std::lround(std::log10(hi / lo) * per_decade));
  for (int k = 0; k <= count; ++k) out.push_back(lo * std::pow(10.0, double(k) / per_decade));
  return out;
}

// Default time grid 2^k/16 restricted to [lo, hi].
std::vector<double> default_grid_window(double lo, double hi) {
  std::vector<double> out;
  for (double t : geometric_grid(0.0625, 2.0, 61))
    if (t >= lo && t <= hi) out.push_back(t);
  return out;
}

std::vector<EnergyReport> series(const SpectralProfile& u0, const SpectralProfile& u1, int n,
                                 const std::vector<double>& grid, unsigned threads) {
  return energy_series(u0, u1, n, grid, 1e-8, {}, threads);
}

double fitted_slope(const std::vector<double>& t, const std::vector<double>& v) {
  return fit_rate(t, v, t.front(), t.back()).slope;
}

std::vector<double> column(const std::vector<EnergyReport>& rs, double EnergyReport::*field) {
  std::vector<double> out;
  for (const auto& r : rs) out.push_back(r.*field);
  return out;
}

// ---------------------------------------------------------------------------

void multiplier_exactness(Recorder& rec) {
  const double rhos[] = {0.1, 0.5, 1.0, kRingRadius, 1.3, kSqrt2, 3.0, 10.0};
  const double times[] = {0.5, 5.0, 50.0};
  const std::pair<double, double> data[] = {{1.0, 0.0}, {0.0, 1.0}};
  for (double rho : rhos) {
    for (double t : times) {
      for (const auto& [a, b] : data) {
        const std::string id =
            "rho=" + num(rho) + ",t=" + num(t) + ",a=" + num(a) + ",b=" + num(b);
        if (std::pow(rho, 4) * t > kStiffnessGuard) {
          rec.skip(id, "rho^4 t exceeds the oracle stiffness guard");
          continue;
        }
        const double targets[] = {t};
        const auto ode = ode_evolve(rho, a, b, targets);
        const auto st = eval_state(t, rho, a, b);
        rec.at_most(id + "/u", rel_err(st.u_hat, ode.samples[0].v), 1e-8);
        rec.at_most(id + "/ut", rel_err(st.ut_hat, ode.samples[0].dv), 1e-8);
      }
    }
  }
  const double targets[] = {2.0};
  const auto ode = ode_evolve(1.5, 1.0, 0.0, targets);
  const auto st = eval_state(2.0, 1.5, 1.0, 0.0);
  rec.at_most("rho=1.5,t=2,a=1,b=0/u", rel_err(st.u_hat, ode.samples[0].v), 1e-8);
}

void ring_continuity(Recorder& rec) {
  const double inside = kRingRadius * (1.0 - 1e-9);
  const double outside = kRingRadius * (1.0 + 1e-9);
  const double h = 1e-8 * kRingRadius;
  struct Quantity {
    const char* name;
    double (*eval)(double t, double rho);
  };
  const Quantity quantities[] = {
      {"E0", [](double t, double r) { return eval_E0(t, r); }},
      {"E1", [](double t, double r) { return eval_E1(t, r); }},
      {"u", [](double t, double r) { return eval_state(t, r, 1.0, 1.0).u_hat; }},
      {"ut", [](double t, double r) { return eval_state(t, r, 1.0, 1.0).ut_hat; }},
  };
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    const double r2 = kRingRadius * kRingRadius;
    const double env = std::exp(-0.5 * r2 * r2 * t);
    for (const auto& q : quantities) {
      const double fi = q.eval(t, inside);
      const double fo = q.eval(t, outside);
      const double scale = std::max({std::abs(fi), std::abs(fo), env});
      const std::string id = "t=" + num(t) + "/" + q.name;
      rec.at_most(id + "/jump", std::abs(fo - fi) / scale, 1e-12);
      // The same jump with the smooth first-order change removed.
      const double slope = (q.eval(t, kRingRadius + h) - q.eval(t, kRingRadius - h)) / (2.0 * h);
      const double corrected = (fo - fi) - slope * (outside - inside);
      rec.at_most(id + "/jump-minus-slope", std::abs(corrected) / scale, 1e-12);
    }
  }
}

void kernel_low(Recorder& rec) {
  rec.within("lower_gamma(1,2)", special::lower_gamma(1.0, 2.0), 1.0 - std::exp(-2.0), 1e-15);
  const auto grid = log_grid(1e2, 1e6, 10);
  for (int n : {1, 2, 3}) {
    for (int m : {0, 1, 2}) {
      std::vector<double> v;
      for (double t : grid) v.push_back(kernel_low_norm(n, m, t));
      rec.within("n=" + std::to_string(n) + ",m=" + std::to_string(m) + "/slope",
                 fitted_slope(grid, v), -(n + 2.0 * m) / 8.0, 1e-3);
    }
  }
  for (int n : {1, 2, 3}) {
    for (int m : {0, 1, 2}) {
      for (double t : {0.5, 16.0, 100.0, 1e4, 1e6}) {
        const double p = 2.0 * m + n - 1.0;
        const auto q = integrate([&](double r) { return std::pow(r, p) * std::exp(-t * r * r * r * r); },
                                 BandSpec::make(0.0, 1.0), 1e-12);
        const double closed = std::pow(kernel_low_norm(n, m, t), 2);
        rec.at_most("n=" + std::to_string(n) + ",m=" + std::to_string(m) + ",t=" + num(t) +
                        "/quadrature",
                    rel_err(special::sphere_measure(n) * q.value, closed), 1e-9);
      }
    }
  }
}

void kernel_sup_suite(Recorder& rec) {
  const auto grid = log_grid(1e2, 1e6, 10);
  for (double m : {1.0, 2.0, 4.0}) {
    std::vector<double> v;
    for (double t : grid) v.push_back(kernel_sup(m, t));
    rec.within("m=" + num(m) + "/slope", fitted_slope(grid, v), -m / 2.0, 1e-3);
  }
  for (double m : {1.0, 2.0, 4.0}) {
    for (double t : {0.5, 1.0, 10.0, 100.0, 1e4}) {
      const double star = std::sqrt(2.0 * t / m);
      const double hi = std::max(10.0, 10.0 * star);
      constexpr int kPoints = 1'000'000;
      double best = 0.0;
      for (int i = 0; i < kPoints; ++i) {
        const double rho = 1.0 + (hi - 1.0) * double(i) / double(kPoints - 1);
        best = std::max(best, std::exp(-t / (rho * rho)) * std::pow(rho, -m));
      }
      rec.at_most("m=" + num(m) + ",t=" + num(t) + "/grid-search",
                  rel_err(kernel_sup(m, t), best), 1e-6);
    }
  }
}

void low_band(Recorder& rec, unsigned threads) {
  const auto grid = default_grid_window(1e3, 1e6);
  for (int n : {1, 2, 3}) {
    const auto rs = series(SpectralProfile::zero(), SpectralProfile::gaussian(1.0), n, grid, threads);
    const double slope = fitted_slope(grid, column(rs, &EnergyReport::e_low));
    rec.at_most("n=" + std::to_string(n) + "/e_low-slope", slope, -n / 4.0 + 0.05, 0.0,
                "measured low-band slope " + num(slope));
  }
}

void mid_band(Recorder& rec, unsigned threads) {
  const auto u1 = SpectralProfile::shell(1.2, 0.15);
  const auto u0 = SpectralProfile::zero();
  const std::vector<double> times = {0.0, 10.0, 20.0, 50.0, 100.0};
  const auto rs = series(u0, u1, 1, times, threads);
  const double e0 = rs[0].e_total;
  for (std::size_t i = 1; i < rs.size(); ++i) {
    const std::string id = "t=" + num(times[i]);
    rec.at_most(id + "/log-rate", std::log(rs[i].e_total / e0) / times[i], -0.01);
    rec.within(id + "/outside-band", rs[i].e_low + rs[i].e_high, 0.0, 0.0);
    if (i > 1)
      rec.at_most(id + "/log-decrease", std::log(rs[i].e_total) - std::log(rs[i - 1].e_total),
                  -kPositive);
  }
  rec.at_most("ratio-100", rs.back().e_total / e0, 1e-3);
}

void monotone(Recorder& rec, const std::string& id, const std::vector<EnergyReport>& rs) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < rs.size(); ++k) {
    const double excess =
        rs[k + 1].e_total - rs[k].e_total - 2.0 * (rs[k].err_bound + rs[k + 1].err_bound);
    worst = std::max(worst, excess);
  }
  rec.at_most(id, worst, 0.0, 0.0, "largest increase beyond twice the error bounds");
}

void energy_space(Recorder& rec, unsigned threads) {
  const int n = 1;
  const double delta = 0.05;
  const auto u0 = SpectralProfile::zero();
  const auto u1 = SpectralProfile::power_tail(0.5 * n + delta);

  const auto full = series(u0, u1, n, geometric_grid(0.0625, 2.0, 61), threads);
  monotone(rec, "monotone", full);

  const auto ends = series(u0, u1, n, {1.0, 1e6}, threads);
  rec.at_most("ratio-1e6", ends[1].e_total / ends[0].e_total, 0.5);

  const auto window = default_grid_window(1e3, 1e7);
  const auto rs = series(u0, u1, n, window, threads);
  rec.within("high-slope", fitted_slope(window, column(rs, &EnergyReport::e_high)), -delta, 0.02);

  std::vector<double> oracle;
  for (double t : window) oracle.push_back(highband_rate_oracle(0.0, delta, n, t));
  rec.within("oracle-slope", fitted_slope(window, oracle), -delta, 0.02);

  // Same regularity carried by u0 instead of u1.
  const auto shifted = series(SpectralProfile::power_tail(1.0 + 0.5 * n + delta), u0, n, window,
                              threads);
  rec.within("high-slope-u0-data", fitted_slope(window, column(shifted, &EnergyReport::e_high)),
             -delta, 0.02);
}

void regularity_loss(Recorder& rec, unsigned threads) {
  struct Case {
    double ell;
    double delta;
    int n;
  };
  const auto window = default_grid_window(1e3, 1e6);
  // The (1+ρ) offset of the profile bends the slope by O(s/√t); the
  // u0-data comparison runs further out to keep that below the tolerance.
  const auto late = default_grid_window(1e4, 1e8);
  for (const auto& c : {Case{1.0, 0.25, 1}, Case{2.0, 0.5, 3}}) {
    const std::string id =
        "ell=" + num(c.ell) + ",delta=" + num(c.delta) + ",n=" + std::to_string(c.n);
    const double target = -(c.ell + c.delta);
    const auto zero = SpectralProfile::zero();
    const auto rs =
        series(zero, SpectralProfile::power_tail(c.ell + 0.5 * c.n + c.delta), c.n, window, threads);
    rec.within(id + "/high-slope", fitted_slope(window, column(rs, &EnergyReport::e_high)), target,
               0.03);
    rec.at_least(id + "/total-slope", fitted_slope(window, column(rs, &EnergyReport::e_total)),
                 -std::min(c.n / 4.0, c.ell + c.delta) - 0.05);

    std::vector<double> oracle;
    for (double t : window) oracle.push_back(highband_rate_oracle(c.ell, c.delta, c.n, t));
    rec.within(id + "/oracle-slope", fitted_slope(window, oracle), target, 0.03);

    const auto shifted = series(SpectralProfile::power_tail(c.ell + 1.0 + 0.5 * c.n + c.delta),
                                zero, c.n, late, threads);
    rec.within(id + "/high-slope-u0-data",
               fitted_slope(late, column(shifted, &EnergyReport::e_high)), target, 0.03);
  }
}

void inequalities(Recorder& rec) {
  const double rhos[] = {0.1, 0.5, 1.0, 1.2, kRingRadius, 1.3, kSqrt2, 2.0, 3.0, 10.0, 100.0};
  const double times[] = {0.01, 0.5, 5.0, 50.0};
  const std::pair<double, double> data[] = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {-1.0, 1.0}};
  for (double rho : rhos) {
    const auto roots = char_roots(rho);
    const double r2 = rho * rho;
    const std::string rid = "rho=" + num(rho);
    if (roots.regime == Regime::Hyperbolic) {
      const double prod = roots.lambda_plus * roots.lambda_minus;
      const double sum = roots.lambda_plus + roots.lambda_minus;
      rec.at_most(rid + "/vieta-product", std::abs(prod - r2) / r2, 1e-12);
      rec.at_most(rid + "/vieta-sum", std::abs(sum + r2 * r2) / (r2 * r2), 1e-12);
    }
    if (roots.regime != Regime::Oscillatory)
      rec.at_most(rid + "/lambda-plus", roots.lambda_plus, -1.0 / r2);
    // The bounds are split by the sign of ρ⁶ - 4 of the stored double, with
    // the growth rate taken from that sign; points classified Critical sit a
    // few ulps off the ring.
    const double gap = ring_gap(rho);
    const double lambda =
        gap > 0.0 ? -2.0 / (r2 * (1.0 + std::sqrt(gap) / (r2 * rho))) : -0.5 * r2 * r2;
    for (double t : times) {
      const std::string id = rid + ",t=" + num(t);
      const auto p = propagators(t, rho);
      if (gap < 0.0) {
        const double bound = t * std::exp(-0.5 * r2 * r2 * t);
        rec.at_most(id + "/bound-i", std::abs(p.e1), bound, 4.0 * kEps * bound);
        continue;
      }
      const double growth = std::exp(lambda * t);
      const double w = 0.5 * rho * std::sqrt(std::max(ring_gap(rho), 0.0));
      rec.at_least(id + "/bound-iii-E0-positive", p.e0, kPositive);
      rec.at_most(id + "/bound-iii-E0", p.e0, growth, 4.0 * kEps * growth);
      if (gap > 0.0)
        rec.at_least(id + "/bound-iii-wE1-positive", w * p.e1, kPositive);
      rec.at_most(id + "/bound-iii-wE1", w * p.e1, growth, 4.0 * kEps * growth);
      if (rho < kSqrt2) continue;
      const double C = 1.0 + 1.0 / std::sqrt(1.0 - 4.0 / (r2 * r2 * r2));
      const double decay = std::exp(-t / r2);
      for (const auto& [a, b] : data) {
        const auto st = eval_state(t, rho, a, b);
        const double bound = C / r2 * decay * std::abs(a) + C * decay * std::abs(b);
        rec.at_most(id + ",a=" + num(a) + ",b=" + num(b) + "/velocity-bound",
                    std::abs(st.ut_hat), bound, 4.0 * kEps * bound);
      }
    }
  }
}

void determinism(Recorder& rec) {
  const auto grid = geometric_grid(0.0625, 2.0, 61);
  const std::pair<const char*, SpectralProfile> cases[] = {
      {"gaussian", SpectralProfile::gaussian(1.0)},
      {"power_tail", SpectralProfile::power_tail(0.55)},
  };
  for (const auto& [name, u1] : cases) {
    const auto one = series_csv(energy_series(SpectralProfile::zero(), u1, 1, grid, 1e-8, {}, 1));
    const auto many = series_csv(energy_series(SpectralProfile::zero(), u1, 1, grid, 1e-8, {}, 8));
    const auto again = series_csv(energy_series(SpectralProfile::zero(), u1, 1, grid, 1e-8, {}, 8));
    rec.within(std::string(name) + "/threads-1-vs-8", one == many ? 0.0 : 1.0, 0.0, 0.0);
    rec.within(std::string(name) + "/repeat", many == again ? 0.0 : 1.0, 0.0, 0.0);
  }

  std::mt19937_64 rng(0x5d3a7e11u);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_add = -1.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double a = 3.0 * unit(rng);
    const double c = a + 0.1 + 5.0 * unit(rng);
    const double b = a + (c - a) * (0.05 + 0.9 * unit(rng));
    const double alpha = 2.0 * unit(rng);
    const double beta = unit(rng);
    const double gamma = 20.0 * unit(rng);
    const Integrand f = [=](double x) {
      return std::exp(-alpha * x) * (1.0 + beta * std::sin(gamma * x));
    };
    const auto whole = integrate(f, BandSpec::make(a, c), 1e-10);
    const auto left = integrate(f, BandSpec::make(a, b), 1e-10);
    const auto right = integrate(f, BandSpec::make(b, c), 1e-10);
    const double slack = whole.err_bound + left.err_bound + right.err_bound +
                         8.0 * kEps * std::abs(whole.value);
    worst_add = std::max(worst_add, std::abs(whole.value - left.value - right.value) / slack);
  }
  rec.at_most("quadrature-additivity", worst_add, 1.0, 0.0,
              "largest |I(a,c) - I(a,b) - I(b,c)| over the summed error bounds, 50 seeded trials");

  double worst_gauss = 0.0;
  double worst_kronrod = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int degree = trial % 23;
    std::vector<double> coef(degree + 1);
    for (auto& c : coef) c = 2.0 * unit(rng) - 1.0;
    const double lo = 2.0 * unit(rng) - 1.0;
    const double hi = lo + 0.1 + 2.0 * unit(rng);
    const Integrand poly = [&](double x) {
      double s = 0.0;
      for (int k = degree; k >= 0; --k) s = s * x + coef[k];
      return s;
    };
    double exact = 0.0;
    double scale = 0.0;
    for (int k = 0; k <= degree; ++k) {
      exact += coef[k] * (std::pow(hi, k + 1) - std::pow(lo, k + 1)) / (k + 1);
      scale += std::abs(coef[k]) * std::pow(std::max(std::abs(lo), std::abs(hi)), k) * (hi - lo);
    }
    const auto r = detail::gauss_kronrod15(poly, lo, hi);
    worst_kronrod = std::max(worst_kronrod, std::abs(r.kronrod - exact) / scale);
    if (degree <= 13) worst_gauss = std::max(worst_gauss, std::abs(r.gauss - exact) / scale);
  }
  rec.at_most("polynomial-exactness/kronrod-degree-22", worst_kronrod, 1e-14);
  rec.at_most("polynomial-exactness/gauss-degree-13", worst_gauss, 1e-14);

  const Integrand bump = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x) + 1.0; };
  const auto loose = integrate(bump, BandSpec::make(0.0, 4.0), 1e-6);
  const auto tight = integrate(bump, BandSpec::make(0.0, 4.0), 1e-10);
  rec.at_most("tolerance-monotone", std::abs(loose.value - tight.value), loose.err_bound);
}

using Runner = void (*)(Recorder&, unsigned);

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> table = {
      {"multiplier-exactness", [](Recorder& r, unsigned) { multiplier_exactness(r); }},
      {"ring-continuity", [](Recorder& r, unsigned) { ring_continuity(r); }},
      {"kernel-low", [](Recorder& r, unsigned) { kernel_low(r); }},
      {"kernel-sup", [](Recorder& r, unsigned) { kernel_sup_suite(r); }},
      {"low-band", low_band},
      {"mid-band", mid_band},
      {"energy-space", energy_space},
      {"regularity-loss", regularity_loss},
      {"inequalities", [](Recorder& r, unsigned) { inequalities(r); }},
      {"determinism", [](Recorder& r, unsigned) { determinism(r); }},
  };
  return table;
}

}  // namespace

const char* check_status_name(CheckStatus status) noexcept {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
  }
  return "?";
}

const char* relation_name(Relation relation) noexcept {
  switch (relation) {
    case Relation::Within: return "within";
    case Relation::AtMost: return "at_most";
    case Relation::AtLeast: return "at_least";
  }
  return "?";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "multiplier-exactness", "ring-continuity", "kernel-low",      "kernel-sup",
      "low-band",             "mid-band",        "energy-space",    "regularity-loss",
      "inequalities",         "determinism",
  };
  return names;
}

bool run_suite(const std::string& name, const CheckSink& sink, unsigned threads) {
  const auto& table = registry();
  const auto it = table.find(name);
  if (it == table.end()) fail(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
  Recorder rec(name, sink);
  it->second(rec, std::max(1u, threads));
  return rec.ok();
}

}  // namespace sdwave
