#include "quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "errors.hpp"
#include "multipliers.hpp"

namespace sdwave {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr double kTailLimit = 1e300;

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

void check_tol(double rel_tol) {
  if (!(rel_tol >= kMinRelTol && rel_tol <= kMaxRelTol))
    fail(ErrorCode::InvalidArgument,
         "rel_tol must lie in [1e-13, 1e-3], got " + std::to_string(rel_tol));
}

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double err = 0.0;
  int depth = 0;
};

double panel_error(const detail::RuleResult& r) {
  return std::max(std::abs(r.kronrod - r.gauss), 16.0 * kEps * r.abs_integral);
}

class Adaptive {
 public:
  Adaptive(const Integrand& f, const QuadratureOptions& opts) : f_(f), opts_(opts) {}

  void add(double a, double b) { push(make(a, b, 0)); }

  // Bisects the worst panel until the running error meets the tolerance.
  void refine() {
    std::size_t since_resum = 0;
    while (true) {
      const double target = std::max(opts_.rel_tol * std::abs(value_), opts_.abs_tol) + kTiny;
      if (err_ <= target || err_ <= 0.0) return;
      if (heap_.empty()) return;
      if (panels_.size() >= opts_.max_panels) {
        reliable_ = false;
        return;
      }
      const std::size_t i = heap_.top().second;
      heap_.pop();
      const Panel p = panels_[i];
      const double mid = 0.5 * (p.a + p.b);
      if (p.depth >= opts_.max_depth || !(mid > p.a && mid < p.b)) {
        reliable_ = false;
        continue;
      }
      const Panel left = make(p.a, mid, p.depth + 1);
      const Panel right = make(mid, p.b, p.depth + 1);
      value_ += left.value + right.value - p.value;
      err_ += left.err + right.err - p.err;
      panels_[i] = left;
      heap_.push({left.err, i});
      push(right);
      if (++since_resum == 256) {
        resum();
        since_resum = 0;
      }
    }
  }

  double value() const { return value_; }
  double err() const { return err_; }

  QuadratureResult finish() {
    std::vector<std::size_t> order(panels_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return panels_[x].a < panels_[y].a; });
    std::vector<double> values;
    std::vector<double> errs;
    values.reserve(order.size());
    errs.reserve(order.size());
    for (std::size_t i : order) {
      values.push_back(panels_[i].value);
      errs.push_back(panels_[i].err);
    }
    QuadratureResult r;
    r.value = pairwise_sum(values);
    r.err_bound = pairwise_sum(errs);
    r.panels_used = panels_.size();
    r.reliable = reliable_;
    return r;
  }

  void mark_unreliable() { reliable_ = false; }

 private:
  Panel make(double a, double b, int depth) const {
    const auto rule = detail::gauss_kronrod15(f_, a, b);
    if (!std::isfinite(rule.kronrod) || !std::isfinite(rule.abs_integral))
      fail(ErrorCode::Domain, "integrand is not finite on [" + std::to_string(a) + ", " +
                                  std::to_string(b) + "]");
    return {a, b, rule.kronrod, panel_error(rule), depth};
  }

  void push(const Panel& p) {
    panels_.push_back(p);
    value_ += p.value;
    err_ += p.err;
    heap_.push({p.err, panels_.size() - 1});
  }

  void resum() {
    double v = 0.0;
    double e = 0.0;
    for (const auto& p : panels_) {
      v += p.value;
      e += p.err;
    }
    value_ = v;
    err_ = e;
  }

  // Ties on the error break towards the lower index, so refinement order is
  // a function of the inputs alone.
  struct Cmp {
    bool operator()(const std::pair<double, std::size_t>& x,
                    const std::pair<double, std::size_t>& y) const {
      if (x.first != y.first) return x.first < y.first;
      return x.second > y.second;
    }
  };

  const Integrand& f_;
  const QuadratureOptions& opts_;
  std::vector<Panel> panels_;
  std::priority_queue<std::pair<double, std::size_t>,
                      std::vector<std::pair<double, std::size_t>>, Cmp>
      heap_;
  double value_ = 0.0;
  double err_ = 0.0;
  bool reliable_ = true;
};

}  // namespace

BandSpec BandSpec::make(double lo, double hi) {
  if (!(lo >= 0.0) || !(hi > lo) || std::isnan(hi))
    fail(ErrorCode::InvalidArgument, "band requires 0 <= lo < hi, got [" + std::to_string(lo) +
                                         ", " + std::to_string(hi) + "]");
  BandSpec band;
  band.lo = lo;
  band.hi = hi;
  for (double x : {1.0, kRingRadius, kSqrt2})
    if (x > lo && x < hi) band.mandatory_breaks.push_back(x);
  return band;
}

QuadratureResult& QuadratureResult::operator+=(const QuadratureResult& other) {
  value += other.value;
  err_bound += other.err_bound;
  panels_used += other.panels_used;
  reliable = reliable && other.reliable;
  return *this;
}

QuadratureResult integrate(const Integrand& f, const BandSpec& band, double rel_tol) {
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  return integrate(f, band, opts);
}

QuadratureResult integrate(const Integrand& f, const BandSpec& band,
                           const QuadratureOptions& options) {
  check_tol(options.rel_tol);
  if (!(band.lo >= 0.0) || !(band.hi > band.lo))
    fail(ErrorCode::InvalidArgument, "band requires 0 <= lo < hi");
  if (!std::isfinite(band.hi))
    fail(ErrorCode::InvalidArgument, "infinite band: use integrate_tail");
  std::vector<double> cuts = {band.lo, band.hi};
  for (double x : band.mandatory_breaks) cuts.push_back(x);
  for (double x : options.extra_breaks) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> points;
  for (double x : cuts) {
    if (x < band.lo || x > band.hi || !std::isfinite(x)) continue;
    if (points.empty() || x > points.back()) points.push_back(x);
  }
  Adaptive engine(f, options);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) engine.add(points[i], points[i + 1]);
  engine.refine();
  return engine.finish();
}

QuadratureResult integrate_tail(const Integrand& f, double R, const TailMajorant& majorant,
                                double rel_tol) {
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  return integrate_tail(f, R, majorant, opts);
}

QuadratureResult integrate_tail(const Integrand& f, double R, const TailMajorant& majorant,
                                const QuadratureOptions& options) {
  check_tol(options.rel_tol);
  if (!(R > 0.0) || !std::isfinite(R))
    fail(ErrorCode::InvalidArgument, "tail start must be finite and > 0");
  const double total = majorant(R);
  if (!std::isfinite(total) || total < 0.0)
    fail(ErrorCode::DivergentTail, "tail majorant is not finite at R = " + std::to_string(R));

  std::vector<double> points = {R};
  for (double x : options.extra_breaks) {
    if (x > points.back() && std::isfinite(x)) points.push_back(x);
  }
  Adaptive engine(f, options);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) engine.add(points[i], points[i + 1]);
  double end = points.back();
  double remainder = total;
  const double floor = std::max(options.abs_tol, kTiny);
  while (true) {
    remainder = majorant(end);
    const double budget = 0.5 * std::max(options.rel_tol * std::abs(engine.value()), floor);
    if (remainder <= budget) break;
    if (end >= kTailLimit) {
      engine.mark_unreliable();
      break;
    }
    const double next = std::min(2.0 * end, kTailLimit);
    engine.add(end, next);
    end = next;
    engine.refine();
  }
  engine.refine();
  auto result = engine.finish();
  result.err_bound += remainder;
  return result;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace detail {

RuleResult gauss_kronrod15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  RuleResult r;
  r.kronrod = kWgk[7] * fc;
  r.gauss = kWg[3] * fc;
  r.abs_integral = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    r.kronrod += kWgk[j] * (f1 + f2);
    r.abs_integral += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) r.gauss += kWg[j / 2] * (f1 + f2);
  }
  r.kronrod *= half;
  r.gauss *= half;
  r.abs_integral *= half;
  return r;
}

}  // namespace detail

}  // namespace sdwave
