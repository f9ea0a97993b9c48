#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sdwave/sdwave.h"

namespace sdwave::cli {

namespace {

using json = nlohmann::ordered_json;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_for(int status) {
  switch (status) {
    case SDW_ERROR_DIVERGENT_NORM:
    case SDW_ERROR_DIVERGENT_TAIL:
    case SDW_ERROR_MAX_DEPTH:
    case SDW_ERROR_STIFFNESS_GUARD:
    case SDW_ERROR_NON_POSITIVE_VALUE:
    case SDW_ERROR_INSUFFICIENT_POINTS:
    case SDW_ERROR_OUT_OF_MEMORY:
    case SDW_ERROR_EXCEPTION:
      return kExitNumerical;
    default:
      return kExitUsage;
  }
}

void check(int status) {
  if (status == SDW_OK) return;
  std::string msg = sdw_last_error();
  if (msg.empty()) msg = sdw_error_description(status);
  throw Failure{exit_for(status), msg};
}

double number(const std::string& text, const char* what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || text.empty())
    throw Failure{kExitUsage, std::string("invalid ") + what + ": '" + text + "'"};
  return v;
}

int integer(const std::string& text, const char* what) {
  const double v = number(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw Failure{kExitUsage, std::string(what) + " must be an integer: '" + text + "'"};
  return static_cast<int>(v);
}

struct ScenarioHandle {
  sdw_scenario_t h = nullptr;
  ~ScenarioHandle() { sdw_scenario_destroy(h); }
};

struct SeriesHandle {
  sdw_series_t h = nullptr;
  ~SeriesHandle() { sdw_series_destroy(h); }
};

json report_json(const sdw_energy_report_t& r) {
  return {{"t", r.t},           {"e_low", r.e_low},   {"e_mid", r.e_mid},
          {"e_high", r.e_high}, {"e_total", r.e_total}, {"err_bound", r.err_bound},
          {"n", r.n},           {"reliable", r.reliable != 0}};
}

std::string read_buffer(int (*fn)(void*, char*, size_t*), void* handle) {
  size_t len = 0;
  check(fn(handle, nullptr, &len));
  std::string text(len, '\0');
  check(fn(handle, text.data(), &len));
  text.resize(len - 1);
  return text;
}

struct Options {
  double tol = 0.0;  // 0: keep the scenario's value
  unsigned threads = 0;
  std::string out_path;
  bool json_output = false;
};

class Runner {
 public:
  Runner(const Options& opts, std::ostream& err) : opts_(opts), err_(err) {}

  std::string roots(const std::string& rho_text) {
    sdw_char_roots_t r;
    check(sdw_char_roots(number(rho_text, "rho"), &r));
    json j = {{"rho", r.rho}, {"regime", sdw_regime_name(r.regime)},
              {"near_ring", r.near_ring != 0}, {"decay_part", r.decay_part}};
    if (r.regime == SDW_REGIME_OSCILLATORY) {
      j["osc_freq"] = r.osc_freq;
    } else {
      if (r.regime == SDW_REGIME_CRITICAL) j["lambda"] = r.lambda_plus;
      j["lambda_plus"] = r.lambda_plus;
      j["lambda_minus"] = r.lambda_minus;
    }
    return j.dump() + "\n";
  }

  std::string multiplier(const std::string& t_text, const std::string& rho_text, double a,
                         double b) {
    const double t = number(t_text, "t");
    const double rho = number(rho_text, "rho");
    double e0 = 0.0, e1 = 0.0, u = 0.0, ut = 0.0;
    check(sdw_propagators(t, rho, &e0, &e1));
    check(sdw_eval_state(t, rho, a, b, &u, &ut));
    json j = {{"t", t}, {"rho", rho}, {"E0", e0}, {"E1", e1},
              {"a", a}, {"b", b},     {"u_hat", u}, {"ut_hat", ut}};
    return j.dump() + "\n";
  }

  std::string energy(const std::string& config, const std::string& t_text) {
    const auto sc = load(config);
    sdw_energy_report_t r;
    check(sdw_energy_at(sc->h, number(t_text, "t"), &r));
    unreliable_ = r.reliable == 0;
    return report_json(r).dump() + "\n";
  }

  std::string series(const std::string& config) {
    const auto s = compute(config);
    if (!opts_.json_output)
      return read_buffer(
          [](void* h, char* buf, size_t* len) {
            return sdw_series_csv(static_cast<sdw_series_t>(h), buf, len);
          },
          s->h);
    size_t count = 0;
    check(sdw_series_size(s->h, &count));
    json rows = json::array();
    for (size_t i = 0; i < count; ++i) {
      sdw_energy_report_t r;
      check(sdw_series_get(s->h, i, &r));
      rows.push_back(report_json(r));
    }
    return rows.dump() + "\n";
  }

  std::string ratefit(const std::string& config) {
    const auto s = compute(config);
    sdw_rate_fit_t f;
    check(sdw_series_fit(s->h, &f));
    json j = {{"slope", f.slope},
              {"intercept", f.intercept},
              {"rmse", f.rmse},
              {"window", {f.t_min, f.t_max}},
              {"points", f.points}};
    return j.dump() + "\n";
  }

  std::string kernel(const std::string& n_text, const std::string& m_text,
                     const std::string& t_text) {
    const int n = integer(n_text, "n");
    const double m = number(m_text, "m");
    const double t = number(t_text, "t");
    double low = 0.0, sup = 0.0;
    check(sdw_kernel_low_norm(n, m, t, &low));
    check(sdw_kernel_sup(m, t, &sup));
    json j = {{"n", n}, {"m", m}, {"t", t}, {"low_norm", low}, {"sup", sup}};
    return j.dump() + "\n";
  }

  // Streams check lines as they arrive; returns whether all suites passed.
  bool verify(const std::vector<std::string>& suites, std::ostream& out) {
    std::vector<std::string> names = suites;
    if (names.empty())
      for (size_t i = 0; i < sdw_suite_count(); ++i) names.emplace_back(sdw_suite_name(i));
    bool all = true;
    struct Sink {
      std::ostream* out;
      std::size_t failed = 0;
    } sink{&out};
    for (const auto& name : names) {
      int passed = 0;
      sink.failed = 0;
      check(sdw_verify(
          name.c_str(), threads(),
          [](const sdw_check_t* c, void* user) {
            auto* s = static_cast<Sink*>(user);
            static const char* status[] = {"pass", "fail", "skip"};
            static const char* relation[] = {"within", "at_most", "at_least"};
            json j = {{"check", std::string(c->suite) + "/" + c->check},
                      {"status", status[c->status]},
                      {"measured", c->measured},
                      {"expected", c->expected},
                      {"tol", c->tol},
                      {"relation", relation[c->relation]}};
            if (c->note[0] != '\0') j["note"] = c->note;
            *s->out << j.dump() << '\n';
            if (c->status == SDW_CHECK_FAIL) ++s->failed;
          },
          &sink, &passed));
      out.flush();
      err_ << name << ": " << (passed ? "pass" : "FAIL");
      if (!passed) err_ << " (" << sink.failed << " failed checks)";
      err_ << '\n';
      all = all && passed;
    }
    return all;
  }

  bool unreliable() const { return unreliable_; }

 private:
  unsigned threads() const {
    if (opts_.threads > 0) return opts_.threads;
    return std::max(1u, std::thread::hardware_concurrency());
  }

  std::unique_ptr<ScenarioHandle> load(const std::string& path) {
    auto sc = std::make_unique<ScenarioHandle>();
    check(sdw_scenario_load(path.c_str(), &sc->h));
    if (opts_.tol > 0.0) {
      auto tuned = std::make_unique<ScenarioHandle>();
      check(sdw_scenario_with_tol(sc->h, opts_.tol, &tuned->h));
      return tuned;
    }
    return sc;
  }

  std::unique_ptr<SeriesHandle> compute(const std::string& config) {
    const auto sc = load(config);
    auto s = std::make_unique<SeriesHandle>();
    check(sdw_series_compute(sc->h, threads(), &s->h));
    int reliable = 1;
    check(sdw_series_reliable(s->h, &reliable));
    unreliable_ = reliable == 0;
    return s;
  }

  const Options& opts_;
  std::ostream& err_;
  bool unreliable_ = false;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral evolution and verification for u_tt - Δu + Δ²u_t = 0", "sdwave"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opts;
  app.add_option("--tol", opts.tol, "relative quadrature tolerance, overrides the scenario")
      ->check(CLI::Range(1e-13, 1e-3));
  app.add_option("--threads", opts.threads, "worker threads (default: all cores)")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--out", opts.out_path, "write output to this file instead of stdout");
  app.add_flag("--json", opts.json_output, "JSON output where CSV is the default");

  std::string rho, t, config, n_text, m_text;
  double a = 1.0, b = 0.0;
  std::vector<std::string> suites;

  auto* roots = app.add_subcommand("roots", "characteristic roots at radial frequency rho");
  roots->add_option("rho", rho)->required();
  auto* multiplier = app.add_subcommand("multiplier", "propagators and state at (t, rho)");
  multiplier->add_option("t", t)->required();
  multiplier->add_option("rho", rho)->required();
  multiplier->add_option("--a", a, "initial value of u-hat (default 1)");
  multiplier->add_option("--b", b, "initial value of u_t-hat (default 0)");
  auto* energy = app.add_subcommand("energy", "band energies of a scenario at time t");
  energy->add_option("config", config)->required();
  energy->add_option("t", t)->required();
  auto* series = app.add_subcommand("series", "energy time series of a scenario (CSV)");
  series->add_option("config", config)->required();
  auto* ratefit = app.add_subcommand("ratefit", "log-log decay fit of a scenario's series");
  ratefit->add_option("config", config)->required();
  auto* kernel = app.add_subcommand("kernel", "low-band kernel norm and high-band kernel sup");
  kernel->add_option("n", n_text)->required();
  kernel->add_option("m", m_text)->required();
  kernel->add_option("t", t)->required();
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suites, "suite to run (repeatable; default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sdwave: " << e.what() << '\n' << "run 'sdwave --help' for usage\n";
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!opts.out_path.empty()) {
    file.open(opts.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "sdwave: cannot open '" << opts.out_path << "' for writing\n";
      return kExitUsage;
    }
    sink = &file;
  }

  Runner runner(opts, err);
  try {
    if (*verify) {
      for (const auto& s : suites) {
        bool known = false;
        for (size_t i = 0; i < sdw_suite_count(); ++i) known = known || s == sdw_suite_name(i);
        if (!known) throw Failure{kExitUsage, "unknown suite '" + s + "'"};
      }
      const bool ok = runner.verify(suites, *sink);
      return ok ? kExitOk : kExitVerifyFailed;
    }
    std::string text;
    if (*roots) text = runner.roots(rho);
    if (*multiplier) text = runner.multiplier(t, rho, a, b);
    if (*energy) text = runner.energy(config, t);
    if (*series) text = runner.series(config);
    if (*ratefit) text = runner.ratefit(config);
    if (*kernel) text = runner.kernel(n_text, m_text, t);
    *sink << text;
    sink->flush();
    if (runner.unreliable()) {
      err << "sdwave: quadrature did not certify every value (refinement limit reached)\n";
      return kExitNumerical;
    }
    return kExitOk;
  } catch (const Failure& f) {
    err << "sdwave: " << f.message << '\n';
    return f.exit_code;
  }
}

}  // namespace sdwave::cli
