#include "scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "errors.hpp"

namespace sdwave {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void config_error(int line, const std::string& what) {
  fail(ErrorCode::Config, "line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& text, int line) {
  const std::string s = trim(text);
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v))
    config_error(line, "expected a finite number, got '" + s + "'");
  return v;
}

std::pair<double, double> parse_pair(const std::string& text, int line) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) config_error(line, "expected two comma-separated numbers");
  return {parse_number(text.substr(0, comma), line), parse_number(text.substr(comma + 1), line)};
}

struct ProfileDraft {
  int line = 0;
  std::string kind = "zero";
  std::map<std::string, std::pair<double, int>> values;
};

SpectralProfile build_profile(const ProfileDraft& d, const char* section) {
  const auto need = [&](const char* key) {
    const auto it = d.values.find(key);
    if (it == d.values.end())
      config_error(d.line, std::string("[") + section + "] " + d.kind + " requires '" + key + "'");
    return it->second.first;
  };
  const auto opt = [&](const char* key, double fallback) {
    const auto it = d.values.find(key);
    return it == d.values.end() ? fallback : it->second.first;
  };
  const auto only = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, v] : d.values) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok)
        config_error(v.second, "key '" + key + "' does not apply to kind " + d.kind);
    }
  };
  try {
    if (d.kind == "zero") {
      only({});
      return SpectralProfile::zero();
    }
    if (d.kind == "gaussian") {
      only({"sigma", "amplitude"});
      return SpectralProfile::gaussian(opt("sigma", 1.0), opt("amplitude", 1.0));
    }
    if (d.kind == "power_tail") {
      only({"exponent", "amplitude"});
      return SpectralProfile::power_tail(need("exponent"), opt("amplitude", 1.0));
    }
    if (d.kind == "shell") {
      only({"center", "half_width", "amplitude"});
      return SpectralProfile::shell(need("center"), need("half_width"), opt("amplitude", 1.0));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Config) throw;
    config_error(d.line, std::string("[") + section + "] " + e.what());
  }
  config_error(d.line, "unknown profile kind '" + d.kind + "'");
}

void emit_profile(std::ostringstream& out, const char* section, const SpectralProfile& p) {
  out << '\n' << '[' << section << "]\n";
  out << "kind = " << profile_kind_name(p.kind()) << '\n';
  if (const auto* g = std::get_if<GaussianParams>(&p.params())) {
    out << "sigma = " << format_double(g->sigma) << '\n';
    out << "amplitude = " << format_double(g->amplitude) << '\n';
  } else if (const auto* q = std::get_if<PowerTailParams>(&p.params())) {
    out << "exponent = " << format_double(q->exponent) << '\n';
    out << "amplitude = " << format_double(q->amplitude) << '\n';
  } else if (const auto* s = std::get_if<ShellParams>(&p.params())) {
    out << "center = " << format_double(s->center) << '\n';
    out << "half_width = " << format_double(s->half_width) << '\n';
    out << "amplitude = " << format_double(s->amplitude) << '\n';
  }
}

}  // namespace

const char* fit_target_name(FitTarget target) noexcept {
  switch (target) {
    case FitTarget::Total: return "total";
    case FitTarget::Low: return "low";
    case FitTarget::Mid: return "mid";
    case FitTarget::High: return "high";
  }
  return "?";
}

Scenario parse_scenario(const std::string& text) {
  Scenario sc;
  ProfileDraft drafts[2];
  bool seen_section[2] = {false, false};
  std::map<std::string, int> seen_keys;
  int section = -1;  // -1 top level, 0 = u0, 1 = u1
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s == "[u0]")
        section = 0;
      else if (s == "[u1]")
        section = 1;
      else
        config_error(line, "unknown section " + s);
      if (seen_section[section]) config_error(line, "duplicate section " + s);
      seen_section[section] = true;
      drafts[section].line = line;
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) config_error(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    const std::string scoped = (section < 0 ? "" : section == 0 ? "u0." : "u1.") + key;
    if (!seen_keys.emplace(scoped, line).second) config_error(line, "duplicate key '" + key + "'");

    if (section >= 0) {
      auto& d = drafts[section];
      if (key == "kind")
        d.kind = value;
      else if (key == "sigma" || key == "amplitude" || key == "exponent" || key == "center" ||
               key == "half_width")
        d.values[key] = {parse_number(value, line), line};
      else
        config_error(line, "unknown profile key '" + key + "'");
      continue;
    }
    if (key == "n") {
      const double v = parse_number(value, line);
      if (v != std::floor(v) || v < 1 || v > 64) config_error(line, "n must be an integer in [1, 64]");
      sc.n = static_cast<int>(v);
    } else if (key == "t0") {
      sc.t0 = parse_number(value, line);
      if (!(sc.t0 > 0.0)) config_error(line, "t0 must be > 0");
    } else if (key == "ratio") {
      sc.ratio = parse_number(value, line);
      if (!(sc.ratio > 1.0)) config_error(line, "ratio must be > 1");
    } else if (key == "steps") {
      const double v = parse_number(value, line);
      if (v != std::floor(v) || v < 1 || v > double(kMaxGridSize))
        config_error(line, "steps must be an integer in [1, 10000]");
      sc.steps = static_cast<std::size_t>(v);
    } else if (key == "rel_tol") {
      sc.rel_tol = parse_number(value, line);
      if (!(sc.rel_tol >= kMinRelTol && sc.rel_tol <= kMaxRelTol))
        config_error(line, "rel_tol must lie in [1e-13, 1e-3]");
    } else if (key == "fit_window") {
      const auto [lo, hi] = parse_pair(value, line);
      if (!(lo > 0.0 && hi > lo)) config_error(line, "fit_window requires 0 < min < max");
      sc.fit_min = lo;
      sc.fit_max = hi;
    } else if (key == "bands") {
      const auto [a, b] = parse_pair(value, line);
      if (!(a > 0.0 && b > a)) config_error(line, "bands requires 0 < low_mid < mid_high");
      sc.bands = {a, b};
    } else if (key == "fit_target") {
      if (value == "total")
        sc.fit_target = FitTarget::Total;
      else if (value == "low")
        sc.fit_target = FitTarget::Low;
      else if (value == "mid")
        sc.fit_target = FitTarget::Mid;
      else if (value == "high")
        sc.fit_target = FitTarget::High;
      else
        config_error(line, "fit_target must be total, low, mid or high");
    } else {
      config_error(line, "unknown key '" + key + "'");
    }
  }
  sc.u0 = build_profile(drafts[0], "u0");
  sc.u1 = build_profile(drafts[1], "u1");
  if (!std::isfinite(sc.t0 * std::pow(sc.ratio, double(sc.steps - 1))))
    fail(ErrorCode::Config, "time grid overflows");
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& sc) {
  std::ostringstream out;
  out << "n = " << sc.n << '\n';
  out << "t0 = " << format_double(sc.t0) << '\n';
  out << "ratio = " << format_double(sc.ratio) << '\n';
  out << "steps = " << sc.steps << '\n';
  out << "rel_tol = " << format_double(sc.rel_tol) << '\n';
  out << "fit_window = " << format_double(sc.fit_min) << ", " << format_double(sc.fit_max) << '\n';
  out << "bands = " << format_double(sc.bands.low_mid) << ", "
      << format_double(sc.bands.mid_high) << '\n';
  out << "fit_target = " << fit_target_name(sc.fit_target) << '\n';
  emit_profile(out, "u0", sc.u0);
  emit_profile(out, "u1", sc.u1);
  return out.str();
}

std::vector<double> scenario_grid(const Scenario& sc) {
  return geometric_grid(sc.t0, sc.ratio, sc.steps);
}

std::vector<double> fit_column(const std::vector<EnergyReport>& reports, FitTarget target) {
  std::vector<double> out;
  out.reserve(reports.size());
  for (const auto& r : reports) {
    switch (target) {
      case FitTarget::Total: out.push_back(r.e_total); break;
      case FitTarget::Low: out.push_back(r.e_low); break;
      case FitTarget::Mid: out.push_back(r.e_mid); break;
      case FitTarget::High: out.push_back(r.e_high); break;
    }
  }
  return out;
}

}  // namespace sdwave
