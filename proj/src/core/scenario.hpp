#pragma once

// Scenario files: flat `key = value` lines, `#` comments, and [u0] / [u1]
// sections describing the two profiles. Unknown keys are rejected.
//
//   n = 1
//   t0 = 0.0625
//   ratio = 2
//   steps = 61
//   rel_tol = 1e-8
//   fit_window = 1000, 1000000
//   bands = 1, 1.4142135623730951
//   fit_target = total
//
//   [u1]
//   kind = gaussian
//   sigma = 1

#include <cstddef>
#include <string>
#include <vector>

#include "energy.hpp"
#include "profiles.hpp"

namespace sdwave {

enum class FitTarget { Total, Low, Mid, High };

const char* fit_target_name(FitTarget target) noexcept;

struct Scenario {
  int n = 1;
  SpectralProfile u0;
  SpectralProfile u1;
  double t0 = 0.0625;
  double ratio = 2.0;
  std::size_t steps = 61;
  double rel_tol = 1e-8;
  BandSplits bands;
  double fit_min = 1e3;
  double fit_max = 1e6;
  FitTarget fit_target = FitTarget::Total;

  bool operator==(const Scenario&) const = default;
};

/// Throws Error(Config) with the offending line number.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& scenario);

std::vector<double> scenario_grid(const Scenario& scenario);

/// Column selected by fit_target.
std::vector<double> fit_column(const std::vector<EnergyReport>& reports, FitTarget target);

}  // namespace sdwave
