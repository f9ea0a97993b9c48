#pragma once

// Verification suites: each suite runs one family of checks against
// independent oracles and reports every check through a sink.

#include <functional>
#include <string>
#include <vector>

namespace sdwave {

enum class CheckStatus { Pass, Fail, Skip };

const char* check_status_name(CheckStatus status) noexcept;

/// How measured is compared with expected.
enum class Relation { Within, AtMost, AtLeast };

const char* relation_name(Relation relation) noexcept;

struct CheckResult {
  std::string suite;
  std::string check;
  CheckStatus status = CheckStatus::Pass;
  Relation relation = Relation::Within;
  double measured = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  std::string note;
};

using CheckSink = std::function<void(const CheckResult&)>;

const std::vector<std::string>& suite_names();

/// Runs one suite; returns false when any check failed. Throws
/// Error(InvalidArgument) for an unknown suite name.
bool run_suite(const std::string& name, const CheckSink& sink, unsigned threads = 1);

}  // namespace sdwave
