// Acceptance runner: one pass/fail line per criterion.
//
//   acceptance [--criterion N] [--cli PATH --config FILE --workdir DIR]
//
// Without --criterion every criterion runs. Criterion 10 additionally drives
// the command-line tool when --cli and --config are given.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "verify.hpp"

namespace fs = std::filesystem;
using namespace sdwave;

namespace {

struct Criterion {
  int id;
  const char* name;
  const char* suite;
};

constexpr Criterion kCriteria[] = {
    {1, "multiplier exactness", "multiplier-exactness"},
    {2, "ring continuity", "ring-continuity"},
    {3, "low-band kernel rate", "kernel-low"},
    {4, "high-band kernel sup rate", "kernel-sup"},
    {5, "low-band energy rate", "low-band"},
    {6, "middle-band exponential decay", "mid-band"},
    {7, "energy-space decay without rate", "energy-space"},
    {8, "regularity-loss rate", "regularity-loss"},
    {9, "pointwise multiplier inequalities", "inequalities"},
    {10, "engineering determinism", "determinism"},
};

struct Tally {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  std::vector<std::string> failures;
};

std::string describe(const CheckResult& r) {
  std::ostringstream s;
  s.precision(6);
  const char* rel = r.relation == Relation::Within ? "within" :
                    r.relation == Relation::AtMost ? "<=" : ">=";
  s << r.check << ": measured " << r.measured << ", expected " << rel << ' ' << r.expected;
  if (r.tol != 0.0) s << " (tol " << r.tol << ')';
  return s.str();
}

void record(Tally& tally, const CheckResult& r) {
  switch (r.status) {
    case CheckStatus::Pass: ++tally.passed; break;
    case CheckStatus::Skip: ++tally.skipped; break;
    case CheckStatus::Fail:
      ++tally.failed;
      tally.failures.push_back(describe(r));
      break;
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void cli_byte_identity(Tally& tally, const std::string& cli, const std::string& config,
                       const fs::path& workdir) {
  fs::create_directories(workdir);
  std::vector<std::string> outputs;
  for (int threads : {1, 8}) {
    const auto out = workdir / ("series-threads-" + std::to_string(threads) + ".csv");
    const std::string cmd = "\"" + cli + "\" --threads " + std::to_string(threads) + " --out \"" +
                            out.string() + "\" series \"" + config + "\"";
    const int rc = std::system(cmd.c_str());
    CheckResult r;
    r.suite = "determinism";
    r.check = "cli-series-threads-" + std::to_string(threads) + "/exit-code";
    r.relation = Relation::Within;
    r.measured = rc;
    r.expected = 0;
    r.status = rc == 0 ? CheckStatus::Pass : CheckStatus::Fail;
    record(tally, r);
    outputs.push_back(slurp(out));
  }
  CheckResult r;
  r.suite = "determinism";
  r.check = "cli-series-threads-1-vs-8/differing-bytes";
  r.relation = Relation::Within;
  std::size_t diff = outputs[0].size() == outputs[1].size() ? 0 : 1;
  for (std::size_t i = 0; i < std::min(outputs[0].size(), outputs[1].size()); ++i)
    diff += outputs[0][i] != outputs[1][i];
  r.measured = static_cast<double>(diff);
  r.expected = 0;
  r.status = diff == 0 && !outputs[0].empty() ? CheckStatus::Pass : CheckStatus::Fail;
  record(tally, r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("acceptance criteria");
  int only = 0;
  std::string cli;
  std::string config;
  std::string workdir = (fs::temp_directory_path() / "sdwave-acceptance").string();
  bool verbose = false;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  app.add_option("--cli", cli, "path of the sdwave executable");
  app.add_option("--config", config, "scenario used for the byte-identity check");
  app.add_option("--workdir", workdir, "scratch directory for CLI output");
  app.add_flag("--verbose", verbose, "print every failing check");
  CLI11_PARSE(app, argc, argv);

  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  int failed_criteria = 0;
  for (const auto& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    Tally tally;
    run_suite(c.suite, [&](const CheckResult& r) { record(tally, r); }, threads);
    if (c.id == 10 && !cli.empty() && !config.empty()) cli_byte_identity(tally, cli, config, workdir);

    const int total = tally.passed + tally.failed;
    if (tally.failed == 0) {
      std::printf("[PASS] criterion %d %s: %d/%d checks passed", c.id, c.name, tally.passed, total);
      if (tally.skipped) std::printf(", %d skipped", tally.skipped);
      std::printf("\n");
    } else {
      ++failed_criteria;
      std::printf("[FAIL] criterion %d %s: %d/%d checks failed (first: %s)\n", c.id, c.name,
                  tally.failed, total, tally.failures.front().c_str());
      for (std::size_t i = 1; verbose && i < tally.failures.size(); ++i)
        std::printf("       %s\n", tally.failures[i].c_str());
    }
  }
  return failed_criteria == 0 ? 0 : 1;
}
