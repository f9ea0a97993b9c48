#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "sdwave");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = sdwave::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("sdwave-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

const char* kGaussian =
    "n = 1\nt0 = 1\nratio = 4\nsteps = 12\nrel_tol = 1e-8\n[u1]\nkind = gaussian\n";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("roots") {
    const auto ring = run({"roots", "1.259921049894873"});
    REQUIRE(ring.code == sdwave::cli::kExitOk);
    const auto j = json::parse(ring.out);
    CHECK(j["regime"] == "Critical");
    CHECK(j["lambda"].get<double>() == doctest::Approx(-1.259921049894873).epsilon(1e-14));

    const auto hyp = json::parse(run({"roots", "10"}).out);
    CHECK(hyp["regime"] == "Hyperbolic");
    CHECK(hyp["lambda_plus"].get<double>() ==
          doctest::Approx(-0.01000001000002000005).epsilon(1e-15));

    CHECK(run({"roots", "-1"}).code == sdwave::cli::kExitUsage);
    CHECK(run({"roots", "abc"}).code == sdwave::cli::kExitUsage);
    CHECK(run({}).code == sdwave::cli::kExitUsage);
  }

  TEST_CASE("multiplier and kernel") {
    const auto m = run({"multiplier", "2", "1.5"});
    REQUIRE(m.code == 0);
    CHECK(json::parse(m.out)["u_hat"].get<double>() ==
          doctest::Approx(0.41866069510369294678).epsilon(1e-14));
    const auto k = run({"kernel", "1", "0", "16"});
    REQUIRE(k.code == 0);
    const auto j = json::parse(k.out);
    CHECK(j["low_norm"].get<double>() == doctest::Approx(0.95205171796919850572).epsilon(1e-13));
    CHECK(j["sup"].get<double>() == 1.0);
    CHECK(run({"kernel", "0", "0", "16"}).code == sdwave::cli::kExitUsage);
  }

  TEST_CASE("series and energy") {
    TempDir dir;
    const auto cfg = dir.write("g.cfg", kGaussian);
    const auto s = run({"series", cfg});
    REQUIRE(s.code == 0);
    std::istringstream lines(s.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t,e_low,e_mid,e_high,e_total,err_bound");
    double prev = 1e300;
    int rows = 0;
    while (std::getline(lines, line)) {
      std::vector<double> cols;
      std::istringstream cs(line);
      for (std::string c; std::getline(cs, c, ',');) cols.push_back(std::stod(c));
      REQUIRE(cols.size() == 6);
      CHECK(cols[4] <= prev + 2.0 * cols[5]);
      prev = cols[4];
      ++rows;
    }
    CHECK(rows == 12);

    const auto js = run({"--json", "series", cfg});
    REQUIRE(js.code == 0);
    CHECK(json::parse(js.out).size() == 12);

    const auto e = run({"--tol", "1e-10", "energy", cfg, "0"});
    REQUIRE(e.code == 0);
    CHECK(json::parse(e.out)["e_total"].get<double>() ==
          doctest::Approx(1.2533141373155002512).epsilon(1e-9));
    CHECK(run({"--tol", "1e-20", "energy", cfg, "0"}).code == sdwave::cli::kExitUsage);
  }

  TEST_CASE("thread count does not change the bytes") {
    TempDir dir;
    const auto cfg = dir.write("g.cfg", kGaussian);
    REQUIRE(run({"--threads", "1", "--out", dir.path("a.csv"), "series", cfg}).code == 0);
    REQUIRE(run({"--threads", "8", "--out", dir.path("b.csv"), "series", cfg}).code == 0);
    const auto a = slurp(dir.path("a.csv"));
    CHECK(a.size() > 100);
    CHECK(a == slurp(dir.path("b.csv")));
  }

  TEST_CASE("ratefit") {
    TempDir dir;
    const auto cfg = dir.write("g.cfg", kGaussian);
    const auto r = run({"ratefit", cfg});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["points"] == 5);
    CHECK(j["slope"].get<double>() == doctest::Approx(-0.25).epsilon(0.05));
  }

  TEST_CASE("failures map to exit codes") {
    TempDir dir;
    CHECK(run({"series", dir.write("bad.cfg", "n = 1\nbogus = 3\n")}).code ==
          sdwave::cli::kExitUsage);
    CHECK(run({"series", dir.path("missing.cfg")}).code == sdwave::cli::kExitUsage);
    const auto div = run({"energy", dir.write("div.cfg", "[u0]\nkind = power_tail\nexponent = 0.4\n"),
                          "1"});
    CHECK(div.code == sdwave::cli::kExitNumerical);
    CHECK_FALSE(div.err.empty());
  }

  TEST_CASE("verify") {
    const auto ok = run({"verify", "--suite", "inequalities"});
    CHECK(ok.code == 0);
    std::istringstream lines(ok.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
      const auto j = json::parse(line);
      CHECK(j["check"].get<std::string>().rfind("inequalities/", 0) == 0);
      CHECK(j["status"] == "pass");
      ++count;
    }
    CHECK(count > 100);
    CHECK(run({"verify", "--suite", "nope"}).code == sdwave::cli::kExitUsage);
  }
}
