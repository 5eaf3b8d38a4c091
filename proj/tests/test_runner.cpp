// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "spde/runner.hpp"

using namespace spde;
namespace fs = std::filesystem;

namespace {

Scenario tiny() {
  Scenario s;
  s.n_modes = 4;
  s.T = 0.2;
  s.dt = 0.002;
  s.lambdas = {0.1, 0.05, 0.025};
  s.samples = 4;
  s.continuity_lambda = 0.05;
  s.oracle_lambda = 0.1;
  s.oracle_samples = 2;
  s.oracle_refinements = 1;
  s.continuity_scales = {1.0, 0.5};
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f);
  std::ostringstream o;
  o << f.rdbuf();
  return o.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("one-realization run writes its artifact set") {
  const TempDir dir("spde_runner_sim");
  std::ostringstream log;
  const int rc = run_subcommand("simulate", tiny(), dir.path.string(), log);
  CHECK(rc == 0);
  for (const char* name :
       {"u_series.csv", "wa_series.csv", "ga_series.csv", "events.csv",
        "scenario.effective.ini", "summary.txt"})
    CHECK(fs::exists(dir.path / name));
  const std::string u = slurp(dir.path / "u_series.csv");
  CHECK(u.rfind("t[time],a_001[1],a_002[1],a_003[1],a_004[1]\n", 0) == 0);
  CHECK(log.str().find("PASS simulate") != std::string::npos);
  CHECK(slurp(dir.path / "summary.txt") == log.str());
}

TEST_CASE("experiment artifacts are byte-stable across reruns") {
  const TempDir d1("spde_runner_det1");
  const TempDir d2("spde_runner_det2");
  Scenario s = tiny();
  std::ostringstream l1, l2;
  const int r1 = run_subcommand("converge", s, d1.path.string(), l1);
  const int r2 = run_subcommand("converge", s, d2.path.string(), l2);
  CHECK(r1 == r2);
  for (const char* name : {"cauchy.csv", "converge_l0.csv",
                           "scenario.effective.ini", "summary.txt"})
    CHECK(slurp(d1.path / name) == slurp(d2.path / name));
}

TEST_CASE("invalid scenarios and unknown subcommands are rejected") {
  Scenario s = tiny();
  s.dt = -1.0;
  std::ostringstream log;
  CHECK_THROWS_AS(run_subcommand("simulate", s, "/tmp/spde_runner_bad", log),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_subcommand("flatten", tiny(), "/tmp/spde_runner_bad", log),
                  std::invalid_argument);
}
