// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "spde/scenario.hpp"

using namespace spde;

TEST_CASE("defaults are a runnable configuration") {
  const Scenario s;
  CHECK(validate(s).empty());
}

TEST_CASE("serialization round-trips exactly") {
  Scenario s;
  s.dt = 0.0017;
  s.lambdas = {0.3, 0.07, 0.011};
  s.drift_name = "power";
  s.drift_p = 4.0;
  s.atoms = {{2, 1.25, -0.75}};
  s.seed = 987654321;
  const std::string text = serialize_ini(s);
  const Scenario back = parse_scenario_ini(text);
  CHECK(serialize_ini(back) == text);
  CHECK(back.dt == s.dt);
  CHECK(back.lambdas == s.lambdas);
  CHECK(back.drift_name == "power");
  CHECK(back.seed == s.seed);
}

TEST_CASE("parser names the offending line") {
  try {
    parse_scenario_ini("[time]\nxyz\n");
    FAIL("expected parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_scenario_ini("[nosuch]\nx = 1\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario_ini("x = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario_ini("[time]\ndt = grape\n"),
                  std::invalid_argument);
  // comments and blank lines are fine
  const Scenario s =
      parse_scenario_ini("# header\n[time]\ndt = 0.002 ; inline\n\n");
  CHECK(s.dt == doctest::Approx(0.002));
}

TEST_CASE("overrides hit single fields") {
  Scenario s;
  apply_override(s, "time.dt=0.004");
  CHECK(s.dt == doctest::Approx(0.004));
  apply_override(s, "drift.name=linear");
  CHECK(s.drift_name == "linear");
  apply_override(s, "lambda.schedule=0.2,0.1");
  REQUIRE(s.lambdas.size() == 2);
  CHECK(s.lambdas[1] == doctest::Approx(0.1));
  CHECK_THROWS_AS(apply_override(s, "nodot"), std::invalid_argument);
  CHECK_THROWS_AS(apply_override(s, "time.bogus=1"), std::invalid_argument);
}

TEST_CASE("validation flags the usual misconfigurations") {
  Scenario s;
  s.dt = -1.0;
  CHECK(!validate(s).empty());

  Scenario tight;
  tight.lambdas = {0.1, 1e-4};  // contraction window below the step
  const auto bad = validate(tight);
  REQUIRE(!bad.empty());
  bool mentions = false;
  for (const auto& m : bad)
    mentions = mentions || m.find("contraction window") != std::string::npos;
  CHECK(mentions);

  Scenario inc;
  inc.lambdas = {0.05, 0.1};
  CHECK(!validate(inc).empty());

  Scenario route;
  route.route = "sideways";
  CHECK(!validate(route).empty());

  Scenario regime;
  regime.regime = "weak";
  CHECK(!validate(regime).empty());
}

TEST_CASE("problem assembly honors the declared data") {
  Scenario s;
  s.n_modes = 8;
  s.sigma = 2.0;
  s.beta = 0.5;
  const Problem p = build_problem(s);
  CHECK(p.basis->n_modes == 8);
  CHECK(p.wiener.b[0] == doctest::Approx(2.0));
  CHECK(p.wiener.b[3] == doctest::Approx(2.0 / std::sqrt(4.0)).epsilon(1e-12));
  REQUIRE(p.jumps.atoms.size() == 2);
  CHECK(p.jumps.atoms[0].weight == doctest::Approx(2.0));
  CHECK(p.jumps.atoms[0].mark.a[0] == doctest::Approx(0.5));
  CHECK(p.u0.a[0] == doctest::Approx(1.0));
  CHECK(p.u0.a[2] == doctest::Approx(0.5));

  const PicardOptions o = build_picard_options(s);
  CHECK(o.tol == doctest::Approx(1e-10));
  CHECK(o.route == PicardRoute::shifted);

  const std::vector<ApproxLevel> lv = build_levels(s);
  REQUIRE(lv.size() == s.gen_levels);
  CHECK(lv[1].clip_u0 == doctest::Approx(2.0 * lv[0].clip_u0));
  CHECK(lv.back().mode_cut <= s.n_modes);
}

TEST_CASE("regime echo reports the data norms behind the declaration") {
  Scenario s;
  s.n_modes = 4;
  const Problem p = build_problem(s);
  const RegimeEcho e = regime_echo(s, p);
  CHECK(e.declared == "strong");
  CHECK(e.p == doctest::Approx(6.0));       // cubic drift
  CHECK(e.p_star == doctest::Approx(18.0)); // p^2/2
  CHECK(e.u0_norm_p > 0.0);
  CHECK(e.B_norm.value > 0.0);
  CHECK(e.G_norm_pstar > 0.0);
}
