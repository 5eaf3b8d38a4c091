// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include <doctest.h>

#include "spde/monotone.hpp"
#include "spde/rng.hpp"

using namespace spde;

// Bisection to 50 decimal digits, frozen before the solver was written:
//   y + 0.5 y^3 = 2   ->  y = 1.17950902460291676855...
//   y + 0.1 y^3 = 1   ->  y = 0.92169899420467863181...
TEST_CASE("resolvent reproduces high-precision roots") {
  const MonotoneFn f = cubic_drift();
  CHECK(resolvent(f, 0.5, 2.0) ==
        doctest::Approx(1.1795090246029167685576).epsilon(1e-14));
  CHECK(resolvent(f, 0.1, 1.0) ==
        doctest::Approx(0.9216989942046786318121).epsilon(1e-14));
  CHECK(yosida(f, 0.1, 1.0) ==
        doctest::Approx(0.7830100579532136818787).epsilon(1e-12));
}

TEST_CASE("linear drift has closed-form resolvent") {
  const MonotoneFn f = linear_drift(2.0);
  for (const double r : {-3.0, -0.1, 0.0, 0.7, 5.0}) {
    CHECK(resolvent(f, 0.25, r) == doctest::Approx(r / 1.5).epsilon(1e-14));
    CHECK(yosida(f, 0.25, r) ==
          doctest::Approx(2.0 * r / 1.5).epsilon(1e-13));
  }
}

TEST_CASE("regularized drift is Lipschitz, dominated and monotone in lambda") {
  const MonotoneFn fns[] = {linear_drift(1.0), cubic_drift(), power_drift(4.0),
                            linear_plus_cubic_drift()};
  Rng rng(99);
  for (const MonotoneFn& f : fns) {
    for (const double lambda : {1.0, 0.1, 0.01}) {
      for (int i = 0; i < 500; ++i) {
        const double x = 6.0 * rng.uniform01() - 3.0;
        const double y = 6.0 * rng.uniform01() - 3.0;
        const double dfl = std::abs(yosida(f, lambda, x) - yosida(f, lambda, y));
        CHECK(dfl <= (2.0 / lambda) * std::abs(x - y) + 1e-9);
      }
    }
    for (int i = 0; i <= 60; ++i) {
      const double r = -3.0 + 0.1 * i;
      double prev = 0.0;
      for (const double lambda : {1.0, 0.1, 0.01}) {
        const double fl = yosida(f, lambda, r);
        CHECK(std::abs(fl) <= std::abs(f.eval(r)) + 1e-9);
        // |f_lambda| grows toward |f| as the regularization is removed
        CHECK(std::abs(fl) >= std::abs(prev) - 1e-9);
        CHECK(fl * f.eval(r) >= -1e-12);  // same sign
        prev = fl;
      }
      CHECK(std::abs(yosida(f, 1e-7, r) - f.eval(r)) <
            1e-4 * (1.0 + std::abs(f.eval(r))));
    }
  }
}

TEST_CASE("root solve reports failure with its bracket") {
  MonotoneFn f = cubic_drift();
  RootOptions o;
  o.max_iter = 2;
  o.tol = 1e-15;
  try {
    resolvent(f, 1.0, 100.0, o);
    FAIL("expected RootFailure");
  } catch (const RootFailure& e) {
    CHECK(e.iterations <= 2);
    CHECK(e.bracket_lo <= e.bracket_hi);
    CHECK(e.residual > 0.0);
  }
}

TEST_CASE("drift catalogue passes its own sanity check") {
  for (const auto& f : {linear_drift(1.0), cubic_drift(), power_drift(4.0),
                        linear_plus_cubic_drift()})
    CHECK(check_monotone(f, 5.0).empty());

  MonotoneFn bad;
  bad.name = "decreasing";
  bad.eval = [](double r) { return -r; };
  bad.growth_p = 2.0;
  bad.growth_K = 1.0;
  CHECK(!check_monotone(bad, 2.0).empty());
}

TEST_CASE("growth exponent pairing") {
  CHECK(conjugate_growth(2.0) == doctest::Approx(2.0));
  CHECK(conjugate_growth(4.0) == doctest::Approx(8.0));
  CHECK(cubic_drift().growth_p == doctest::Approx(6.0));
  CHECK(power_drift(4.0).growth_p == doctest::Approx(4.0));
  // r |r|^{p/2-1} with p = 4 is r|r|
  CHECK(power_drift(4.0).eval(-2.0) == doctest::Approx(-4.0));
  CHECK(power_drift(4.0).eval(3.0) == doctest::Approx(9.0));
}
