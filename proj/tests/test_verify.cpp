// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include <doctest.h>

#include "spde/verify.hpp"

using namespace spde;

TEST_CASE("sample mean and its standard error") {
  const double v[] = {1.0, 2.0, 3.0};
  const MeanSE m = mean_se(v);
  CHECK(m.mean == doctest::Approx(2.0));
  CHECK(m.se == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(m.n == 3);
}

TEST_CASE("least squares recovers an exact line with a collapsed interval") {
  const double x[] = {0.0, 1.0, 2.0, 3.0};
  const double y[] = {1.0, 3.0, 5.0, 7.0};
  const SlopeFit f = ols(x, y);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.se == doctest::Approx(0.0));
  CHECK(f.ci_lo == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(f.ci_hi == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("log-log fit reads off a power law") {
  const double x[] = {1.0, 2.0, 4.0, 8.0};
  double y[4];
  for (int i = 0; i < 4; ++i) y[i] = 3.0 * std::pow(x[i], 1.5);
  const SlopeFit f = ols_loglog(x, y);
  CHECK(f.slope == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("the interval width uses the t distribution") {
  CHECK(t_quantile_975(1) == doctest::Approx(12.706));
  CHECK(t_quantile_975(10) == doctest::Approx(2.228));
  CHECK(t_quantile_975(30) == doctest::Approx(2.042));
  CHECK(t_quantile_975(1000) == doctest::Approx(1.960));
}

TEST_CASE("rank correlation with midrank ties") {
  const double up[] = {0.1, 0.2, 0.5, 0.9};
  const double down[] = {4.0, 3.0, 2.0, 1.0};
  const double flat[] = {1.0, 1.0, 1.0, 1.0};
  CHECK(spearman(up, down) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(spearman(up, up) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spearman(up, flat) == doctest::Approx(0.0));

  const double tied[] = {1.0, 2.0, 2.0, 3.0};
  const double ys[] = {1.0, 2.0, 3.0, 4.0};
  CHECK(spearman(tied, ys) ==
        doctest::Approx(0.9486832980505138).epsilon(1e-12));
}

TEST_CASE("sup-moment estimator raises sups to the requested power") {
  const double sups[] = {1.0, 2.0};
  const MeanSE m = estimate_sup_moment(sups, 2.0);
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.n == 2);
}
