// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include <doctest.h>

#include "spde/path.hpp"

using namespace spde;

TEST_CASE("uniform grid covers the horizon with a shortened last step") {
  const auto g = make_grid(1.0, 0.3);
  REQUIRE(g->points() == 5);
  CHECK(g->t.front() == 0.0);
  CHECK(g->T() == 1.0);
  CHECK(g->dt[0] == doctest::Approx(0.3));
  CHECK(g->dt[3] == doctest::Approx(0.1));

  const auto exact = make_grid(1.0, 0.25);
  CHECK(exact->steps() == 4);
  CHECK(exact->T() == 1.0);

  const auto degenerate = make_grid(0.0, 0.1);
  CHECK(degenerate->points() == 1);
  CHECK(degenerate->t[0] == 0.0);
}

TEST_CASE("grid augmentation inserts exact extras once") {
  const auto base = make_grid(1.0, 0.25);
  const double extras[] = {0.1, 0.25, 0.7, 0.1};
  const auto g = augment_grid(base, extras);
  // 0.25 already present, 0.1 duplicated: two genuinely new points
  CHECK(g->points() == base->points() + 2);
  CHECK(grid_contains(*g, *base));
  CHECK(!grid_contains(*base, *g));
  bool has = false;
  for (double t : g->t) has = has || t == 0.7;
  CHECK(has);
}

TEST_CASE("path distances and sups") {
  const auto b = SpectralBasis::make(3, 4);
  const auto g = make_grid(0.2, 0.1);
  CoeffPath x = CoeffPath::zeros(g, 3), y = CoeffPath::zeros(g, 3);
  x.row(1)[0] = 3.0;
  x.row(2)[2] = 1.0;
  y.row(1)[1] = 4.0;
  CHECK(sup_l2_dist(x, y) == doctest::Approx(5.0).epsilon(1e-15));

  const auto other = make_grid(0.2, 0.1);
  CHECK_THROWS_AS(sup_l2_dist(x, CoeffPath::zeros(other, 3)),
                  std::invalid_argument);

  CHECK(path_sup_lq(x, *b, 2.0) == doctest::Approx(3.0).epsilon(1e-12));
  LeftLimit big;
  big.index = 2;
  big.coeffs = {7.0, 0.0, 0.0};
  const LeftLimit lefts[] = {big};
  CHECK(path_sup_lq(x, *b, 2.0, lefts) == doctest::Approx(7.0).epsilon(1e-12));
}
