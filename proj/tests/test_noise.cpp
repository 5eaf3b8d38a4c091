// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include <doctest.h>

#include "spde/noise.hpp"
#include "spde/rng.hpp"

using namespace spde;

namespace {

JumpSpec one_atom(std::shared_ptr<const SpectralBasis> b, std::size_t mode,
                  double weight, double amp) {
  JumpSpec spec;
  JumpSpec::Atom a;
  a.weight = weight;
  const std::pair<std::size_t, double> m[] = {{mode, amp}};
  a.mark = Field::from_modes(b, m);
  spec.atoms.push_back(std::move(a));
  return spec;
}

}  // namespace

TEST_CASE("poisson stream matches its intensity and mark law") {
  const auto b = SpectralBasis::make(4, 4);
  JumpSpec spec = one_atom(b, 1, 6.0, 1.0);
  {
    JumpSpec::Atom a2;
    a2.weight = 2.0;
    const std::pair<std::size_t, double> m[] = {{std::size_t{2}, -1.0}};
    a2.mark = Field::from_modes(b, m);
    spec.atoms.push_back(std::move(a2));
  }
  const double T = 1.0, theta = spec.total_intensity();
  CHECK(theta == doctest::Approx(8.0));

  const int reps = 2000;
  double count = 0.0, first_atom = 0.0;
  for (int i = 0; i < reps; ++i) {
    const PoissonStream s =
        sample_poisson_stream(T, spec, derive_seed(9, stream_tag::poisson, i));
    CHECK(s.horizon == T);
    double prev = 0.0;
    for (const auto& ev : s.events) {
      CHECK(ev.time > prev);
      CHECK(ev.time < T);
      prev = ev.time;
      REQUIRE(ev.atom < 2);
      count += 1.0;
      if (ev.atom == 0) first_atom += 1.0;
    }
  }
  const double mean_count = count / reps;
  CHECK(std::abs(mean_count - theta * T) <
        5.0 * std::sqrt(theta * T / reps));
  // atom 0 carries 6/8 of the intensity
  CHECK(std::abs(first_atom / count - 0.75) < 0.03);
}

TEST_CASE("brownian increments accumulate to the right variance") {
  const auto grid = make_grid(1.0, 0.05);
  const int reps = 2000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < reps; ++i) {
    const WienerIncrements w = sample_wiener_increments(grid, 2, 1000 + i);
    double wt = 0.0;
    for (std::size_t j = 0; j < grid->steps(); ++j) wt += w.dw[j * 2 + 0];
    s1 += wt;
    s2 += wt * wt;
  }
  CHECK(std::abs(s1 / reps) < 5.0 / std::sqrt(static_cast<double>(reps)));
  CHECK(std::abs(s2 / reps - 1.0) < 5.0 * std::sqrt(2.0 / reps));
}

TEST_CASE("joint draw couples the increment and its decayed integral") {
  // One step of length 0.1: E[dw * eta0] = (1 - e^{-alpha d}) / alpha.
  const double alpha[] = {9.8696044010893586};  // pi^2
  const auto grid = make_grid(0.1, 0.1);
  const double d = 0.1;
  const double q = (1.0 - std::exp(-alpha[0] * d)) / alpha[0];
  const int reps = 5000;
  double s = 0.0;
  for (int i = 0; i < reps; ++i) {
    const WienerRealization w = sample_wiener(grid, alpha, 500 + i);
    REQUIRE(w.dw.size() == 1);
    s += w.dw[0] * w.eta0[0];
  }
  CHECK(std::abs(s / reps - q) < 0.007);
}

TEST_CASE("coarsening is exact on nested grids") {
  const double alpha[] = {9.8696044010893586, 39.478417604357434};
  const double T = 0.5;
  const auto fine = make_grid(T, T / 256.0);
  const auto coarse = make_grid(T, T / 64.0);
  REQUIRE(grid_contains(*fine, *coarse));
  const WienerRealization wf = sample_wiener(fine, alpha, 4242);
  const WienerRealization wc = coarsen_wiener(wf, coarse, alpha);

  for (std::size_t k = 0; k < 2; ++k) {
    // the OU recursion along the fine grid visited at coarse points equals
    // the recursion along the coarse grid with the aggregated increments
    std::vector<double> xf(fine->points(), 0.0);
    for (std::size_t j = 0; j < fine->steps(); ++j)
      xf[j + 1] =
          std::exp(-alpha[k] * fine->dt[j]) * xf[j] + wf.eta0[j * 2 + k];
    double xc = 0.0, bf = 0.0, bc = 0.0;
    std::size_t fj = 0;
    for (std::size_t j = 0; j < coarse->steps(); ++j) {
      xc = std::exp(-alpha[k] * coarse->dt[j]) * xc + wc.eta0[j * 2 + k];
      bc += wc.dw[j * 2 + k];
      while (fine->t[fj] != coarse->t[j + 1]) {
        bf += wf.dw[fj * 2 + k];
        ++fj;
      }
      CHECK(std::abs(xc - xf[fj]) < 1e-13);
      CHECK(std::abs(bc - bf) < 1e-13);
    }
  }
}

TEST_CASE("two-term jump norm closed forms") {
  const auto b = SpectralBasis::make(4, 4);
  // single atom, weight 2, mark 0.5 e_1, T = 1:
  // ||g||_4^4 = 0.5^4 * 1.5, ||g||_4^2 = 0.25 sqrt(1.5)
  // norm^4 = 2*0.0625*1.5 + (2*0.25*sqrt(1.5))^2 = 0.1875 + 0.375 = 0.5625
  const JumpSpec spec = one_atom(b, 1, 2.0, 0.5);
  CHECK(norm_G_Lmq(spec, 4.0, 1.0) ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  // q = 2 collapses to sqrt(2 T sum w ||g||_2^2)
  CHECK(norm_G_Lmq(spec, 2.0, 1.0) ==
        doctest::Approx(std::sqrt(2.0 * 2.0 * 0.25)).epsilon(1e-12));
  // q-homogeneity: scaling every mark by c scales the norm by c
  JumpSpec scaled = one_atom(b, 1, 2.0, 1.5);
  CHECK(norm_G_Lmq(scaled, 4.0, 1.0) ==
        doctest::Approx(3.0 * norm_G_Lmq(spec, 4.0, 1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(norm_G_Lmq(spec, 1.5, 1.0), std::invalid_argument);
}

TEST_CASE("gaussian operator norm: exact at p=2, sampled otherwise") {
  const auto b = SpectralBasis::make(3, 4);
  WienerSpec w;
  w.b = {0.5, 0.3, 0.1};
  const NormEstimate hs = norm_B_gamma(w, 2.0, 2.0, *b, 4.0, 100, 1);
  CHECK(hs.standard_error == 0.0);
  CHECK(hs.value ==
        doctest::Approx(std::sqrt(4.0) * std::sqrt(0.25 + 0.09 + 0.01))
            .epsilon(1e-14));

  // single mode into L4: E||gamma b e_1||_4^2 = b^2 ||e_1||_4^2, so the
  // norm is |b| ||e_1||_4 = (3/2)^(1/4) for b = 1
  const auto b1 = SpectralBasis::make(1, 4);
  WienerSpec one;
  one.b = {1.0};
  const NormEstimate g4 = norm_B_gamma(one, 4.0, 4.0, *b1, 1.0, 4000, 77);
  CHECK(g4.draws == 4000);
  CHECK(g4.standard_error > 0.0);
  CHECK(std::abs(g4.value - 1.1066819197003215) < 5.0 * g4.standard_error);
}
