// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstring>
#include <vector>

#include <doctest.h>

#include "spde/rng.hpp"
#include "spde/spectral.hpp"

using namespace spde;

TEST_CASE("grid quadrature sees an orthonormal basis") {
  const auto b = SpectralBasis::make(8, 4);
  for (std::size_t j = 0; j < b->n_modes; ++j)
    for (std::size_t k = 0; k < b->n_modes; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < b->n_grid; ++i)
        s += b->h * b->e[j * b->n_grid + i] * b->e[k * b->n_grid + i];
      CHECK(std::abs(s - (j == k ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("analysis inverts synthesis exactly") {
  const auto b = SpectralBasis::make(16, 4);
  Rng rng(3);
  std::vector<double> coeffs(b->n_modes), grid(b->n_grid), back(b->n_modes);
  for (double& c : coeffs) c = rng.normal();
  synthesize(*b, coeffs, grid);
  analyze(*b, grid, back);
  for (std::size_t k = 0; k < b->n_modes; ++k)
    CHECK(back[k] == doctest::Approx(coeffs[k]).epsilon(1e-12));
}

TEST_CASE("quadrature L2 norm agrees with the coefficient norm") {
  const auto b = SpectralBasis::make(12, 4);
  Rng rng(8);
  Field u = Field::zero(b);
  for (double& c : u.a) c = rng.normal();
  CHECK(lp_norm(u, 2.0) ==
        doctest::Approx(l2_norm_coeffs(u.a)).epsilon(1e-10));
}

TEST_CASE("fourth-power norm of the first mode is (3/2)^(1/4)") {
  const auto b = SpectralBasis::make(4, 4);
  const std::pair<std::size_t, double> m[] = {{std::size_t{1}, 1.0}};
  const Field u = Field::from_modes(b, m);
  CHECK(lp_norm(u, 4.0) ==
        doctest::Approx(1.1066819197003215).epsilon(1e-13));
}

TEST_CASE("semigroup, resolvent and generator act per mode") {
  const auto b = SpectralBasis::make(6, 4);
  Rng rng(11);
  Field u = Field::zero(b);
  for (double& c : u.a) c = rng.normal();

  const Field su = apply_semigroup(0.01, u);
  for (std::size_t k = 0; k < b->n_modes; ++k)
    CHECK(su.a[k] ==
          doctest::Approx(std::exp(-b->alpha[k] * 0.01) * u.a[k]).epsilon(1e-14));

  // semigroup property S(s)S(t) = S(s+t)
  const Field ab = apply_semigroup(0.02, apply_semigroup(0.03, u));
  const Field once = apply_semigroup(0.05, u);
  for (std::size_t k = 0; k < b->n_modes; ++k)
    CHECK(ab.a[k] == doctest::Approx(once.a[k]).epsilon(1e-13));

  // resolvent inverts (I + eps A)
  const Field r = resolvent_A(0.05, u);
  const Field lhs = r + 0.05 * apply_A(r);
  for (std::size_t k = 0; k < b->n_modes; ++k)
    CHECK(lhs.a[k] == doctest::Approx(u.a[k]).epsilon(1e-13));

  CHECK_THROWS_AS(apply_semigroup(-1.0, u), std::invalid_argument);
  CHECK_THROWS_AS(resolvent_A(0.0, u), std::invalid_argument);
}

TEST_CASE("duality pairing is the L2 inner product at p = 2") {
  const auto b = SpectralBasis::make(8, 4);
  Rng rng(21);
  Field u = Field::zero(b), g = Field::zero(b);
  for (double& c : u.a) c = rng.normal();
  for (double& c : g.a) c = rng.normal();
  double dot = 0.0;
  for (std::size_t k = 0; k < b->n_modes; ++k) dot += u.a[k] * g.a[k];
  CHECK(duality_pairing(g, u, 2.0) == doctest::Approx(dot).epsilon(1e-10));

  // scaling u by c scales the pairing by c for every p
  const double p4 = duality_pairing(g, u, 4.0);
  CHECK(duality_pairing(g, 2.5 * u, 4.0) ==
        doctest::Approx(2.5 * p4).epsilon(1e-10));

  const Field z = Field::zero(b);
  CHECK_THROWS_AS(duality_pairing(g, z, 4.0), std::invalid_argument);
}

TEST_CASE("parallel kernels match the serial reference bitwise") {
  const auto b = SpectralBasis::make(64, 4);
  Rng rng(7);
  std::vector<double> coeffs(b->n_modes);
  for (double& c : coeffs) c = rng.normal();

  std::vector<double> g1(b->n_grid), g2(b->n_grid);
  synthesize(*b, coeffs, g1);
  reference::synthesize(*b, coeffs, g2);
  CHECK(std::memcmp(g1.data(), g2.data(), g1.size() * sizeof(double)) == 0);

  std::vector<double> a1(b->n_modes), a2(b->n_modes);
  analyze(*b, g1, a1);
  reference::analyze(*b, g1, a2);
  CHECK(std::memcmp(a1.data(), a2.data(), a1.size() * sizeof(double)) == 0);
}
