// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "spde/spectral.hpp"

namespace spde {

// Partition 0 = t_0 < t_1 < ... < t_N = T.  Shared by every path of a
// realization; paths compare grids by pointer identity.
struct TimeGrid {
  std::vector<double> t;
  std::vector<double> dt;  // dt[j] = t[j+1] - t[j]

  double T() const { return t.back(); }
  std::size_t steps() const { return dt.size(); }
  std::size_t points() const { return t.size(); }
};

// Uniform grid with ceil(T/dt) steps (last step shortened if T/dt is not
// integral).  T == 0 yields the single point {0}.
std::shared_ptr<const TimeGrid> make_grid(double T, double dt);

// Union of base points and extra times in (0,T); duplicates dropped
// exactly (the extra times must be bitwise-reproducible by the caller).
std::shared_ptr<const TimeGrid> augment_grid(
    const std::shared_ptr<const TimeGrid>& base, std::span<const double> extra);

// Returns true if every point of `sub` occurs (bitwise) in `super`.
bool grid_contains(const TimeGrid& super, const TimeGrid& sub);

// Mode-coefficient path: row j holds the coefficients at t_j.
struct CoeffPath {
  std::shared_ptr<const TimeGrid> grid;
  std::size_t n_modes = 0;
  std::vector<double> a;  // grid->points() * n_modes, row-major

  std::span<double> row(std::size_t j) {
    return {a.data() + j * n_modes, n_modes};
  }
  std::span<const double> row(std::size_t j) const {
    return {a.data() + j * n_modes, n_modes};
  }
  static CoeffPath zeros(std::shared_ptr<const TimeGrid> g, std::size_t n_modes);
};

// Pre-jump value at grid index `index` (cadlag paths store their left
// limits only where they differ from the previous grid value's evolution).
struct LeftLimit {
  std::size_t index = 0;
  std::vector<double> coeffs;
};

// max over grid rows of the coefficient Euclidean distance (= L_2 distance).
double sup_l2_dist(const CoeffPath& x, const CoeffPath& y);

// max over grid rows (plus optional left limits) of the L_q(0,1) norm.
double path_sup_lq(const CoeffPath& u, const SpectralBasis& b, double q,
                   std::span<const LeftLimit> left = {});

}  // namespace spde
