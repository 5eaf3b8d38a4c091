// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include "spde/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spde {

std::shared_ptr<const TimeGrid> make_grid(double T, double dt) {
  if (T < 0.0) throw std::invalid_argument("make_grid: T must be >= 0");
  auto g = std::make_shared<TimeGrid>();
  g->t.push_back(0.0);
  if (T == 0.0) return g;
  if (dt <= 0.0) throw std::invalid_argument("make_grid: dt must be > 0");
  const std::size_t n = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
  for (std::size_t j = 1; j < n; ++j) g->t.push_back(static_cast<double>(j) * dt);
  g->t.push_back(T);
  g->dt.resize(g->t.size() - 1);
  for (std::size_t j = 0; j + 1 < g->t.size(); ++j) {
    g->dt[j] = g->t[j + 1] - g->t[j];
    if (g->dt[j] <= 0.0) throw std::invalid_argument("make_grid: degenerate step");
  }
  return g;
}

std::shared_ptr<const TimeGrid> augment_grid(
    const std::shared_ptr<const TimeGrid>& base, std::span<const double> extra) {
  std::vector<double> pts(base->t);
  const double T = base->T();
  for (double s : extra) {
    if (s <= 0.0 || s >= T) continue;
    pts.push_back(s);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto g = std::make_shared<TimeGrid>();
  g->t = std::move(pts);
  g->dt.resize(g->t.size() - 1);
  for (std::size_t j = 0; j + 1 < g->t.size(); ++j)
    g->dt[j] = g->t[j + 1] - g->t[j];
  return g;
}

bool grid_contains(const TimeGrid& super, const TimeGrid& sub) {
  std::size_t i = 0;
  for (double s : sub.t) {
    while (i < super.t.size() && super.t[i] < s) ++i;
    if (i == super.t.size() || super.t[i] != s) return false;
  }
  return true;
}

CoeffPath CoeffPath::zeros(std::shared_ptr<const TimeGrid> g,
                           std::size_t n_modes) {
  CoeffPath p;
  p.n_modes = n_modes;
  p.a.assign(g->points() * n_modes, 0.0);
  p.grid = std::move(g);
  return p;
}

double sup_l2_dist(const CoeffPath& x, const CoeffPath& y) {
  if (x.grid.get() != y.grid.get() || x.n_modes != y.n_modes)
    throw std::invalid_argument("sup_l2_dist: paths not on a shared grid");
  double sup = 0.0;
  for (std::size_t j = 0; j < x.grid->points(); ++j) {
    double s = 0.0;
    const auto xr = x.row(j);
    const auto yr = y.row(j);
    for (std::size_t k = 0; k < x.n_modes; ++k) {
      const double d = xr[k] - yr[k];
      s += d * d;
    }
    sup = std::max(sup, s);
  }
  return std::sqrt(sup);
}

double path_sup_lq(const CoeffPath& u, const SpectralBasis& b, double q,
                   std::span<const LeftLimit> left) {
  if (u.n_modes != b.n_modes)
    throw std::invalid_argument("path_sup_lq: basis mismatch");
  std::vector<double> vals(b.n_grid);
  double sup = 0.0;
  for (std::size_t j = 0; j < u.grid->points(); ++j) {
    synthesize(b, u.row(j), vals);
    sup = std::max(sup, lp_norm_grid(b, vals, q));
  }
  for (const LeftLimit& ll : left) {
    synthesize(b, ll.coeffs, vals);
    sup = std::max(sup, lp_norm_grid(b, vals, q));
  }
  return sup;
}

}  // namespace spde
