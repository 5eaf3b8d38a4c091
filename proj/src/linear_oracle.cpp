// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include "spde/linear_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace spde {

CoeffPath exact_linear_solution(const Problem& p, double lambda,
                                const NoiseRealization& noise) {
  if (p.f.name != "linear")
    throw std::invalid_argument("exact_linear_solution: drift must be linear");
  if (lambda <= 0.0)
    throw std::invalid_argument("exact_linear_solution: lambda must be > 0");
  const SpectralBasis& B = *p.basis;
  const std::size_t K = B.n_modes;
  const TimeGrid& g = *noise.grid;

  const double c = p.f.eval(1.0);  // linear coefficient
  const double cl = c / (1.0 + lambda * c);

  // Events grouped by grid index (the grid contains all event times).
  std::vector<std::vector<std::size_t>> at(g.points());
  {
    std::size_t j = 0;
    for (std::size_t ev = 0; ev < noise.stream.events.size(); ++ev) {
      const double t = noise.stream.events[ev].time;
      while (j < g.points() && g.t[j] < t) ++j;
      if (j == g.points() || g.t[j] != t)
        throw std::invalid_argument(
            "exact_linear_solution: event time missing from grid");
      at[j].push_back(ev);
    }
  }
  const std::vector<double> gbar = p.jumps.mean_mark(K);

  CoeffPath u = CoeffPath::zeros(noise.grid, K);
  for (std::size_t k = 0; k < K; ++k) u.a[k] = p.u0.a[k];

  for (std::size_t j = 0; j < g.steps(); ++j) {
    const double d = g.dt[j];
    const auto prev = u.row(j);
    auto next = u.row(j + 1);
    for (std::size_t k = 0; k < K; ++k) {
      const double a = B.alpha[k];
      const double beta = a + cl;
      const double eb = std::exp(-beta * d);
      // Projection of int e^{-beta(t_{j+1}-s)} dW onto the drawn pair
      // (dW, eta0): solve the 2x2 Gaussian normal equations.
      const double qa = -std::expm1(-a * d) / a;
      const double va = -std::expm1(-2.0 * a * d) / (2.0 * a);
      const double qb = -std::expm1(-beta * d) / beta;
      const double qab = -std::expm1(-(a + beta) * d) / (a + beta);
      const double det = d * va - qa * qa;
      double x, y;
      if (det > 0.0) {
        x = (qb * va - qa * qab) / det;
        y = (d * qab - qa * qb) / det;
      } else {
        x = qb / d;
        y = 0.0;
      }
      const double ihat = x * noise.wiener.dw[j * K + k] +
                          y * noise.wiener.eta0[j * K + k];
      // Compensator over the step, exact: gbar (1 - e^{-beta d}) / beta.
      next[k] = eb * prev[k] + p.wiener.b[k] * ihat - gbar[k] * qb;
    }
    for (std::size_t ev : at[j + 1]) {
      const Field& mark = p.jumps.atoms[noise.stream.events[ev].atom].mark;
      for (std::size_t k = 0; k < K; ++k) next[k] += mark.a[k];
    }
  }
  return u;
}

}  // namespace spde
