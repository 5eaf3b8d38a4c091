// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include "spde/convolution.hpp"

#include <cmath>
#include <stdexcept>

namespace spde {

ConvolutionPath wiener_convolution(const WienerRealization& w,
                                   const WienerSpec& spec,
                                   const SpectralBasis& basis) {
  if (w.n_modes != basis.n_modes || spec.b.size() != basis.n_modes)
    throw std::invalid_argument("wiener_convolution: mode count mismatch");
  ConvolutionPath out;
  out.kind = PathKind::wiener;
  out.path = CoeffPath::zeros(w.grid, basis.n_modes);
  const std::size_t K = basis.n_modes;
  for (std::size_t j = 0; j < w.grid->steps(); ++j) {
    const double d = w.grid->dt[j];
    const auto prev = out.path.row(j);
    auto next = out.path.row(j + 1);
    for (std::size_t k = 0; k < K; ++k)
      next[k] = std::exp(-basis.alpha[k] * d) * prev[k] +
                spec.b[k] * w.eta0[j * K + k];
  }
  return out;
}

ConvolutionPath wiener_convolution(std::shared_ptr<const TimeGrid> grid,
                                   const WienerSpec& spec,
                                   const SpectralBasis& basis,
                                   std::uint64_t seed) {
  const WienerRealization w = sample_wiener(std::move(grid), basis.alpha, seed);
  return wiener_convolution(w, spec, basis);
}

ConvolutionPath jump_convolution(std::shared_ptr<const TimeGrid> grid,
                                 const JumpSpec& spec,
                                 const PoissonStream& stream,
                                 const SpectralBasis& basis) {
  const std::size_t K = basis.n_modes;
  for (const JumpSpec::Atom& a : spec.atoms)
    if (a.mark.a.size() != K)
      throw std::invalid_argument("jump_convolution: mark size mismatch");

  // Locate events on the grid; times must be grid points exactly.
  std::vector<std::vector<std::size_t>> at(grid->points());
  {
    std::size_t j = 0;
    for (std::size_t ev = 0; ev < stream.events.size(); ++ev) {
      const double t = stream.events[ev].time;
      while (j < grid->points() && grid->t[j] < t) ++j;
      if (j == grid->points() || grid->t[j] != t)
        throw std::invalid_argument(
            "jump_convolution: event time missing from grid (augment the grid "
            "with stream.times())");
      at[j].push_back(ev);
    }
  }

  const std::vector<double> gbar = spec.mean_mark(K);
  ConvolutionPath out;
  out.kind = PathKind::jump;
  out.path = CoeffPath::zeros(grid, K);

  // jumps[k]: decayed sum of marks, advanced step by step; the compensator
  // gbar_k (1 - e^{-alpha_k t}) / alpha_k is evaluated in closed form.
  std::vector<double> jumps(K, 0.0);
  std::vector<double> pre(K);
  for (std::size_t j = 0; j < grid->points(); ++j) {
    if (j > 0) {
      const double d = grid->dt[j - 1];
      for (std::size_t k = 0; k < K; ++k)
        jumps[k] *= std::exp(-basis.alpha[k] * d);
    }
    const double t = grid->t[j];
    auto row = out.path.row(j);
    const bool has_event = !at[j].empty();
    if (has_event) {
      for (std::size_t k = 0; k < K; ++k) pre[k] = jumps[k];
      for (std::size_t ev : at[j]) {
        const Field& mark = spec.atoms[stream.events[ev].atom].mark;
        for (std::size_t k = 0; k < K; ++k) jumps[k] += mark.a[k];
      }
    }
    for (std::size_t k = 0; k < K; ++k) {
      const double comp = gbar[k] * -std::expm1(-basis.alpha[k] * t) / basis.alpha[k];
      row[k] = jumps[k] - comp;
      if (has_event) pre[k] -= comp;
    }
    if (has_event) {
      LeftLimit ll;
      ll.index = j;
      ll.coeffs = pre;
      out.left_limits.push_back(std::move(ll));
    }
  }
  return out;
}

ConvolutionPath deterministic_convolution(const CoeffPath& h,
                                          const SpectralBasis& basis) {
  if (h.n_modes != basis.n_modes)
    throw std::invalid_argument("deterministic_convolution: mode count mismatch");
  ConvolutionPath out;
  out.kind = PathKind::deterministic;
  out.path = CoeffPath::zeros(h.grid, basis.n_modes);
  const std::size_t K = basis.n_modes;
  for (std::size_t j = 0; j < h.grid->steps(); ++j) {
    const double d = h.grid->dt[j];
    const auto prev = out.path.row(j);
    const auto hj = h.row(j);
    auto next = out.path.row(j + 1);
    for (std::size_t k = 0; k < K; ++k)
      next[k] = std::exp(-basis.alpha[k] * d) * (prev[k] + d * hj[k]);
  }
  return out;
}

double path_sup_lq(const ConvolutionPath& p, const SpectralBasis& b, double q) {
  return path_sup_lq(p.path, b, q, p.left_limits);
}

}  // namespace spde
