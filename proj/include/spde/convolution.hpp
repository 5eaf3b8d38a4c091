// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "spde/noise.hpp"
#include "spde/path.hpp"

namespace spde {

enum class PathKind { wiener, jump, deterministic };

// Grid realization of a semigroup convolution.  Jump paths additionally
// carry their left limits at event indices (the stored row is the post-jump
// value); other kinds are continuous and store none.
struct ConvolutionPath {
  CoeffPath path;
  PathKind kind = PathKind::deterministic;
  std::vector<LeftLimit> left_limits;
};

// Stochastic convolution W_A(t) = int_0^t e^{-(t-s)A} B dW_s, sampled
// exactly on the grid via the per-mode Ornstein-Uhlenbeck transition.
ConvolutionPath wiener_convolution(const WienerRealization& w,
                                   const WienerSpec& spec,
                                   const SpectralBasis& basis);
ConvolutionPath wiener_convolution(std::shared_ptr<const TimeGrid> grid,
                                   const WienerSpec& spec,
                                   const SpectralBasis& basis,
                                   std::uint64_t seed);

// Compensated jump convolution G_A(t): semigroup-decayed sum of marks over
// events up to t minus the compensator integral; exact per mode.  The grid
// must contain every event time (augment_grid with stream.times()).
ConvolutionPath jump_convolution(std::shared_ptr<const TimeGrid> grid,
                                 const JumpSpec& spec,
                                 const PoissonStream& stream,
                                 const SpectralBasis& basis);

// Deterministic convolution int_0^t e^{-(t-s)A} h(s) ds by the exponential
// left-rectangle rule: C_{j+1} = e^{-A dt_j} (C_j + dt_j h_j).  First order
// in the grid spacing; exact direction of the semigroup decay.
ConvolutionPath deterministic_convolution(const CoeffPath& h,
                                          const SpectralBasis& basis);

// sup over grid (and left limits) of the L_q norm of the path.
double path_sup_lq(const ConvolutionPath& p, const SpectralBasis& b, double q);

}  // namespace spde
