// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spde/path.hpp"
#include "spde/solver.hpp"

namespace spde {

// Exact grid-time solution of the regularized equation with linear drift
// f(r) = c r, for the same noise realization the Picard solver consumes.
// The Yosida regularization of a linear map is linear with coefficient
// c/(1 + lambda c), so the equation decouples per mode with rate
// beta_k = alpha_k + c/(1 + lambda c) and admits an exact one-step
// transition.  Its Wiener integral is replaced by the conditional mean
// given the realization's (increment, step-integral) pair, which leaves a
// conditional residual orders of magnitude below the solver's quadrature
// error, so the comparison isolates the time-discretization bias.
CoeffPath exact_linear_solution(const Problem& p, double lambda,
                                const NoiseRealization& noise);

}  // namespace spde
