// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "spde/path.hpp"
#include "spde/spectral.hpp"

namespace spde {

// Diagonal Wiener covariance: noise = sum_k b_k e_k dW^k with independent
// scalar Brownian motions W^k.
struct WienerSpec {
  std::vector<double> b;

  // b_k = sigma * k^{-beta}
  static WienerSpec decay(std::size_t n_modes, double sigma, double beta);
};

// Finite-atom jump measure: atom a fires with intensity weight_a and adds
// the fixed mark field g_a to the solution.  Marks are time-independent.
struct JumpSpec {
  struct Atom {
    double weight = 0.0;
    Field mark;
  };
  std::vector<Atom> atoms;

  double total_intensity() const;
  // Intensity-weighted mean mark; drives the compensator.
  std::vector<double> mean_mark(std::size_t n_modes) const;
};

struct PoissonStream {
  struct Event {
    double time = 0.0;
    std::size_t atom = 0;
  };
  std::vector<Event> events;
  double horizon = 0.0;

  std::vector<double> times() const;
};

// Homogeneous Poisson stream on (0, T]: exponential spacings at the total
// intensity, marks chosen by cdf inversion over the atom weights.
PoissonStream sample_poisson_stream(double T, const JumpSpec& spec,
                                    std::uint64_t seed);

// Brownian increments per (step, mode): dw[j*n_modes + k] ~ N(0, dt_j).
struct WienerIncrements {
  std::shared_ptr<const TimeGrid> grid;
  std::size_t n_modes = 0;
  std::vector<double> dw;
};
WienerIncrements sample_wiener_increments(std::shared_ptr<const TimeGrid> grid,
                                          std::size_t n_modes,
                                          std::uint64_t seed);

// Joint exact draw of the Brownian increment and the semigroup-weighted
// step integral eta0[j,k] = int_{t_j}^{t_{j+1}} e^{-alpha_k(t_{j+1}-s)} dW^k_s.
// The pair is jointly Gaussian; sampling them together keeps the stochastic
// convolution and the plain Brownian path of one realization consistent.
struct WienerRealization {
  std::shared_ptr<const TimeGrid> grid;
  std::size_t n_modes = 0;
  std::vector<double> dw;    // [step][mode]
  std::vector<double> eta0;  // [step][mode]
};
WienerRealization sample_wiener(std::shared_ptr<const TimeGrid> grid,
                                std::span<const double> alpha,
                                std::uint64_t seed);

// Exact aggregation of a fine realization onto a coarser grid whose points
// all lie on the fine grid: increments add, step integrals add with the
// extra semigroup decay accumulated in between.  Used for step-refinement
// studies under common random numbers.
WienerRealization coarsen_wiener(const WienerRealization& fine,
                                 std::shared_ptr<const TimeGrid> coarse,
                                 std::span<const double> alpha);

struct NormEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t draws = 0;
};

// gamma-radonifying norm of B as a map into L_p, scaled by T^{1/q}:
// (T E||sum_k gamma_k b_k e_k||_{L_p}^2)^{1/2}-type quantity estimated by
// Monte Carlo over standard Gaussian vectors; exact (zero s.e.) for p = 2
// where it collapses to the Hilbert-Schmidt norm sqrt(sum b_k^2).
NormEstimate norm_B_gamma(const WienerSpec& spec, double q, double p,
                          const SpectralBasis& basis, double T,
                          std::size_t draws, std::uint64_t seed);

// Two-term jump-noise norm; closed form for finite deterministic atoms:
// ( T sum_a w_a ||g_a||_{L_q}^q  +  T (sum_a w_a ||g_a||_{L_q}^2)^{q/2} )^{1/q}.
double norm_G_Lmq(const JumpSpec& spec, double q, double T);

}  // namespace spde
