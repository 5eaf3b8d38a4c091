// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "spde/convolution.hpp"
#include "spde/monotone.hpp"
#include "spde/noise.hpp"
#include "spde/path.hpp"
#include "spde/spectral.hpp"

namespace spde {

// One equation instance: du + A u dt + f(u) dt = B dW + compensated jumps,
// u(0) = u0, on [0, T] with base step dt.
struct Problem {
  MonotoneFn f;
  std::shared_ptr<const SpectralBasis> basis;
  WienerSpec wiener;
  JumpSpec jumps;
  Field u0;
  double T = 1.0;
  double dt = 1e-3;
};

// One sample of the driving noise.  The grid is the base partition
// augmented with the jump times, so convolutions see every event exactly.
// Reused across lambda values and paired problems (common random numbers:
// the Wiener draws are unit-coefficient, B enters only linearly later).
struct NoiseRealization {
  std::shared_ptr<const TimeGrid> grid;
  WienerRealization wiener;
  PoissonStream stream;
};

NoiseRealization sample_noise(const Problem& p, std::uint64_t seed);

// Same noise transported to a coarser base step (factor a power of two);
// increments aggregate exactly, so refinement studies share one draw.
NoiseRealization coarsen_noise(const Problem& p, const NoiseRealization& fine,
                               double coarse_dt);

enum class PicardRoute {
  shifted,  // iterate on v = u - G_A; the unknown is continuous
  direct    // iterate on u itself
};

struct PicardOptions {
  double tol = 1e-10;          // successive-change tolerance, grid-sup L_p
  int max_iter = 200;          // sweep budget per contraction window
  double kappa = 0.5;          // contraction margin: T0 = kappa * lambda / 2
  RootOptions root;            // scalar resolvent solves
  PicardRoute route = PicardRoute::shifted;
  const CoeffPath* initial_guess = nullptr;  // optional warm start (same grid)
};

class PicardFailure : public std::runtime_error {
 public:
  PicardFailure(const std::string& msg, int subinterval, int iterations,
                double last_change, double contraction_estimate)
      : std::runtime_error(msg),
        subinterval(subinterval),
        iterations(iterations),
        last_change(last_change),
        contraction_estimate(contraction_estimate) {}
  int subinterval, iterations;
  double last_change, contraction_estimate;
};

// Solution of the Yosida-regularized equation on the grid.
struct RegularizedSolution {
  double lambda = 0.0;
  std::shared_ptr<const TimeGrid> grid;
  std::shared_ptr<const SpectralBasis> basis;
  CoeffPath u;      // cadlag solution (post-jump values at event points)
  CoeffPath v;      // u - G_A, continuous
  CoeffPath wa;     // Wiener convolution
  CoeffPath ga;     // compensated jump convolution
  CoeffPath bm;     // plain Brownian path per mode, consistent with wa
  CoeffPath drift;  // f_lambda(u) along the final iterate
  std::vector<LeftLimit> ga_left;
  std::vector<LeftLimit> u_left;
  std::vector<LeftLimit> drift_left;
  std::vector<double> u0;  // initial coefficients
  std::vector<double> b;   // Wiener mode amplitudes
  PicardRoute route = PicardRoute::shifted;
  int iterations = 0;      // Picard sweeps, summed over subintervals
  int subintervals = 0;
  double final_change = 0.0;
};

// Picard iteration for the mild regularized equation.  The horizon is
// covered by windows of length T0 = kappa*lambda/2 on which the fixed-point
// map is a contraction (Lipschitz(f_lambda) <= 2/lambda gives factor
// <= kappa); windows are swept to tolerance and chained.  Throws
// PicardFailure when the sweep budget is exhausted and std::invalid_argument
// when a single grid step already exceeds T0 (lambda too small for the
// grid; increase lambda or refine dt).
RegularizedSolution picard_solve(const Problem& p, double lambda,
                                 const NoiseRealization& noise,
                                 const PicardOptions& opts = {});

// Defect of the mild identity u = S u0 + W_A + G_A - int S f_lambda(u),
// recomputed globally from the stored drift path; sup over the grid of the
// coefficient L_2 norm.  Near roundoff for a converged solve.
double mild_residual(const RegularizedSolution& s);

// Defect of the smoothed strong identity: with R = (I + eps A)^{-1},
//   R v(t) + int_0^t (A R v + R f_lambda(u)) ds - u0 - B W(t),
// sup over the grid of the coefficient L_2 norm; time integral by the
// trapezoid rule with pre-jump drift values at event points.  Small eps
// probes the strong form; eps of the order of dt keeps the top modes tame.
double strong_residual(const RegularizedSolution& s, double eps);

// Yosida passage lambda -> 0 under one noise realization.
struct MildSolution {
  RegularizedSolution final;            // solution at the last lambda
  std::vector<double> lambdas;
  std::vector<double> distances;        // sup-L2 gap between consecutive u
  std::vector<int> iterations;          // sweeps per lambda
  bool distances_decreasing = true;
};

// Solves along a strictly decreasing lambda schedule (consecutive solves
// warm-start from the previous iterate) and records the Cauchy gaps.
MildSolution solve_mild(const Problem& p, std::span<const double> lambdas,
                        const NoiseRealization& noise,
                        const PicardOptions& opts = {});

// Data approximation level for the generalized (rough-data) construction.
struct ApproxLevel {
  double clip_u0 = 1.0;     // amplitude clamp on the initial condition
  std::size_t mode_cut = 0; // Wiener modes kept (0 = all)
  double clip_mark = 1.0;   // amplitude clamp on the jump marks
};

// The problem with clipped/truncated data; clips act on grid values.
Problem approximate_problem(const Problem& p, const ApproxLevel& lvl);

struct GeneralizedSolution {
  CoeffPath u;                       // solution at the finest level
  std::vector<double> level_dist;    // sup-L2 gap between consecutive levels
  std::vector<double> data_dist;     // matching data distances
  std::vector<double> ratio;         // level_dist / data_dist
  double fitted_C = 0.0;             // max ratio
};

// Runs the approximation ladder under one noise realization; each level is
// taken through the full lambda schedule.  The ratio table is the empirical
// continuity constant of the data-to-solution map.
GeneralizedSolution solve_generalized(const Problem& p,
                                      std::span<const ApproxLevel> levels,
                                      std::span<const double> lambdas,
                                      const NoiseRealization& noise,
                                      const PicardOptions& opts = {});

// Squared data distance between two problems sharing a basis and horizon:
// ||du0||_2^2 + T sum db_k^2 + ||dG||^2 in the two-term jump norm (q = 2).
// Atom count and weights must match; marks may differ.
double data_distance_sq(const Problem& a, const Problem& b);

}  // namespace spde
