// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
//
// Benchmark: OpenMP kernels against their serial reference twins.  Each
// pair is timed on identical inputs and the outputs are required to match
// bitwise, so the speedup numbers are only reported for code paths proven
// equivalent.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <vector>

#include "spde/parallel.hpp"
#include "spde/rng.hpp"
#include "spde/scenario.hpp"
#include "spde/solver.hpp"
#include "spde/spectral.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double time_of(int reps, const std::function<void()>& fn) {
  fn();  // warm up
  const auto t0 = clock_type::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", spde::par::max_threads());

  const auto basis = spde::SpectralBasis::make(256, 4);
  spde::Rng rng(42);
  std::vector<double> modes(basis->n_modes);
  for (double& m : modes) m = rng.normal();

  std::vector<double> grid_omp(basis->n_grid), grid_ser(basis->n_grid);
  const double t_syn_omp =
      time_of(50, [&] { spde::synthesize(*basis, modes, grid_omp); });
  const double t_syn_ser = time_of(
      50, [&] { spde::reference::synthesize(*basis, modes, grid_ser); });
  if (!bitwise_equal(grid_omp, grid_ser)) {
    std::printf("synthesize: MISMATCH between parallel and reference\n");
    return 1;
  }
  std::printf("synthesize  n=%zu: omp %.3e s, serial %.3e s, speedup %.2fx\n",
              basis->n_modes, t_syn_omp, t_syn_ser, t_syn_ser / t_syn_omp);

  std::vector<double> back_omp(basis->n_modes), back_ser(basis->n_modes);
  const double t_ana_omp =
      time_of(50, [&] { spde::analyze(*basis, grid_omp, back_omp); });
  const double t_ana_ser = time_of(
      50, [&] { spde::reference::analyze(*basis, grid_omp, back_ser); });
  if (!bitwise_equal(back_omp, back_ser)) {
    std::printf("analyze: MISMATCH between parallel and reference\n");
    return 1;
  }
  std::printf("analyze     n=%zu: omp %.3e s, serial %.3e s, speedup %.2fx\n",
              basis->n_modes, t_ana_omp, t_ana_ser, t_ana_ser / t_ana_omp);

  // Monte Carlo map over independent solves, the outer loop that dominates
  // every experiment.
  spde::Scenario sc;
  sc.n_modes = 16;
  sc.dt = 2e-3;
  const spde::Problem prob = spde::build_problem(sc);
  const spde::PicardOptions opts = spde::build_picard_options(sc);
  const auto solve_one = [&](std::size_t i) {
    const spde::NoiseRealization noise =
        spde::sample_noise(prob, spde::derive_seed(7, 0x77, i));
    const spde::RegularizedSolution sol =
        spde::picard_solve(prob, 0.05, noise, opts);
    return std::vector<double>{spde::sup_l2_dist(sol.u, sol.wa)};
  };
  const std::size_t n_mc = 16;
  std::vector<std::vector<double>> mc_omp, mc_ser;
  const double t_mc_omp =
      time_of(3, [&] { mc_omp = spde::par::mc_map(n_mc, solve_one); });
  const double t_mc_ser =
      time_of(3, [&] { mc_ser = spde::par::mc_map_serial(n_mc, solve_one); });
  for (std::size_t i = 0; i < n_mc; ++i)
    if (!bitwise_equal(mc_omp[i], mc_ser[i])) {
      std::printf("mc_map: MISMATCH between parallel and reference\n");
      return 1;
    }
  std::printf("mc_map   n=%zu solves: omp %.3e s, serial %.3e s, speedup %.2fx\n",
              n_mc, t_mc_omp, t_mc_ser, t_mc_ser / t_mc_omp);
  std::printf("all parallel kernels matched their serial references bitwise\n");
  return 0;
}
