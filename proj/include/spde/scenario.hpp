// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spde/solver.hpp"
#include "spde/verify.hpp"

namespace spde {

// Declarative run configuration.  Every field has a default; an INI file
// and `--set section.key=value` overrides map onto these fields 1:1, and
// serialize_ini writes the complete effective state back out, so a written
// config re-parses to the identical scenario.
struct Scenario {
  // [space]
  std::size_t n_modes = 32;
  std::size_t grid_factor = 4;

  // [drift]  name: linear | power | cubic | linear_plus_cubic
  std::string drift_name = "cubic";
  double drift_c = 1.0;  // linear coefficient
  double drift_p = 4.0;  // growth exponent for the power drift

  // [wiener]  b_k = sigma k^{-beta}
  double sigma = 1.0;
  double beta = 1.0;

  // [jumps]  atoms as mode:weight:amp triples; mark = amp * e_mode
  struct AtomCfg {
    std::size_t mode = 1;
    double weight = 0.0;
    double amp = 0.0;
  };
  std::vector<AtomCfg> atoms = {{1, 2.0, 0.5}, {2, 3.0, -0.3}};

  // [initial]  u0 as mode:coeff pairs
  std::vector<std::pair<std::size_t, double>> u0 = {{1, 1.0}, {3, 0.5}};

  // [time]
  double T = 1.0;
  double dt = 1e-3;

  // [solver]
  double tol_picard = 1e-10;
  int max_picard = 200;
  double tol_root = 1e-12;
  int max_root = 200;
  double kappa = 0.5;
  std::string route = "shifted";  // shifted | direct

  // [lambda]
  std::vector<double> lambdas = {0.1, 0.05, 0.025, 0.0125, 0.00625};

  // [mc]
  std::size_t samples = 64;
  std::uint64_t seed = 12345;
  std::size_t gauss_draws = 2000;  // Monte Carlo size for the p != 2 B-norm

  // [verify]
  double apriori_band = 2.0;
  double cauchy_slope_min = 0.8;
  double cauchy_ci_floor = 0.4;
  std::vector<double> bj_thetas = {1.0, 4.0, 16.0};
  std::vector<double> bj_amps = {1.0, 2.0, 8.0};
  std::vector<double> bj_qs = {2.0, 4.0};
  double bj_spearman_max = 0.5;
  double bj_homog_tol = 1e-10;
  std::vector<double> continuity_scales = {1.0, 0.5, 0.25, 0.125};
  double continuity_lambda = 0.00625;
  double continuity_band = 2.0;
  std::size_t gen_levels = 4;
  double gen_clip0 = 0.5;
  std::size_t gen_cut0 = 4;
  double gen_band = 4.0;
  std::size_t oracle_refinements = 2;
  std::size_t oracle_samples = 8;
  double oracle_lambda = 0.05;
  double oracle_gap_factor = 5.0;  // gap <= factor * dt
  double oracle_ratio_lo = 1.7;    // gap ratio under dt halving
  double oracle_ratio_hi = 2.3;

  // [perturb]  data perturbation probed by the continuity check
  std::vector<std::pair<std::size_t, double>> perturb_u0 = {{1, 0.2}, {2, -0.1}};
  std::vector<std::pair<std::size_t, double>> perturb_b = {{1, 0.1}};
  double perturb_mark_scale = 0.25;

  // [regime]  declared data regime: strong (L_p data) | l2 (rough data)
  std::string regime = "strong";
};

// Parses INI text onto the defaults.  Unknown sections/keys and malformed
// values throw std::invalid_argument naming the offender.
Scenario parse_scenario_ini(const std::string& text);

// Applies one "section.key=value" override.
void apply_override(Scenario& s, const std::string& assignment);

// All validation violations, empty when the scenario is runnable.
std::vector<std::string> validate(const Scenario& s);

// Complete effective configuration; parse_scenario_ini inverts it exactly.
std::string serialize_ini(const Scenario& s);

Problem build_problem(const Scenario& s);
PicardOptions build_picard_options(const Scenario& s);
Perturbation build_perturbation(const Scenario& s, const Problem& p);
std::vector<ApproxLevel> build_levels(const Scenario& s);

// Data-regime echo: the declared regime plus the numeric data norms that
// back it (all finite under spectral truncation; the declaration states
// which existence route the run models).
struct RegimeEcho {
  std::string declared;
  double p = 0.0;       // drift growth exponent
  double p_star = 0.0;  // conjugate growth p^2/2
  double u0_norm_p = 0.0;
  NormEstimate B_norm;       // gamma-norm into L_p
  double G_norm_pstar = 0.0; // two-term jump norm at p*
};
RegimeEcho regime_echo(const Scenario& s, const Problem& p);

}  // namespace spde
