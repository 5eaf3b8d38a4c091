// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spde/solver.hpp"

namespace spde {

struct MeanSE {
  double mean = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};
MeanSE mean_se(std::span<const double> vals);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double se = 0.0;     // standard error of the slope
  double ci_lo = 0.0;  // 95% confidence interval (t distribution)
  double ci_hi = 0.0;
  std::size_t n = 0;
};
SlopeFit ols(std::span<const double> x, std::span<const double> y);
SlopeFit ols_loglog(std::span<const double> x, std::span<const double> y);

// Upper 2.5% quantile of the t distribution (95% two-sided intervals).
double t_quantile_975(std::size_t df);

// Rank correlation with mid-ranks for ties; 0 when either side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

// Mean of sup-norm^p over per-sample path sup values.
MeanSE estimate_sup_moment(std::span<const double> sup_values, double p);
// Convenience overload over stored paths: sup of L_q along each path first.
MeanSE estimate_sup_moment(std::span<const CoeffPath> paths,
                           const SpectralBasis& basis, double p, double q);

struct ExperimentReport {
  std::string name;
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  SlopeFit slope{};
  bool has_slope = false;
  bool pass = false;
  std::string detail;
};

struct ExperimentContext {
  std::uint64_t master_seed = 12345;
  std::size_t samples = 64;
};

// --- Dissipativity sweep: E sup ||u_lambda||_p^p against the data size ----
struct AprioriRow {
  double lambda = 0.0;
  double moment = 0.0;  // E sup_t ||u_lambda(t)||_p^p
  double se = 0.0;
  double ratio = 0.0;   // moment / (1 + ||u0||_p^p)
};
struct AprioriResult {
  std::vector<AprioriRow> rows;
  double denom = 0.0;
  ExperimentReport report;
  std::vector<std::vector<double>> sample_sup_p;  // [sample][lambda]
};
// Pass: the ratio stays within a factor `band` across the schedule (the
// bound does not blow up as the regularization is removed).
AprioriResult check_apriori(const Problem& p, std::span<const double> lambdas,
                            double band, const ExperimentContext& ctx,
                            const PicardOptions& opts = {});

// --- Cauchy rate of the Yosida passage ------------------------------------
struct CauchyRow {
  double lambda = 0.0;  // larger lambda of the pair
  double mean_sq = 0.0; // E sup_t ||u_lambda - u_{lambda/2}||_2^2
  double se = 0.0;
};
struct CauchyResult {
  std::vector<CauchyRow> rows;
  ExperimentReport report;
  std::vector<std::vector<double>> sample_dist_sq;  // [sample][pair]
};
// Pass: log-log slope of the gap against lambda >= slope_min and the 95%
// interval's lower end >= ci_floor.
CauchyResult check_cauchy_rate(const Problem& p,
                               std::span<const double> lambdas,
                               double slope_min, double ci_floor,
                               const ExperimentContext& ctx,
                               const PicardOptions& opts = {});

// --- Jump maximal inequality sweep -----------------------------------------
struct BjRow {
  double theta = 0.0;
  double amp = 0.0;
  double q = 0.0;
  double moment = 0.0;    // E sup ||G_A||_q^q
  double se = 0.0;
  double norm_pow = 0.0;  // ||G||^q in the two-term jump norm
  double ratio = 0.0;
};
struct BjResult {
  std::vector<BjRow> rows;
  std::vector<ExperimentReport> per_q;
  double worst_spearman = 0.0;  // max over (q, amp) of Spearman(ratio, theta)
  double homog_err = 0.0;       // worst relative amp-invariance defect
  bool pass = false;
  std::vector<std::vector<double>> sample_sup_q;  // [sample][theta*amp*q]
};
// Sweeps intensity and mark amplitude with shared streams per theta.  Pass:
// the ratio never increases with theta beyond Spearman `spearman_max`, and
// is invariant under amplitude scaling to within `homog_tol` (the two-term
// norm is exactly q-homogeneous, and so is the convolution sup).
BjResult check_bj(const Problem& p, std::span<const double> thetas,
                  std::span<const double> amps, std::span<const double> qs,
                  double spearman_max, double homog_tol,
                  const ExperimentContext& ctx);

// --- Data-to-solution continuity -------------------------------------------
struct Perturbation {
  Field du0;
  std::vector<double> db;
  double mark_scale = 0.0;  // marks of the pair become (1 + scale*s) g_a
};
Problem perturb_problem(const Problem& p, const Perturbation& d, double s);

struct ContinuityRow {
  double scale = 0.0;
  double mean_sq = 0.0;   // E sup ||u - u_s||_2^2
  double se = 0.0;
  double denom_sq = 0.0;  // squared data distance
  double ratio = 0.0;
};
struct ContinuityResult {
  std::vector<ContinuityRow> rows;
  ExperimentReport report;
  std::vector<std::vector<double>> sample_dist_sq;  // [sample][scale]
};
// Solves the base and perturbed problems under common noise at a fixed
// small lambda and compares the solution gap with the data distance.
// Pass: the ratio is uniform over the perturbation size (max/min <= band).
ContinuityResult check_data_continuity(const Problem& p, const Perturbation& d,
                                       std::span<const double> scales,
                                       double lambda, double band,
                                       const ExperimentContext& ctx,
                                       const PicardOptions& opts = {});

// --- Rough-data approximation ladder ---------------------------------------
struct GeneralizedRow {
  int level = 0;          // index of the pair (level, level+1)
  double data_dist = 0.0; // mean over samples
  double sol_dist = 0.0;
  double ratio = 0.0;
};
struct GeneralizedResult {
  std::vector<GeneralizedRow> rows;
  double fitted_C = 0.0;
  ExperimentReport report;
  std::vector<std::vector<double>> sample_sol_dist;  // [sample][pair]
};
// Pass: the per-pair ratios stay within a factor `band` (the construction
// is Cauchy at the data rate with a stable constant).
GeneralizedResult check_generalized(const Problem& p,
                                    std::span<const ApproxLevel> levels,
                                    std::span<const double> lambdas,
                                    double band, const ExperimentContext& ctx,
                                    const PicardOptions& opts = {});

}  // namespace spde
