// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include "spde/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spde/csv.hpp"
#include "spde/linear_oracle.hpp"
#include "spde/parallel.hpp"
#include "spde/rng.hpp"

namespace spde {

namespace {

constexpr std::uint64_t tag_simulate = 0x51;
constexpr std::uint64_t tag_oracle = 0x0C;

std::string path_join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string mode_col(std::size_t k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "a_%03zu[1]", k + 1);
  return buf;
}

void write_series(const std::string& path, const CoeffPath& p) {
  CsvWriter csv(path);
  std::vector<std::string> hdr{"t[time]"};
  for (std::size_t k = 0; k < p.n_modes; ++k) hdr.push_back(mode_col(k));
  csv.header(hdr);
  std::vector<double> row(p.n_modes + 1);
  for (std::size_t j = 0; j < p.grid->points(); ++j) {
    row[0] = p.grid->t[j];
    const auto r = p.row(j);
    for (std::size_t k = 0; k < p.n_modes; ++k) row[k + 1] = r[k];
    csv.row(row);
  }
}

void echo_regime(std::ostream& o, const Scenario& s, const Problem& p) {
  const RegimeEcho e = regime_echo(s, p);
  o << "regime: declared=" << e.declared << " (strong: L_p data norms finite;"
    << " l2: only L_2 data norms assumed)\n";
  o << "  drift growth p = " << e.p << ", conjugate growth p* = " << e.p_star
    << "\n";
  o << "  ||u0||_p = " << g17(e.u0_norm_p) << "\n";
  o << "  ||B||_gamma,p = " << g17(e.B_norm.value);
  if (e.B_norm.draws > 0)
    o << " (mc se " << g17(e.B_norm.standard_error) << ", "
      << e.B_norm.draws << " draws)";
  o << "\n  ||G||_m,p* = " << g17(e.G_norm_pstar) << "\n";
}

struct Summary {
  std::ostringstream text;
  bool pass = true;
};

void finish(const Summary& sum, const std::string& out_dir, std::ostream& log) {
  write_text(path_join(out_dir, "summary.txt"), sum.text.str());
  log << sum.text.str();
}

int run_simulate(const Scenario& s, const Problem& p, const PicardOptions& o,
                 const std::string& out_dir, std::ostream& log) {
  Summary sum;
  const NoiseRealization noise =
      sample_noise(p, derive_seed(s.seed, tag_simulate, 0));
  const MildSolution ms = solve_mild(p, s.lambdas, noise, o);
  const RegularizedSolution& sol = ms.final;

  write_series(path_join(out_dir, "u_series.csv"), sol.u);
  write_series(path_join(out_dir, "wa_series.csv"), sol.wa);
  write_series(path_join(out_dir, "ga_series.csv"), sol.ga);
  {
    CsvWriter csv(path_join(out_dir, "events.csv"));
    const std::string hdr[] = {"t[time]", "atom[1]"};
    csv.header(hdr);
    for (const auto& ev : noise.stream.events) {
      const double row[] = {ev.time, static_cast<double>(ev.atom)};
      csv.row(row);
    }
  }

  sum.text << "simulate: one realization, lambda schedule "
           << s.lambdas.size() << " values down to " << g17(s.lambdas.back())
           << "\n";
  echo_regime(sum.text, s, p);
  sum.text << "events: " << noise.stream.events.size() << "\n";
  for (std::size_t i = 0; i < ms.lambdas.size(); ++i)
    sum.text << "  lambda " << g17(ms.lambdas[i]) << ": " << ms.iterations[i]
             << " sweeps\n";
  for (std::size_t i = 0; i < ms.distances.size(); ++i)
    sum.text << "  gap(u_" << g17(ms.lambdas[i]) << ", u_"
             << g17(ms.lambdas[i + 1]) << ") = " << g17(ms.distances[i])
             << "\n";
  const double mild = mild_residual(sol);
  const double strong = strong_residual(sol, p.dt);
  sum.text << "mild residual = " << g17(mild) << "\n";
  sum.text << "strong residual (eps=dt) = " << g17(strong) << "\n";
  sum.text << "sup_t ||u||_p = "
           << g17(path_sup_lq(sol.u, *p.basis, p.f.growth_p, sol.u_left))
           << "\n";
  sum.text << "PASS simulate (solver healthy)\n";
  finish(sum, out_dir, log);
  return 0;
}

int run_converge(const Scenario& s, const Problem& p, const PicardOptions& o,
                 const std::string& out_dir, std::ostream& log) {
  Summary sum;
  const ExperimentContext ctx{s.seed, s.samples};
  const CauchyResult res = check_cauchy_rate(
      p, s.lambdas, s.cauchy_slope_min, s.cauchy_ci_floor, ctx, o);
  {
    CsvWriter csv(path_join(out_dir, "cauchy.csv"));
    const std::string hdr[] = {"lambda[1]", "mean_sq_dist[L2^2]", "se[L2^2]",
                               "n[1]"};
    csv.header(hdr);
    for (const CauchyRow& r : res.rows) {
      const double row[] = {r.lambda, r.mean_sq, r.se,
                            static_cast<double>(ctx.samples)};
      csv.row(row);
    }
  }
  for (std::size_t k = 0; k < res.rows.size(); ++k) {
    char name[48];
    std::snprintf(name, sizeof name, "converge_l%zu.csv", k);
    CsvWriter csv(path_join(out_dir, name));
    const std::string hdr[] = {"sample[1]", "dist_sq[L2^2]"};
    csv.header(hdr);
    for (std::size_t i = 0; i < ctx.samples; ++i) {
      const double row[] = {static_cast<double>(i), res.sample_dist_sq[i][k]};
      csv.row(row);
    }
  }
  sum.text << "converge: Yosida passage over " << s.lambdas.size()
           << " lambdas, " << ctx.samples << " samples\n";
  echo_regime(sum.text, s, p);
  for (const CauchyRow& r : res.rows)
    sum.text << "  lambda " << g17(r.lambda) << ": E gap^2 = " << g17(r.mean_sq)
             << " (se " << g17(r.se) << ")\n";
  sum.text << "log-log slope = " << g17(res.report.slope.slope) << " (95% CI ["
           << g17(res.report.slope.ci_lo) << ", " << g17(res.report.slope.ci_hi)
           << "])\n";
  sum.text << (res.report.pass ? "PASS" : "FAIL") << " converge: "
           << res.report.detail << "\n";
  sum.pass = res.report.pass;
  finish(sum, out_dir, log);
  return sum.pass ? 0 : 1;
}

int run_apriori(const Scenario& s, const Problem& p, const PicardOptions& o,
                const std::string& out_dir, std::ostream& log) {
  Summary sum;
  const ExperimentContext ctx{s.seed, s.samples};
  const AprioriResult res =
      check_apriori(p, s.lambdas, s.apriori_band, ctx, o);
  {
    CsvWriter csv(path_join(out_dir, "apriori.csv"));
    const std::string hdr[] = {"lambda[1]", "moment[Lp^p]", "se[Lp^p]",
                               "ratio[1]"};
    csv.header(hdr);
    for (const AprioriRow& r : res.rows) {
      const double row[] = {r.lambda, r.moment, r.se, r.ratio};
      csv.row(row);
    }
  }
  for (std::size_t k = 0; k < res.rows.size(); ++k) {
    char name[48];
    std::snprintf(name, sizeof name, "apriori_l%zu.csv", k);
    CsvWriter csv(path_join(out_dir, name));
    const std::string hdr[] = {"sample[1]", "sup_moment[Lp^p]"};
    csv.header(hdr);
    for (std::size_t i = 0; i < ctx.samples; ++i) {
      const double row[] = {static_cast<double>(i), res.sample_sup_p[i][k]};
      csv.row(row);
    }
  }
  sum.text << "apriori: E sup ||u_lambda||_p^p over " << s.lambdas.size()
           << " lambdas, " << ctx.samples << " samples\n";
  echo_regime(sum.text, s, p);
  sum.text << "denominator 1 + ||u0||_p^p = " << g17(res.denom) << "\n";
  for (const AprioriRow& r : res.rows)
    sum.text << "  lambda " << g17(r.lambda) << ": moment " << g17(r.moment)
             << " (se " << g17(r.se) << "), ratio " << g17(r.ratio) << "\n";
  sum.text << (res.report.pass ? "PASS" : "FAIL") << " apriori: "
           << res.report.detail << "\n";
  sum.pass = res.report.pass;
  finish(sum, out_dir, log);
  return sum.pass ? 0 : 1;
}

int run_bj(const Scenario& s, const Problem& p, const std::string& out_dir,
           std::ostream& log) {
  Summary sum;
  const ExperimentContext ctx{s.seed, s.samples};
  const BjResult res = check_bj(p, s.bj_thetas, s.bj_amps, s.bj_qs,
                                s.bj_spearman_max, s.bj_homog_tol, ctx);
  {
    CsvWriter csv(path_join(out_dir, "bj.csv"));
    const std::string hdr[] = {"theta[1]",  "amp[1]",      "q[1]",
                               "moment[Lq^q]", "se[Lq^q]", "norm_pow[Lq^q]",
                               "ratio[1]"};
    csv.header(hdr);
    for (const BjRow& r : res.rows) {
      const double row[] = {r.theta, r.amp, r.q, r.moment,
                            r.se,    r.norm_pow, r.ratio};
      csv.row(row);
    }
  }
  {
    CsvWriter csv(path_join(out_dir, "bj_samples.csv"));
    const std::string hdr[] = {"sample[1]", "theta[1]", "amp[1]", "q[1]",
                               "sup_moment[Lq^q]"};
    csv.header(hdr);
    const std::size_t na = s.bj_amps.size(), nq = s.bj_qs.size();
    for (std::size_t i = 0; i < ctx.samples; ++i)
      for (std::size_t ti = 0; ti < s.bj_thetas.size(); ++ti)
        for (std::size_t ai = 0; ai < na; ++ai)
          for (std::size_t qi = 0; qi < nq; ++qi) {
            const double row[] = {static_cast<double>(i), s.bj_thetas[ti],
                                  s.bj_amps[ai], s.bj_qs[qi],
                                  res.sample_sup_q[i][(ti * na + ai) * nq + qi]};
            csv.row(row);
          }
  }
  sum.text << "bj: jump maximal-inequality sweep, " << ctx.samples
           << " samples per intensity\n";
  echo_regime(sum.text, s, p);
  for (const ExperimentReport& r : res.per_q)
    sum.text << "  " << r.name << ": " << r.detail << "\n";
  sum.text << "worst Spearman(ratio, theta) = " << g17(res.worst_spearman)
           << " (max allowed " << g17(s.bj_spearman_max) << ")\n";
  sum.text << "amplitude invariance defect = " << g17(res.homog_err)
           << " (tol " << g17(s.bj_homog_tol) << ")\n";
  sum.text << (res.pass ? "PASS" : "FAIL") << " bj\n";
  sum.pass = res.pass;
  finish(sum, out_dir, log);
  return sum.pass ? 0 : 1;
}

int run_continuity(const Scenario& s, const Problem& p, const PicardOptions& o,
                   const std::string& out_dir, std::ostream& log) {
  Summary sum;
  const ExperimentContext ctx{s.seed, s.samples};
  const Perturbation d = build_perturbation(s, p);
  const ContinuityResult res =
      check_data_continuity(p, d, s.continuity_scales, s.continuity_lambda,
                            s.continuity_band, ctx, o);
  {
    CsvWriter csv(path_join(out_dir, "continuity.csv"));
    const std::string hdr[] = {"scale[1]", "mean_sq_dist[L2^2]", "se[L2^2]",
                               "data_dist_sq[L2^2]", "ratio[1]"};
    csv.header(hdr);
    for (const ContinuityRow& r : res.rows) {
      const double row[] = {r.scale, r.mean_sq, r.se, r.denom_sq, r.ratio};
      csv.row(row);
    }
  }
  for (std::size_t k = 0; k < res.rows.size(); ++k) {
    char name[48];
    std::snprintf(name, sizeof name, "continuity_s%zu.csv", k);
    CsvWriter csv(path_join(out_dir, name));
    const std::string hdr[] = {"sample[1]", "dist_sq[L2^2]"};
    csv.header(hdr);
    for (std::size_t i = 0; i < ctx.samples; ++i) {
      const double row[] = {static_cast<double>(i), res.sample_dist_sq[i][k]};
      csv.row(row);
    }
  }
  sum.text << "continuity: data-to-solution map at lambda "
           << g17(s.continuity_lambda) << ", " << ctx.samples << " samples\n";
  echo_regime(sum.text, s, p);
  for (const ContinuityRow& r : res.rows)
    sum.text << "  scale " << g17(r.scale) << ": E gap^2 " << g17(r.mean_sq)
             << " (se " << g17(r.se) << "), data^2 " << g17(r.denom_sq)
             << ", ratio " << g17(r.ratio) << "\n";
  sum.text << (res.report.pass ? "PASS" : "FAIL") << " continuity: "
           << res.report.detail << "\n";
  sum.pass = res.report.pass;
  finish(sum, out_dir, log);
  return sum.pass ? 0 : 1;
}

int run_oracle(const Scenario& s, const Problem& pbase, const PicardOptions& o,
               const std::string& out_dir, std::ostream& log) {
  Summary sum;
  Problem p = pbase;
  p.f = linear_drift(s.drift_c);  // the oracle needs the linear drift

  const std::size_t R = s.oracle_refinements;
  std::vector<double> dts(R + 1);
  for (std::size_t r = 0; r <= R; ++r)
    dts[r] = s.dt / std::pow(2.0, static_cast<double>(r));

  const auto per_sample = [&](std::size_t i) {
    Problem pf = p;
    pf.dt = dts[R];
    const NoiseRealization fine =
        sample_noise(pf, derive_seed(s.seed, tag_oracle, i));
    std::vector<double> gap(R + 1);
    for (std::size_t r = 0; r <= R; ++r) {
      const NoiseRealization noise =
          r == R ? fine : coarsen_noise(p, fine, dts[r]);
      const RegularizedSolution sol =
          picard_solve(p, s.oracle_lambda, noise, o);
      const CoeffPath exact = exact_linear_solution(p, s.oracle_lambda, noise);
      gap[r] = sup_l2_dist(sol.u, exact);
    }
    return gap;
  };
  const auto samples = par::mc_map(s.oracle_samples, per_sample);

  std::vector<double> mean(R + 1), se(R + 1);
  std::vector<double> cell(s.oracle_samples);
  for (std::size_t r = 0; r <= R; ++r) {
    for (std::size_t i = 0; i < s.oracle_samples; ++i) cell[i] = samples[i][r];
    const MeanSE m = mean_se(cell);
    mean[r] = m.mean;
    se[r] = m.se;
  }

  bool pass = true;
  {
    CsvWriter csv(path_join(out_dir, "oracle.csv"));
    const std::string hdr[] = {"dt[time]", "mean_gap[L2]", "se[L2]",
                               "bound[L2]", "ratio_to_next[1]"};
    csv.header(hdr);
    for (std::size_t r = 0; r <= R; ++r) {
      const double bound = s.oracle_gap_factor * dts[r];
      const double ratio = r < R && mean[r + 1] > 0.0 ? mean[r] / mean[r + 1]
                                                      : 0.0;
      const double row[] = {dts[r], mean[r], se[r], bound, ratio};
      csv.row(row);
    }
  }
  for (std::size_t r = 0; r <= R; ++r) {
    char name[48];
    std::snprintf(name, sizeof name, "oracle_r%zu.csv", r);
    CsvWriter csv(path_join(out_dir, name));
    const std::string hdr[] = {"sample[1]", "gap[L2]"};
    csv.header(hdr);
    for (std::size_t i = 0; i < s.oracle_samples; ++i) {
      const double row[] = {static_cast<double>(i), samples[i][r]};
      csv.row(row);
    }
  }

  sum.text << "oracle: linear-drift exact solution vs Picard solver, lambda "
           << g17(s.oracle_lambda) << ", " << s.oracle_samples << " samples\n";
  for (std::size_t r = 0; r <= R; ++r) {
    const double bound = s.oracle_gap_factor * dts[r];
    const bool ok = mean[r] <= bound;
    pass = pass && ok;
    sum.text << "  dt " << g17(dts[r]) << ": mean gap " << g17(mean[r])
             << " (se " << g17(se[r]) << "), bound " << g17(bound)
             << (ok ? " ok" : " VIOLATED") << "\n";
  }
  for (std::size_t r = 0; r < R; ++r) {
    const double ratio = mean[r + 1] > 0.0 ? mean[r] / mean[r + 1] : 0.0;
    const bool ok = ratio >= s.oracle_ratio_lo && ratio <= s.oracle_ratio_hi;
    pass = pass && ok;
    sum.text << "  halving ratio dt=" << g17(dts[r]) << " -> " << g17(dts[r + 1])
             << ": " << g17(ratio) << " (want [" << g17(s.oracle_ratio_lo)
             << ", " << g17(s.oracle_ratio_hi) << "])"
             << (ok ? " ok" : " VIOLATED") << "\n";
  }
  sum.text << (pass ? "PASS" : "FAIL") << " oracle\n";
  sum.pass = pass;
  finish(sum, out_dir, log);
  return pass ? 0 : 1;
}

}  // namespace

int run_subcommand(const std::string& subcommand, const Scenario& s,
                   const std::string& out_dir, std::ostream& log) {
  const std::vector<std::string> bad = validate(s);
  if (!bad.empty()) {
    std::string msg = "scenario invalid:";
    for (const std::string& b : bad) msg += "\n  " + b;
    throw std::invalid_argument(msg);
  }
  std::filesystem::create_directories(out_dir);
  write_text(path_join(out_dir, "scenario.effective.ini"), serialize_ini(s));

  const Problem p = build_problem(s);
  const PicardOptions o = build_picard_options(s);

  if (subcommand == "simulate") return run_simulate(s, p, o, out_dir, log);
  if (subcommand == "converge") return run_converge(s, p, o, out_dir, log);
  if (subcommand == "apriori") return run_apriori(s, p, o, out_dir, log);
  if (subcommand == "bj") return run_bj(s, p, out_dir, log);
  if (subcommand == "continuity") return run_continuity(s, p, o, out_dir, log);
  if (subcommand == "oracle") return run_oracle(s, p, o, out_dir, log);
  throw std::invalid_argument("unknown subcommand: " + subcommand);
}

}  // namespace spde
