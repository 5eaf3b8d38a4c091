// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include "spde/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "spde/parallel.hpp"
#include "spde/rng.hpp"

namespace spde {

namespace {
constexpr std::uint64_t tag_apriori = 0xA1;
constexpr std::uint64_t tag_cauchy = 0xCA;
constexpr std::uint64_t tag_bj = 0xB700;  // + theta index
constexpr std::uint64_t tag_continuity = 0xC0;
constexpr std::uint64_t tag_generalized = 0x6E;

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}
}  // namespace

MeanSE mean_se(std::span<const double> vals) {
  MeanSE r;
  r.n = vals.size();
  if (r.n == 0) return r;
  double s = 0.0;
  for (double v : vals) s += v;
  r.mean = s / static_cast<double>(r.n);
  if (r.n < 2) return r;
  double ss = 0.0;
  for (double v : vals) {
    const double d = v - r.mean;
    ss += d * d;
  }
  const double var = ss / static_cast<double>(r.n - 1);
  r.se = std::sqrt(var / static_cast<double>(r.n));
  return r;
}

double t_quantile_975(std::size_t df) {
  static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571,
                                 2.447,  2.365, 2.306, 2.262, 2.228,
                                 2.201,  2.179, 2.160, 2.145, 2.131,
                                 2.120,  2.110, 2.101, 2.093, 2.086,
                                 2.080,  2.074, 2.069, 2.064, 2.060,
                                 2.056,  2.052, 2.048, 2.045, 2.042};
  if (df == 0) return 0.0;
  if (df <= 30) return table[df - 1];
  return 1.960;
}

SlopeFit ols(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("ols: need two paired points or more");
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols: x is constant");
  SlopeFit f;
  f.n = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (n > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - f.intercept - f.slope * x[i];
      ssr += r * r;
    }
    f.se = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
    const double t = t_quantile_975(n - 2);
    f.ci_lo = f.slope - t * f.se;
    f.ci_hi = f.slope + t * f.se;
  } else {
    f.ci_lo = f.ci_hi = f.slope;
  }
  return f;
}

SlopeFit ols_loglog(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0)
      throw std::invalid_argument("ols_loglog: values must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  return ols(lx, ly);
}

namespace {
std::vector<double> midranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
    i = j + 1;
  }
  return rank;
}
}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("spearman: need two paired points or more");
  const std::vector<double> rx = midranks(x);
  const std::vector<double> ry = midranks(y);
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
    sxy += (rx[i] - mx) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

MeanSE estimate_sup_moment(std::span<const double> sup_values, double p) {
  std::vector<double> pw(sup_values.size());
  for (std::size_t i = 0; i < pw.size(); ++i)
    pw[i] = std::pow(sup_values[i], p);
  return mean_se(pw);
}

MeanSE estimate_sup_moment(std::span<const CoeffPath> paths,
                           const SpectralBasis& basis, double p, double q) {
  std::vector<double> sups(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i)
    sups[i] = path_sup_lq(paths[i], basis, q);
  return estimate_sup_moment(sups, p);
}

AprioriResult check_apriori(const Problem& p, std::span<const double> lambdas,
                            double band, const ExperimentContext& ctx,
                            const PicardOptions& opts) {
  if (lambdas.empty()) throw std::invalid_argument("check_apriori: no lambdas");
  const double pexp = p.f.growth_p;
  AprioriResult out;
  out.denom = 1.0 + std::pow(lp_norm(p.u0, pexp), pexp);

  const auto per_sample = [&](std::size_t i) {
    const NoiseRealization noise =
        sample_noise(p, derive_seed(ctx.master_seed, tag_apriori, i));
    PicardOptions o = opts;
    std::vector<double> sup_p(lambdas.size());
    RegularizedSolution prev;
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
      o.initial_guess = li == 0 ? nullptr
                        : (opts.route == PicardRoute::shifted ? &prev.v
                                                              : &prev.u);
      RegularizedSolution sol = picard_solve(p, lambdas[li], noise, o);
      const double sup = path_sup_lq(sol.u, *p.basis, pexp, sol.u_left);
      sup_p[li] = std::pow(sup, pexp);
      prev = std::move(sol);
    }
    return sup_p;
  };
  const auto samples = par::mc_map(ctx.samples, per_sample);
  out.sample_sup_p = samples;

  std::vector<double> cell(ctx.samples);
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    for (std::size_t i = 0; i < ctx.samples; ++i) cell[i] = samples[i][li];
    const MeanSE m = mean_se(cell);
    AprioriRow row;
    row.lambda = lambdas[li];
    row.moment = m.mean;
    row.se = m.se;
    row.ratio = m.mean / out.denom;
    out.rows.push_back(row);
  }

  double rmin = out.rows[0].ratio, rmax = out.rows[0].ratio;
  for (const AprioriRow& r : out.rows) {
    rmin = std::min(rmin, r.ratio);
    rmax = std::max(rmax, r.ratio);
  }
  out.report.name = "apriori";
  out.report.samples = ctx.samples;
  out.report.estimate = rmax;
  out.report.standard_error = out.rows.back().se / out.denom;
  out.report.pass = rmin > 0.0 && rmax / rmin <= band;
  out.report.detail = fmt("ratio spread %.4g (band %.4g), max ratio %.4g",
                          rmin > 0.0 ? rmax / rmin : INFINITY, band, rmax);
  return out;
}

CauchyResult check_cauchy_rate(const Problem& p,
                               std::span<const double> lambdas,
                               double slope_min, double ci_floor,
                               const ExperimentContext& ctx,
                               const PicardOptions& opts) {
  if (lambdas.size() < 3)
    throw std::invalid_argument("check_cauchy_rate: need at least 3 lambdas");

  const auto per_sample = [&](std::size_t i) {
    const NoiseRealization noise =
        sample_noise(p, derive_seed(ctx.master_seed, tag_cauchy, i));
    const MildSolution ms = solve_mild(p, lambdas, noise, opts);
    std::vector<double> d2(ms.distances.size());
    for (std::size_t k = 0; k < d2.size(); ++k)
      d2[k] = ms.distances[k] * ms.distances[k];
    return d2;
  };
  const auto samples = par::mc_map(ctx.samples, per_sample);

  CauchyResult out;
  out.sample_dist_sq = samples;
  std::vector<double> cell(ctx.samples);
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k + 1 < lambdas.size(); ++k) {
    for (std::size_t i = 0; i < ctx.samples; ++i) cell[i] = samples[i][k];
    const MeanSE m = mean_se(cell);
    CauchyRow row;
    row.lambda = lambdas[k];
    row.mean_sq = m.mean;
    row.se = m.se;
    out.rows.push_back(row);
    xs.push_back(lambdas[k]);
    ys.push_back(m.mean);
  }
  out.report.name = "cauchy_rate";
  out.report.samples = ctx.samples;
  out.report.estimate = out.rows.back().mean_sq;
  out.report.standard_error = out.rows.back().se;
  out.report.slope = ols_loglog(xs, ys);
  out.report.has_slope = true;
  out.report.pass = out.report.slope.slope >= slope_min &&
                    out.report.slope.ci_lo >= ci_floor;
  out.report.detail =
      fmt("slope %.3f, 95%% CI low %.3f (need >= %.3f)",
          out.report.slope.slope, out.report.slope.ci_lo, slope_min);
  return out;
}

BjResult check_bj(const Problem& p, std::span<const double> thetas,
                  std::span<const double> amps, std::span<const double> qs,
                  double spearman_max, double homog_tol,
                  const ExperimentContext& ctx) {
  const double theta_base = p.jumps.total_intensity();
  if (theta_base <= 0.0)
    throw std::invalid_argument("check_bj: base problem has no jumps");
  if (thetas.empty() || amps.empty() || qs.empty())
    throw std::invalid_argument("check_bj: empty sweep");

  const std::size_t nt = thetas.size(), na = amps.size(), nq = qs.size();
  const SpectralBasis& B = *p.basis;

  // One flat [theta][amp][q] block of sup^q values per sample; streams are
  // drawn once per (theta, sample) and reused across amplitudes.
  const auto per_sample = [&](std::size_t i) {
    std::vector<double> block(nt * na * nq);
    std::vector<double> vals(B.n_grid);
    for (std::size_t ti = 0; ti < nt; ++ti) {
      JumpSpec spec_t = p.jumps;
      for (auto& a : spec_t.atoms) a.weight *= thetas[ti] / theta_base;
      const PoissonStream stream = sample_poisson_stream(
          p.T, spec_t, derive_seed(ctx.master_seed, tag_bj + ti, i));
      const auto grid = augment_grid(make_grid(p.T, p.dt), stream.times());
      for (std::size_t ai = 0; ai < na; ++ai) {
        JumpSpec spec = spec_t;
        for (auto& a : spec.atoms) a.mark = amps[ai] * a.mark;
        const ConvolutionPath conv = jump_convolution(grid, spec, stream, B);
        std::vector<double> supq(nq, 0.0);
        const auto account = [&](std::span<const double> coeffs) {
          synthesize(B, coeffs, vals);
          for (std::size_t qi = 0; qi < nq; ++qi)
            supq[qi] = std::max(supq[qi], lp_norm_grid(B, vals, qs[qi]));
        };
        for (std::size_t j = 0; j < grid->points(); ++j)
          account(conv.path.row(j));
        for (const LeftLimit& ll : conv.left_limits) account(ll.coeffs);
        for (std::size_t qi = 0; qi < nq; ++qi)
          block[(ti * na + ai) * nq + qi] = std::pow(supq[qi], qs[qi]);
      }
    }
    return block;
  };
  const auto samples = par::mc_map(ctx.samples, per_sample);

  BjResult out;
  out.sample_sup_q = samples;
  std::vector<double> cell(ctx.samples);
  // ratio[ti][ai][qi]
  std::vector<double> ratio(nt * na * nq);
  for (std::size_t ti = 0; ti < nt; ++ti)
    for (std::size_t ai = 0; ai < na; ++ai) {
      JumpSpec spec = p.jumps;
      for (auto& a : spec.atoms) {
        a.weight *= thetas[ti] / theta_base;
        a.mark = amps[ai] * a.mark;
      }
      for (std::size_t qi = 0; qi < nq; ++qi) {
        const std::size_t flat = (ti * na + ai) * nq + qi;
        for (std::size_t i = 0; i < ctx.samples; ++i)
          cell[i] = samples[i][flat];
        const MeanSE m = mean_se(cell);
        BjRow row;
        row.theta = thetas[ti];
        row.amp = amps[ai];
        row.q = qs[qi];
        row.moment = m.mean;
        row.se = m.se;
        row.norm_pow = std::pow(norm_G_Lmq(spec, qs[qi], p.T), qs[qi]);
        row.ratio = row.moment / row.norm_pow;
        ratio[flat] = row.ratio;
        out.rows.push_back(row);
      }
    }

  // Amplitude invariance: both sides are exactly homogeneous of degree q.
  out.homog_err = 0.0;
  for (std::size_t ti = 0; ti < nt; ++ti)
    for (std::size_t qi = 0; qi < nq; ++qi) {
      const double r0 = ratio[(ti * na + 0) * nq + qi];
      for (std::size_t ai = 1; ai < na; ++ai) {
        const double r = ratio[(ti * na + ai) * nq + qi];
        if (r0 != 0.0)
          out.homog_err =
              std::max(out.homog_err, std::fabs(r - r0) / std::fabs(r0));
        else if (r != 0.0)
          out.homog_err = INFINITY;
      }
    }

  // Monotone trend in theta, per (q, amp).
  out.worst_spearman = -1.0;
  for (std::size_t qi = 0; qi < nq; ++qi) {
    double worst_q = -1.0;
    double cmax = 0.0, cmax_se = 0.0;
    for (std::size_t ai = 0; ai < na; ++ai) {
      std::vector<double> r(nt);
      for (std::size_t ti = 0; ti < nt; ++ti)
        r[ti] = ratio[(ti * na + ai) * nq + qi];
      if (nt >= 2) worst_q = std::max(worst_q, spearman(thetas, r));
    }
    for (const BjRow& row : out.rows)
      if (row.q == qs[qi] && row.ratio > cmax) {
        cmax = row.ratio;
        cmax_se = row.se / row.norm_pow;
      }
    out.worst_spearman = std::max(out.worst_spearman, worst_q);
    ExperimentReport rep;
    rep.name = fmt("bj_q%.3g", qs[qi]);
    rep.samples = ctx.samples;
    rep.estimate = cmax;
    rep.standard_error = cmax_se;
    rep.pass = worst_q <= spearman_max;
    rep.detail = fmt("max ratio %.4g, worst Spearman vs intensity %.3f", cmax,
                     worst_q);
    out.per_q.push_back(rep);
  }
  out.pass = out.worst_spearman <= spearman_max && out.homog_err <= homog_tol;
  return out;
}

Problem perturb_problem(const Problem& p, const Perturbation& d, double s) {
  Problem q = p;
  if (d.du0.a.size() == p.u0.a.size())
    for (std::size_t k = 0; k < q.u0.a.size(); ++k)
      q.u0.a[k] += s * d.du0.a[k];
  else if (!d.du0.a.empty())
    throw std::invalid_argument("perturb_problem: du0 size mismatch");
  if (d.db.size() == p.wiener.b.size())
    for (std::size_t k = 0; k < q.wiener.b.size(); ++k)
      q.wiener.b[k] += s * d.db[k];
  else if (!d.db.empty())
    throw std::invalid_argument("perturb_problem: db size mismatch");
  if (d.mark_scale != 0.0)
    for (auto& a : q.jumps.atoms) a.mark = (1.0 + s * d.mark_scale) * a.mark;
  return q;
}

ContinuityResult check_data_continuity(const Problem& p, const Perturbation& d,
                                       std::span<const double> scales,
                                       double lambda, double band,
                                       const ExperimentContext& ctx,
                                       const PicardOptions& opts) {
  if (scales.empty())
    throw std::invalid_argument("check_data_continuity: no scales");

  const auto per_sample = [&](std::size_t i) {
    const NoiseRealization noise =
        sample_noise(p, derive_seed(ctx.master_seed, tag_continuity, i));
    const RegularizedSolution base = picard_solve(p, lambda, noise, opts);
    PicardOptions o = opts;
    o.initial_guess = opts.route == PicardRoute::shifted ? &base.v : &base.u;
    std::vector<double> d2(scales.size());
    for (std::size_t si = 0; si < scales.size(); ++si) {
      const Problem ps = perturb_problem(p, d, scales[si]);
      const RegularizedSolution sol = picard_solve(ps, lambda, noise, o);
      const double dist = sup_l2_dist(base.u, sol.u);
      d2[si] = dist * dist;
    }
    return d2;
  };
  const auto samples = par::mc_map(ctx.samples, per_sample);

  ContinuityResult out;
  out.sample_dist_sq = samples;
  std::vector<double> cell(ctx.samples);
  for (std::size_t si = 0; si < scales.size(); ++si) {
    for (std::size_t i = 0; i < ctx.samples; ++i) cell[i] = samples[i][si];
    const MeanSE m = mean_se(cell);
    ContinuityRow row;
    row.scale = scales[si];
    row.mean_sq = m.mean;
    row.se = m.se;
    row.denom_sq = data_distance_sq(p, perturb_problem(p, d, scales[si]));
    row.ratio = row.denom_sq > 0.0 ? row.mean_sq / row.denom_sq : INFINITY;
    out.rows.push_back(row);
  }
  double rmin = INFINITY, rmax = 0.0;
  for (const ContinuityRow& r : out.rows) {
    rmin = std::min(rmin, r.ratio);
    rmax = std::max(rmax, r.ratio);
  }
  out.report.name = "continuity";
  out.report.samples = ctx.samples;
  out.report.estimate = rmax;
  out.report.standard_error =
      out.rows.empty() ? 0.0 : out.rows.back().se / out.rows.back().denom_sq;
  out.report.pass = std::isfinite(rmax) && rmin > 0.0 && rmax / rmin <= band;
  out.report.detail = fmt("ratio spread %.4g (band %.4g), max ratio %.4g",
                          rmin > 0.0 ? rmax / rmin : INFINITY, band, rmax);
  return out;
}

GeneralizedResult check_generalized(const Problem& p,
                                    std::span<const ApproxLevel> levels,
                                    std::span<const double> lambdas,
                                    double band, const ExperimentContext& ctx,
                                    const PicardOptions& opts) {
  if (levels.size() < 2)
    throw std::invalid_argument("check_generalized: need at least 2 levels");

  const auto per_sample = [&](std::size_t i) {
    const NoiseRealization noise =
        sample_noise(p, derive_seed(ctx.master_seed, tag_generalized, i));
    const GeneralizedSolution gs =
        solve_generalized(p, levels, lambdas, noise, opts);
    return gs;
  };
  const auto samples = par::mc_map(ctx.samples, per_sample);

  GeneralizedResult out;
  const std::size_t npairs = levels.size() - 1;
  out.sample_sol_dist.resize(ctx.samples);
  for (std::size_t i = 0; i < ctx.samples; ++i)
    out.sample_sol_dist[i] = samples[i].level_dist;
  std::vector<double> cell(ctx.samples);
  for (std::size_t k = 0; k < npairs; ++k) {
    for (std::size_t i = 0; i < ctx.samples; ++i)
      cell[i] = samples[i].level_dist[k];
    const MeanSE m = mean_se(cell);
    GeneralizedRow row;
    row.level = static_cast<int>(k);
    row.data_dist = samples[0].data_dist[k];  // deterministic per pair
    row.sol_dist = m.mean;
    row.ratio = row.data_dist > 0.0 ? row.sol_dist / row.data_dist : 0.0;
    out.rows.push_back(row);
  }
  double rmin = INFINITY, rmax = 0.0;
  for (const GeneralizedRow& r : out.rows)
    if (r.data_dist > 0.0) {
      rmin = std::min(rmin, r.ratio);
      rmax = std::max(rmax, r.ratio);
      out.fitted_C = std::max(out.fitted_C, r.ratio);
    }
  out.report.name = "generalized";
  out.report.samples = ctx.samples;
  out.report.estimate = out.fitted_C;
  out.report.pass =
      std::isfinite(rmax) && rmin > 0.0 && rmax > 0.0 && rmax / rmin <= band;
  out.report.detail = fmt("ratio spread %.4g (band %.4g), fitted C %.4g",
                          rmin > 0.0 && rmax > 0.0 ? rmax / rmin : INFINITY,
                          band, out.fitted_C);
  return out;
}

}  // namespace spde
