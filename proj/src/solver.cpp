// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include "spde/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "spde/rng.hpp"

namespace spde {

namespace {

void require_problem(const Problem& p) {
  const std::size_t K = p.basis->n_modes;
  if (p.u0.a.size() != K)
    throw std::invalid_argument("problem: u0 size does not match basis");
  if (p.wiener.b.size() != K)
    throw std::invalid_argument("problem: wiener spec size does not match basis");
  for (const auto& a : p.jumps.atoms)
    if (a.mark.a.size() != K)
      throw std::invalid_argument("problem: jump mark size does not match basis");
  if (p.T < 0.0) throw std::invalid_argument("problem: T must be >= 0");
  if (p.T > 0.0 && p.dt <= 0.0)
    throw std::invalid_argument("problem: dt must be > 0");
  if (!p.f.eval) throw std::invalid_argument("problem: drift has no eval");
}

// Applies the Yosida drift pointwise to grid values and projects back.
void drift_coeffs(const MonotoneFn& f, double lambda, const RootOptions& ropts,
                  const SpectralBasis& B, std::span<const double> uvals,
                  std::vector<double>& scratch, std::span<double> out) {
  scratch.resize(B.n_grid);
  for (std::size_t i = 0; i < B.n_grid; ++i)
    scratch[i] = yosida(f, lambda, uvals[i], ropts);
  analyze(B, scratch, out);
}

}  // namespace

NoiseRealization sample_noise(const Problem& p, std::uint64_t seed) {
  require_problem(p);
  NoiseRealization n;
  n.stream = sample_poisson_stream(p.T, p.jumps,
                                   derive_seed(seed, stream_tag::poisson, 0));
  n.grid = augment_grid(make_grid(p.T, p.dt), n.stream.times());
  n.wiener = sample_wiener(n.grid, p.basis->alpha,
                           derive_seed(seed, stream_tag::wiener, 0));
  return n;
}

NoiseRealization coarsen_noise(const Problem& p, const NoiseRealization& fine,
                               double coarse_dt) {
  NoiseRealization n;
  n.stream = fine.stream;
  n.grid = augment_grid(make_grid(p.T, coarse_dt), n.stream.times());
  n.wiener = coarsen_wiener(fine.wiener, n.grid, p.basis->alpha);
  return n;
}

RegularizedSolution picard_solve(const Problem& p, double lambda,
                                 const NoiseRealization& noise,
                                 const PicardOptions& opts) {
  require_problem(p);
  if (lambda <= 0.0)
    throw std::invalid_argument("picard_solve: lambda must be > 0");
  if (!(opts.kappa > 0.0 && opts.kappa < 1.0))
    throw std::invalid_argument("picard_solve: kappa must lie in (0,1)");
  const SpectralBasis& B = *p.basis;
  const std::size_t K = B.n_modes;
  const std::size_t G = B.n_grid;
  const TimeGrid& g = *noise.grid;
  const std::size_t N = g.points();
  if (noise.wiener.n_modes != K)
    throw std::invalid_argument("picard_solve: noise mode count mismatch");

  // Contraction window: Lipschitz(f_lambda) = 2/lambda, so a window of
  // length T0 gives fixed-point factor (2/lambda) T0 = kappa < 1.
  const double T0 = opts.kappa * lambda / 2.0;
  for (std::size_t j = 0; j < g.steps(); ++j)
    if (g.dt[j] > T0) {
      char buf[192];
      std::snprintf(buf, sizeof buf,
                    "picard_solve: grid step %.3g exceeds the contraction "
                    "window T0=%.3g at lambda=%.3g; increase lambda or refine dt",
                    g.dt[j], T0, lambda);
      throw std::invalid_argument(buf);
    }

  RegularizedSolution s;
  s.lambda = lambda;
  s.grid = noise.grid;
  s.basis = p.basis;
  s.route = opts.route;
  s.u0 = p.u0.a;
  s.b = p.wiener.b;

  ConvolutionPath wa = wiener_convolution(noise.wiener, p.wiener, B);
  ConvolutionPath ga = jump_convolution(noise.grid, p.jumps, noise.stream, B);

  s.bm = CoeffPath::zeros(noise.grid, K);
  for (std::size_t j = 0; j < g.steps(); ++j)
    for (std::size_t k = 0; k < K; ++k)
      s.bm.a[(j + 1) * K + k] =
          s.bm.a[j * K + k] + noise.wiener.dw[j * K + k];

  // Per-step semigroup factors, shared by every sweep.
  std::vector<double> estep(g.steps() * K);
  for (std::size_t j = 0; j < g.steps(); ++j)
    for (std::size_t k = 0; k < K; ++k)
      estep[j * K + k] = std::exp(-B.alpha[k] * g.dt[j]);

  const bool shifted = opts.route == PicardRoute::shifted;

  // Affine part transported across windows: wa for the shifted unknown,
  // wa + ga for the direct one.
  CoeffPath aux = wa.path;
  if (!shifted)
    for (std::size_t j = 0; j < N; ++j) {
      auto r = aux.row(j);
      const auto gr = ga.path.row(j);
      for (std::size_t k = 0; k < K; ++k) r[k] += gr[k];
    }

  // Grid values of the state u along the current iterate (drift argument).
  std::vector<double> uv(N * G);
  std::vector<double> gav;  // ga grid values, shifted route only
  if (shifted) {
    gav.resize(N * G);
    for (std::size_t j = 0; j < N; ++j)
      synthesize(B, ga.path.row(j), {gav.data() + j * G, G});
  }

  CoeffPath y = CoeffPath::zeros(noise.grid, K);  // iterate: v or u
  std::copy(p.u0.a.begin(), p.u0.a.end(), y.row(0).begin());
  {
    std::vector<double> tmp(G);
    synthesize(B, y.row(0), tmp);
    for (std::size_t i = 0; i < G; ++i)
      uv[i] = tmp[i] + (shifted ? gav[i] : 0.0);
  }

  CoeffPath hpath = CoeffPath::zeros(noise.grid, K);  // Yosida drift rows
  std::vector<double> decay(N * K);  // window decay products
  std::vector<double> base(N * K);   // window affine rows
  std::vector<double> cwork(K), scratch(G), vals(G), diff_row(G);
  const double state_p = p.f.growth_p;  // state-space exponent for the sup norm

  const bool have_guess = opts.initial_guess != nullptr &&
                          opts.initial_guess->grid.get() == noise.grid.get() &&
                          opts.initial_guess->n_modes == K;

  int total_iters = 0;
  int n_windows = 0;
  double worst_final_change = 0.0;

  std::size_t j0 = 0;
  while (j0 + 1 < N) {
    // Greedy window [j0, j1] with t_j1 - t_j0 <= T0.
    std::size_t j1 = j0;
    while (j1 + 1 < N && g.t[j1 + 1] - g.t[j0] <= T0 * (1.0 + 1e-12)) ++j1;
    ++n_windows;

    // Decay from t_j0 and the affine part of the fixed-point map.
    for (std::size_t k = 0; k < K; ++k) decay[j0 * K + k] = 1.0;
    for (std::size_t j = j0; j < j1; ++j)
      for (std::size_t k = 0; k < K; ++k)
        decay[(j + 1) * K + k] = decay[j * K + k] * estep[j * K + k];
    for (std::size_t j = j0 + 1; j <= j1; ++j) {
      const auto aj = aux.row(j);
      const auto a0 = aux.row(j0);
      const auto yr0 = y.row(j0);
      for (std::size_t k = 0; k < K; ++k)
        base[j * K + k] =
            decay[j * K + k] * (yr0[k] - a0[k]) + aj[k];
    }

    // Start from the warm-start path if given, else from the affine part.
    for (std::size_t j = j0 + 1; j <= j1; ++j) {
      auto yr = y.row(j);
      if (have_guess) {
        const auto gr = opts.initial_guess->row(j);
        std::copy(gr.begin(), gr.end(), yr.begin());
      } else {
        for (std::size_t k = 0; k < K; ++k) yr[k] = base[j * K + k];
      }
      synthesize(B, yr, vals);
      for (std::size_t i = 0; i < G; ++i)
        uv[j * G + i] = vals[i] + (shifted ? gav[j * G + i] : 0.0);
    }

    double change = 0.0, prev_change = 0.0;
    bool converged = false;
    int window_iters = 0;
    while (window_iters < opts.max_iter) {
      ++window_iters;
      ++total_iters;
      // Drift rows along the current iterate.
      for (std::size_t j = j0; j <= j1; ++j)
        drift_coeffs(p.f, lambda, opts.root, B, {uv.data() + j * G, G},
                     scratch, hpath.row(j));
      // Window convolution, then the new iterate and its change.
      std::fill(cwork.begin(), cwork.end(), 0.0);
      prev_change = change;
      change = 0.0;
      for (std::size_t j = j0; j < j1; ++j) {
        const auto hj = hpath.row(j);
        const double d = g.dt[j];
        for (std::size_t k = 0; k < K; ++k)
          cwork[k] = estep[j * K + k] * (cwork[k] + d * hj[k]);
        auto yr = y.row(j + 1);
        for (std::size_t k = 0; k < K; ++k)
          yr[k] = base[(j + 1) * K + k] - cwork[k];
        synthesize(B, yr, vals);
        double* uvj = uv.data() + (j + 1) * G;
        for (std::size_t i = 0; i < G; ++i) {
          const double nu = vals[i] + (shifted ? gav[(j + 1) * G + i] : 0.0);
          diff_row[i] = nu - uvj[i];
          uvj[i] = nu;
        }
        change = std::max(change, lp_norm_grid(B, diff_row, state_p));
      }
      if (change <= opts.tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      const double rate = prev_change > 0.0 ? change / prev_change : 0.0;
      char buf[192];
      std::snprintf(buf, sizeof buf,
                    "picard_solve: window %d not converged after %d sweeps "
                    "(last change %.3g, contraction estimate %.3g)",
                    n_windows, window_iters, change, rate);
      throw PicardFailure(buf, n_windows, window_iters, change, rate);
    }
    worst_final_change = std::max(worst_final_change, change);
    j0 = j1;
  }

  s.iterations = total_iters;
  s.subintervals = n_windows;
  s.final_change = worst_final_change;

  // Final drift rows over the whole grid (uv holds the converged state).
  for (std::size_t j = 0; j < N; ++j)
    drift_coeffs(p.f, lambda, opts.root, B, {uv.data() + j * G, G}, scratch,
                 hpath.row(j));
  s.drift = std::move(hpath);

  // Assemble u and v from the iterate and the jump convolution.
  s.u = CoeffPath::zeros(noise.grid, K);
  s.v = CoeffPath::zeros(noise.grid, K);
  for (std::size_t j = 0; j < N; ++j) {
    const auto yr = y.row(j);
    const auto gr = ga.path.row(j);
    auto ur = s.u.row(j);
    auto vr = s.v.row(j);
    for (std::size_t k = 0; k < K; ++k) {
      if (shifted) {
        vr[k] = yr[k];
        ur[k] = yr[k] + gr[k];
      } else {
        ur[k] = yr[k];
        vr[k] = yr[k] - gr[k];
      }
    }
  }
  s.wa = std::move(wa.path);
  s.ga = std::move(ga.path);
  s.ga_left = std::move(ga.left_limits);

  // Left limits of u and of the drift at event points.
  std::vector<double> left_state(G), gl_vals(G);
  for (const LeftLimit& ll : s.ga_left) {
    LeftLimit ul;
    ul.index = ll.index;
    ul.coeffs.resize(K);
    const auto vr = s.v.row(ll.index);
    for (std::size_t k = 0; k < K; ++k) ul.coeffs[k] = vr[k] + ll.coeffs[k];

    LeftLimit dl;
    dl.index = ll.index;
    dl.coeffs.resize(K);
    synthesize(B, ul.coeffs, left_state);
    drift_coeffs(p.f, lambda, opts.root, B, left_state, scratch, dl.coeffs);
    s.u_left.push_back(std::move(ul));
    s.drift_left.push_back(std::move(dl));
  }
  return s;
}

double mild_residual(const RegularizedSolution& s) {
  const SpectralBasis& B = *s.basis;
  const std::size_t K = B.n_modes;
  const TimeGrid& g = *s.grid;
  std::vector<double> conv(K, 0.0);
  double sup = 0.0;
  for (std::size_t j = 0; j < g.points(); ++j) {
    if (j > 0) {
      const double d = g.dt[j - 1];
      const auto hj = s.drift.row(j - 1);
      for (std::size_t k = 0; k < K; ++k)
        conv[k] = std::exp(-B.alpha[k] * d) * (conv[k] + d * hj[k]);
    }
    const double t = g.t[j];
    const auto ur = s.u.row(j);
    const auto war = s.wa.row(j);
    const auto gar = s.ga.row(j);
    double sq = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const double mild =
          std::exp(-B.alpha[k] * t) * s.u0[k] + war[k] + gar[k] - conv[k];
      const double d = ur[k] - mild;
      sq += d * d;
    }
    sup = std::max(sup, sq);
  }
  return std::sqrt(sup);
}

double strong_residual(const RegularizedSolution& s, double eps) {
  if (eps <= 0.0) throw std::invalid_argument("strong_residual: eps must be > 0");
  const SpectralBasis& B = *s.basis;
  const std::size_t K = B.n_modes;
  const TimeGrid& g = *s.grid;

  const auto drift_left_at = [&](std::size_t j) -> const std::vector<double>* {
    for (const LeftLimit& ll : s.drift_left)
      if (ll.index == j) return &ll.coeffs;
    return nullptr;
  };

  std::vector<double> m(K), am(K);
  for (std::size_t k = 0; k < K; ++k) {
    m[k] = 1.0 / (1.0 + eps * B.alpha[k]);
    am[k] = B.alpha[k] * m[k];
  }

  // Integrand rows: alpha m v + m drift; the drift is cadlag, so the value
  // entering the step [t_{j-1}, t_j] at its right end is the pre-jump one.
  std::vector<double> q(K, 0.0), integ_prev(K), integ(K);
  double sup = 0.0;
  for (std::size_t j = 0; j < g.points(); ++j) {
    const auto vr = s.v.row(j);
    const auto hr = s.drift.row(j);
    for (std::size_t k = 0; k < K; ++k)
      integ[k] = am[k] * vr[k] + m[k] * hr[k];
    if (j > 0) {
      const std::vector<double>* hl = drift_left_at(j);
      const double d = g.dt[j - 1];
      for (std::size_t k = 0; k < K; ++k) {
        const double right = hl ? am[k] * vr[k] + m[k] * (*hl)[k] : integ[k];
        q[k] += 0.5 * d * (integ_prev[k] + right);
      }
    }
    integ_prev = integ;

    const auto bmr = s.bm.row(j);
    double sq = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      // The mode weight m_k is constant in time, so the smoothed identity is
      // the exact one multiplied through by m_k, data terms included.
      const double defect =
          m[k] * (vr[k] - s.u0[k] - s.b[k] * bmr[k]) + q[k];
      sq += defect * defect;
    }
    sup = std::max(sup, sq);
  }
  return std::sqrt(sup);
}

MildSolution solve_mild(const Problem& p, std::span<const double> lambdas,
                        const NoiseRealization& noise,
                        const PicardOptions& opts) {
  if (lambdas.empty())
    throw std::invalid_argument("solve_mild: empty lambda schedule");
  for (std::size_t i = 0; i + 1 < lambdas.size(); ++i)
    if (!(lambdas[i + 1] < lambdas[i]))
      throw std::invalid_argument("solve_mild: schedule must strictly decrease");

  MildSolution ms;
  PicardOptions o = opts;
  RegularizedSolution prev;
  bool have_prev = false;
  for (double lambda : lambdas) {
    o.initial_guess = nullptr;
    if (have_prev)
      o.initial_guess =
          opts.route == PicardRoute::shifted ? &prev.v : &prev.u;
    RegularizedSolution cur = picard_solve(p, lambda, noise, o);
    ms.lambdas.push_back(lambda);
    ms.iterations.push_back(cur.iterations);
    if (have_prev) ms.distances.push_back(sup_l2_dist(prev.u, cur.u));
    prev = std::move(cur);
    have_prev = true;
  }
  for (std::size_t i = 0; i + 1 < ms.distances.size(); ++i)
    if (!(ms.distances[i + 1] < ms.distances[i])) ms.distances_decreasing = false;
  ms.final = std::move(prev);
  return ms;
}

Problem approximate_problem(const Problem& p, const ApproxLevel& lvl) {
  if (lvl.clip_u0 <= 0.0 || lvl.clip_mark <= 0.0)
    throw std::invalid_argument("approximate_problem: clips must be > 0");
  Problem q = p;
  const SpectralBasis& B = *p.basis;
  const auto clip_field = [&](const Field& f, double c) {
    std::vector<double> vals = synthesize(f);
    for (double& v : vals) v = std::clamp(v, -c, c);
    return analyze(p.basis, vals);
  };
  q.u0 = clip_field(p.u0, lvl.clip_u0);
  if (lvl.mode_cut > 0)
    for (std::size_t k = lvl.mode_cut; k < B.n_modes; ++k) q.wiener.b[k] = 0.0;
  for (auto& a : q.jumps.atoms) a.mark = clip_field(a.mark, lvl.clip_mark);
  return q;
}

double data_distance_sq(const Problem& a, const Problem& b) {
  if (a.basis.get() != b.basis.get() || a.T != b.T)
    throw std::invalid_argument("data_distance_sq: problems not comparable");
  if (a.jumps.atoms.size() != b.jumps.atoms.size())
    throw std::invalid_argument("data_distance_sq: atom count differs");
  double du0 = 0.0;
  for (std::size_t k = 0; k < a.u0.a.size(); ++k) {
    const double d = a.u0.a[k] - b.u0.a[k];
    du0 += d * d;
  }
  double db = 0.0;
  for (std::size_t k = 0; k < a.wiener.b.size(); ++k) {
    const double d = a.wiener.b[k] - b.wiener.b[k];
    db += d * d;
  }
  JumpSpec diff;
  for (std::size_t i = 0; i < a.jumps.atoms.size(); ++i) {
    if (a.jumps.atoms[i].weight != b.jumps.atoms[i].weight)
      throw std::invalid_argument("data_distance_sq: atom weights differ");
    JumpSpec::Atom at;
    at.weight = a.jumps.atoms[i].weight;
    at.mark = a.jumps.atoms[i].mark - b.jumps.atoms[i].mark;
    diff.atoms.push_back(std::move(at));
  }
  const double dg = norm_G_Lmq(diff, 2.0, a.T);
  return du0 + a.T * db + dg * dg;
}

GeneralizedSolution solve_generalized(const Problem& p,
                                      std::span<const ApproxLevel> levels,
                                      std::span<const double> lambdas,
                                      const NoiseRealization& noise,
                                      const PicardOptions& opts) {
  if (levels.empty())
    throw std::invalid_argument("solve_generalized: no approximation levels");
  GeneralizedSolution out;
  Problem prev_q;
  CoeffPath prev_u;
  bool have_prev = false;
  for (const ApproxLevel& lvl : levels) {
    Problem q = approximate_problem(p, lvl);
    MildSolution ms = solve_mild(q, lambdas, noise, opts);
    if (have_prev) {
      const double dd = std::sqrt(data_distance_sq(prev_q, q));
      const double sd = sup_l2_dist(prev_u, ms.final.u);
      out.data_dist.push_back(dd);
      out.level_dist.push_back(sd);
      out.ratio.push_back(dd > 0.0 ? sd / dd : 0.0);
    }
    prev_q = std::move(q);
    prev_u = std::move(ms.final.u);
    have_prev = true;
  }
  for (double r : out.ratio) out.fitted_C = std::max(out.fitted_C, r);
  out.u = std::move(prev_u);
  return out;
}

}  // namespace spde
