// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include "spde/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spde/rng.hpp"

namespace spde {

WienerSpec WienerSpec::decay(std::size_t n_modes, double sigma, double beta) {
  if (sigma < 0.0) throw std::invalid_argument("WienerSpec::decay: sigma >= 0");
  WienerSpec s;
  s.b.resize(n_modes);
  for (std::size_t k = 0; k < n_modes; ++k)
    s.b[k] = sigma * std::pow(static_cast<double>(k + 1), -beta);
  return s;
}

double JumpSpec::total_intensity() const {
  double s = 0.0;
  for (const Atom& a : atoms) {
    if (a.weight < 0.0)
      throw std::invalid_argument("JumpSpec: atom weight must be >= 0");
    s += a.weight;
  }
  return s;
}

std::vector<double> JumpSpec::mean_mark(std::size_t n_modes) const {
  std::vector<double> g(n_modes, 0.0);
  for (const Atom& a : atoms) {
    if (a.mark.a.size() != n_modes)
      throw std::invalid_argument("JumpSpec::mean_mark: mark size mismatch");
    for (std::size_t k = 0; k < n_modes; ++k) g[k] += a.weight * a.mark.a[k];
  }
  return g;
}

std::vector<double> PoissonStream::times() const {
  std::vector<double> t;
  t.reserve(events.size());
  for (const Event& e : events) t.push_back(e.time);
  return t;
}

PoissonStream sample_poisson_stream(double T, const JumpSpec& spec,
                                    std::uint64_t seed) {
  if (T < 0.0) throw std::invalid_argument("sample_poisson_stream: T >= 0");
  PoissonStream s;
  s.horizon = T;
  const double theta = spec.total_intensity();
  if (theta == 0.0 || T == 0.0) return s;

  std::vector<double> cdf(spec.atoms.size());
  double acc = 0.0;
  for (std::size_t a = 0; a < spec.atoms.size(); ++a) {
    acc += spec.atoms[a].weight / theta;
    cdf[a] = acc;
  }
  cdf.back() = 1.0;

  Rng rng(seed);
  double t = rng.exponential(theta);
  while (t < T) {
    const double u = rng.uniform01();
    std::size_t a = 0;
    while (a + 1 < cdf.size() && u > cdf[a]) ++a;
    s.events.push_back({t, a});
    t += rng.exponential(theta);
  }
  return s;
}

WienerIncrements sample_wiener_increments(std::shared_ptr<const TimeGrid> grid,
                                          std::size_t n_modes,
                                          std::uint64_t seed) {
  WienerIncrements w;
  w.n_modes = n_modes;
  w.dw.resize(grid->steps() * n_modes);
  Rng rng(seed);
  for (std::size_t j = 0; j < grid->steps(); ++j) {
    const double sd = std::sqrt(grid->dt[j]);
    for (std::size_t k = 0; k < n_modes; ++k)
      w.dw[j * n_modes + k] = sd * rng.normal();
  }
  w.grid = std::move(grid);
  return w;
}

WienerRealization sample_wiener(std::shared_ptr<const TimeGrid> grid,
                                std::span<const double> alpha,
                                std::uint64_t seed) {
  const std::size_t n_modes = alpha.size();
  WienerRealization w;
  w.n_modes = n_modes;
  w.dw.resize(grid->steps() * n_modes);
  w.eta0.resize(grid->steps() * n_modes);
  Rng rng(seed);
  for (std::size_t j = 0; j < grid->steps(); ++j) {
    const double d = grid->dt[j];
    const double sd = std::sqrt(d);
    for (std::size_t k = 0; k < n_modes; ++k) {
      const double a = alpha[k];
      // Cov(dW, eta0) = q, Var(eta0) = v; draw dW then eta0 | dW.
      const double q = -std::expm1(-a * d) / a;
      const double v = -std::expm1(-2.0 * a * d) / (2.0 * a);
      const double z1 = rng.normal();
      const double z2 = rng.normal();
      const double dw = sd * z1;
      const double cvar = std::max(v - q * q / d, 0.0);
      w.dw[j * n_modes + k] = dw;
      w.eta0[j * n_modes + k] = (q / d) * dw + std::sqrt(cvar) * z2;
    }
  }
  w.grid = std::move(grid);
  return w;
}

WienerRealization coarsen_wiener(const WienerRealization& fine,
                                 std::shared_ptr<const TimeGrid> coarse,
                                 std::span<const double> alpha) {
  if (!grid_contains(*fine.grid, *coarse))
    throw std::invalid_argument("coarsen_wiener: coarse grid not nested in fine");
  if (alpha.size() != fine.n_modes)
    throw std::invalid_argument("coarsen_wiener: mode count mismatch");
  const std::size_t n_modes = fine.n_modes;
  WienerRealization w;
  w.n_modes = n_modes;
  w.dw.assign(coarse->steps() * n_modes, 0.0);
  w.eta0.assign(coarse->steps() * n_modes, 0.0);

  std::size_t jf = 0;  // fine step index
  for (std::size_t jc = 0; jc < coarse->steps(); ++jc) {
    const double t_end = coarse->t[jc + 1];
    while (jf < fine.grid->steps() && fine.grid->t[jf + 1] <= t_end) {
      const double tail = t_end - fine.grid->t[jf + 1];  // remaining decay
      for (std::size_t k = 0; k < n_modes; ++k) {
        w.dw[jc * n_modes + k] += fine.dw[jf * n_modes + k];
        w.eta0[jc * n_modes + k] +=
            std::exp(-alpha[k] * tail) * fine.eta0[jf * n_modes + k];
      }
      ++jf;
    }
  }
  w.grid = std::move(coarse);
  return w;
}

NormEstimate norm_B_gamma(const WienerSpec& spec, double q, double p,
                          const SpectralBasis& basis, double T,
                          std::size_t draws, std::uint64_t seed) {
  if (q < 1.0 || p < 1.0) throw std::invalid_argument("norm_B_gamma: q,p >= 1");
  if (T < 0.0) throw std::invalid_argument("norm_B_gamma: T >= 0");
  if (spec.b.size() != basis.n_modes)
    throw std::invalid_argument("norm_B_gamma: spec/basis size mismatch");
  const double tfac = std::pow(T, 1.0 / q);
  NormEstimate out;
  if (p == 2.0) {
    // Hilbert-Schmidt case: E||sum gamma_k b_k e_k||_2^2 = sum b_k^2 exactly.
    double s = 0.0;
    for (double b : spec.b) s += b * b;
    out.value = tfac * std::sqrt(s);
    out.standard_error = 0.0;
    out.draws = 0;
    return out;
  }
  if (draws < 2) throw std::invalid_argument("norm_B_gamma: need draws >= 2");
  Rng rng(derive_seed(seed, stream_tag::gauss_norm, 0));
  std::vector<double> coeffs(basis.n_modes);
  std::vector<double> vals(basis.n_grid);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t m = 0; m < draws; ++m) {
    for (std::size_t k = 0; k < basis.n_modes; ++k)
      coeffs[k] = spec.b[k] * rng.normal();
    synthesize(basis, coeffs, vals);
    const double n = lp_norm_grid(basis, vals, p);
    sum += n * n;
    sum_sq += n * n * n * n;
  }
  const double mean = sum / static_cast<double>(draws);
  const double var =
      std::max(0.0, (sum_sq - sum * sum / static_cast<double>(draws)) /
                        static_cast<double>(draws - 1));
  const double se_mean = std::sqrt(var / static_cast<double>(draws));
  out.value = tfac * std::sqrt(mean);
  // delta method: d sqrt(m)/dm = 1/(2 sqrt(m))
  out.standard_error =
      mean > 0.0 ? tfac * se_mean / (2.0 * std::sqrt(mean)) : 0.0;
  out.draws = draws;
  return out;
}

double norm_G_Lmq(const JumpSpec& spec, double q, double T) {
  if (q < 2.0) throw std::invalid_argument("norm_G_Lmq: need q >= 2");
  if (T < 0.0) throw std::invalid_argument("norm_G_Lmq: T >= 0");
  double term_q = 0.0;   // integral of ||g||_q^q against the intensity
  double term_2 = 0.0;   // integral of ||g||_q^2 against the intensity
  for (const JumpSpec::Atom& a : spec.atoms) {
    const double n = lp_norm(a.mark, q);
    term_q += a.weight * std::pow(n, q);
    term_2 += a.weight * n * n;
  }
  return std::pow(T * term_q + T * std::pow(term_2, q / 2.0), 1.0 / q);
}

}  // namespace spde
