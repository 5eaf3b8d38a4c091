// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include "spde/spectral.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace spde {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

void require_same_basis(const Field& x, const Field& y, const char* op) {
  if (x.basis.get() != y.basis.get())
    throw std::invalid_argument(std::string(op) + ": fields use different bases");
}
}  // namespace

std::shared_ptr<const SpectralBasis> SpectralBasis::make(std::size_t n_modes,
                                                         std::size_t grid_factor) {
  if (n_modes == 0) throw std::invalid_argument("SpectralBasis: n_modes must be >= 1");
  if (grid_factor < 2)
    throw std::invalid_argument("SpectralBasis: grid_factor must be >= 2");
  auto b = std::make_shared<SpectralBasis>();
  b->n_modes = n_modes;
  b->n_grid = grid_factor * n_modes;
  b->h = 1.0 / static_cast<double>(b->n_grid + 1);
  b->alpha.resize(n_modes);
  b->x.resize(b->n_grid);
  b->e.resize(n_modes * b->n_grid);
  for (std::size_t k = 0; k < n_modes; ++k)
    b->alpha[k] = static_cast<double>((k + 1) * (k + 1)) * kPi * kPi;
  for (std::size_t i = 0; i < b->n_grid; ++i)
    b->x[i] = static_cast<double>(i + 1) * b->h;
  const double sqrt2 = std::sqrt(2.0);
  for (std::size_t k = 0; k < n_modes; ++k)
    for (std::size_t i = 0; i < b->n_grid; ++i)
      b->e[k * b->n_grid + i] = sqrt2 * std::sin(static_cast<double>(k + 1) * kPi * b->x[i]);
  return b;
}

Field Field::zero(std::shared_ptr<const SpectralBasis> b) {
  Field u;
  u.a.assign(b->n_modes, 0.0);
  u.basis = std::move(b);
  return u;
}

Field Field::from_modes(std::shared_ptr<const SpectralBasis> b,
                        std::span<const std::pair<std::size_t, double>> modes) {
  Field u = zero(std::move(b));
  for (const auto& [k, c] : modes) {
    if (k < 1 || k > u.basis->n_modes)
      throw std::invalid_argument("Field::from_modes: mode index out of range");
    u.a[k - 1] = c;
  }
  return u;
}

Field operator+(const Field& x, const Field& y) {
  require_same_basis(x, y, "operator+");
  Field z = x;
  for (std::size_t k = 0; k < z.a.size(); ++k) z.a[k] += y.a[k];
  return z;
}

Field operator-(const Field& x, const Field& y) {
  require_same_basis(x, y, "operator-");
  Field z = x;
  for (std::size_t k = 0; k < z.a.size(); ++k) z.a[k] -= y.a[k];
  return z;
}

Field operator*(double s, const Field& x) {
  Field z = x;
  for (double& c : z.a) c *= s;
  return z;
}

void synthesize(const SpectralBasis& b, std::span<const double> coeffs,
                std::span<double> out) {
  if (coeffs.size() != b.n_modes || out.size() != b.n_grid)
    throw std::invalid_argument("synthesize: size mismatch");
  const std::int64_t n = static_cast<std::int64_t>(b.n_grid);
  const std::int64_t m = static_cast<std::int64_t>(b.n_modes);
  const double* tab = b.e.data();
  const double* c = coeffs.data();
  double* o = out.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::int64_t k = 0; k < m; ++k) s += c[k] * tab[k * n + i];
    o[i] = s;
  }
}

std::vector<double> synthesize(const Field& u) {
  std::vector<double> out(u.basis->n_grid);
  synthesize(*u.basis, u.a, out);
  return out;
}

void analyze(const SpectralBasis& b, std::span<const double> grid_vals,
             std::span<double> coeffs) {
  if (grid_vals.size() != b.n_grid || coeffs.size() != b.n_modes)
    throw std::invalid_argument("analyze: size mismatch");
  const std::int64_t n = static_cast<std::int64_t>(b.n_grid);
  const std::int64_t m = static_cast<std::int64_t>(b.n_modes);
  const double* tab = b.e.data();
  const double* v = grid_vals.data();
  double* c = coeffs.data();
  const double h = b.h;
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < m; ++k) {
    double s = 0.0;
    for (std::int64_t i = 0; i < n; ++i) s += v[i] * tab[k * n + i];
    c[k] = h * s;
  }
}

Field analyze(std::shared_ptr<const SpectralBasis> b,
              std::span<const double> grid_vals) {
  Field u = Field::zero(std::move(b));
  analyze(*u.basis, grid_vals, u.a);
  return u;
}

namespace reference {

void synthesize(const SpectralBasis& b, std::span<const double> coeffs,
                std::span<double> out) {
  if (coeffs.size() != b.n_modes || out.size() != b.n_grid)
    throw std::invalid_argument("reference::synthesize: size mismatch");
  for (std::size_t i = 0; i < b.n_grid; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < b.n_modes; ++k)
      s += coeffs[k] * b.e[k * b.n_grid + i];
    out[i] = s;
  }
}

void analyze(const SpectralBasis& b, std::span<const double> grid_vals,
             std::span<double> coeffs) {
  if (grid_vals.size() != b.n_grid || coeffs.size() != b.n_modes)
    throw std::invalid_argument("reference::analyze: size mismatch");
  for (std::size_t k = 0; k < b.n_modes; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < b.n_grid; ++i)
      s += grid_vals[i] * b.e[k * b.n_grid + i];
    coeffs[k] = b.h * s;
  }
}

}  // namespace reference

Field apply_semigroup(double t, const Field& u) {
  if (t < 0.0) throw std::invalid_argument("apply_semigroup: t must be >= 0");
  Field z = u;
  for (std::size_t k = 0; k < z.a.size(); ++k)
    z.a[k] *= std::exp(-u.basis->alpha[k] * t);
  return z;
}

Field resolvent_A(double eps, const Field& u) {
  if (eps <= 0.0) throw std::invalid_argument("resolvent_A: eps must be > 0");
  Field z = u;
  for (std::size_t k = 0; k < z.a.size(); ++k)
    z.a[k] /= 1.0 + eps * u.basis->alpha[k];
  return z;
}

Field apply_A(const Field& u) {
  Field z = u;
  for (std::size_t k = 0; k < z.a.size(); ++k) z.a[k] *= u.basis->alpha[k];
  return z;
}

double lp_norm_grid(const SpectralBasis& b, std::span<const double> vals,
                    double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: need p >= 1");
  if (vals.size() != b.n_grid) throw std::invalid_argument("lp_norm: size mismatch");
  double s = 0.0;
  if (p == 2.0) {
    for (double v : vals) s += v * v;
  } else {
    for (double v : vals) s += std::pow(std::fabs(v), p);
  }
  return std::pow(b.h * s, 1.0 / p);
}

double lp_norm(const Field& u, double p) {
  const std::vector<double> vals = synthesize(u);
  return lp_norm_grid(*u.basis, vals, p);
}

double l2_norm_coeffs(std::span<const double> coeffs) {
  double s = 0.0;
  for (double c : coeffs) s += c * c;
  return std::sqrt(s);
}

double duality_pairing(const Field& g, const Field& u, double p) {
  require_same_basis(g, u, "duality_pairing");
  if (p < 2.0) throw std::invalid_argument("duality_pairing: need p >= 2");
  const std::vector<double> gv = synthesize(g);
  const std::vector<double> uv = synthesize(u);
  const SpectralBasis& b = *u.basis;
  double num = 0.0;
  for (std::size_t i = 0; i < b.n_grid; ++i)
    num += gv[i] * uv[i] * std::pow(std::fabs(uv[i]), p - 2.0);
  num *= b.h;
  const double nu = lp_norm_grid(b, uv, p);
  if (nu == 0.0) throw std::invalid_argument("duality_pairing: u must be nonzero");
  return num / std::pow(nu, p - 2.0);
}

}  // namespace spde
