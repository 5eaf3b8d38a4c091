// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace spde {

// Truncated eigenbasis of the Dirichlet Laplacian on (0,1):
// e_k(x) = sqrt(2) sin(k pi x), eigenvalue alpha_k = (k pi)^2, k = 1..K.
// Grid: interior points x_i = i h, h = 1/(n_grid+1).  With
// n_grid = grid_factor * n_modes and grid_factor >= 2 the rectangle-rule
// quadrature below inverts synthesis exactly (discrete sine orthogonality).
struct SpectralBasis {
  std::size_t n_modes = 0;
  std::size_t n_grid = 0;
  double h = 0.0;                    // grid spacing == quadrature weight
  std::vector<double> alpha;         // eigenvalues, size n_modes
  std::vector<double> x;             // grid points, size n_grid
  std::vector<double> e;             // e[k*n_grid + i] = e_{k+1}(x_i)

  static std::shared_ptr<const SpectralBasis> make(std::size_t n_modes,
                                                   std::size_t grid_factor = 4);
};

// Spectral element: coefficient vector against a shared basis.
struct Field {
  std::shared_ptr<const SpectralBasis> basis;
  std::vector<double> a;  // size basis->n_modes

  static Field zero(std::shared_ptr<const SpectralBasis> b);
  // coeffs given as (mode index starting at 1, coefficient) pairs
  static Field from_modes(std::shared_ptr<const SpectralBasis> b,
                          std::span<const std::pair<std::size_t, double>> modes);
};

Field operator+(const Field& x, const Field& y);
Field operator-(const Field& x, const Field& y);
Field operator*(double s, const Field& x);

// Point evaluation on the grid: out[i] = sum_k a_k e_k(x_i).
void synthesize(const SpectralBasis& b, std::span<const double> coeffs,
                std::span<double> out);
std::vector<double> synthesize(const Field& u);

// Quadrature projection: coeffs[k] = h * sum_i vals_i e_k(x_i).
// Exact left inverse of synthesize for k <= n_modes.
void analyze(const SpectralBasis& b, std::span<const double> grid_vals,
             std::span<double> coeffs);
Field analyze(std::shared_ptr<const SpectralBasis> b,
              std::span<const double> grid_vals);

// Heat semigroup e^{-tA}: per-mode decay e^{-alpha_k t}.  Requires t >= 0.
Field apply_semigroup(double t, const Field& u);

// (I + eps A)^{-1}: per-mode factor 1/(1 + eps alpha_k).  Requires eps > 0.
Field resolvent_A(double eps, const Field& u);

// A u: per-mode multiplication by alpha_k.
Field apply_A(const Field& u);

// L_p(0,1) norm by rectangle-rule quadrature on the grid, p >= 1.
// For p = 2 this agrees with the coefficient Euclidean norm to rounding.
double lp_norm(const Field& u, double p);
double lp_norm_grid(const SpectralBasis& b, std::span<const double> vals,
                    double p);

// Euclidean norm of the coefficients (= L_2 norm, Parseval).
double l2_norm_coeffs(std::span<const double> coeffs);

// Duality pairing <g, J_p(u)> with the normalized duality map of L_p:
// integral of g * u |u|^{p-2} / ||u||_p^{p-2}.  Requires p >= 2, u != 0.
double duality_pairing(const Field& g, const Field& u, double p);

// Serial reference kernels, kept as the ground truth the parallel versions
// are tested against.
namespace reference {
void synthesize(const SpectralBasis& b, std::span<const double> coeffs,
                std::span<double> out);
void analyze(const SpectralBasis& b, std::span<const double> grid_vals,
             std::span<double> coeffs);
}  // namespace reference

}  // namespace spde
