// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spde {

// Scalar monotone drift nonlinearity f with f(0) = 0 and polynomial growth
// |f(r)| <= K (1 + |r|^{p/2}), p >= 2.  `deriv` may be empty; root solves
// then fall back to pure bisection.
struct MonotoneFn {
  std::string name;
  std::function<double(double)> eval;
  std::function<double(double)> deriv;
  double growth_p = 2.0;
  double growth_K = 1.0;
};

MonotoneFn linear_drift(double c = 1.0);
MonotoneFn power_drift(double p);  // r |r|^{p/2 - 1}
MonotoneFn cubic_drift();          // r^3, growth exponent 6
MonotoneFn linear_plus_cubic_drift();
MonotoneFn drift_by_name(const std::string& name, double c, double p);

// Growth exponent of f(u) paired with the duality map of L_p: p^2 / 2.
double conjugate_growth(double p);

struct RootOptions {
  double tol = 1e-12;  // residual tolerance on |y + lambda f(y) - r|
  int max_iter = 200;
};

// Root solve y + lambda f(y) = r failed to reach tolerance.
class RootFailure : public std::runtime_error {
 public:
  RootFailure(const std::string& msg, double lo, double hi, double residual,
              int iterations)
      : std::runtime_error(msg),
        bracket_lo(lo),
        bracket_hi(hi),
        residual(residual),
        iterations(iterations) {}
  double bracket_lo, bracket_hi, residual;
  int iterations;
};

// Unique solution of y + lambda f(y) = r (Newton inside a maintained
// bracket, bisection fallback).  Monotonicity of f puts the root between
// 0 and r.
double resolvent(const MonotoneFn& f, double lambda, double r,
                 const RootOptions& opts = {});

// Yosida regularization f_lambda(r) = (r - resolvent(r)) / lambda.
// Lipschitz with constant 2/lambda and |f_lambda(r)| <= |f(r)|.
double yosida(const MonotoneFn& f, double lambda, double r,
              const RootOptions& opts = {});

// Checks f(0)=0, monotonicity and the stated growth bound on a sample grid.
// Returns human-readable violations; empty means the sampled checks passed.
std::vector<std::string> check_monotone(const MonotoneFn& f, double radius,
                                        int n_samples = 257);

}  // namespace spde
