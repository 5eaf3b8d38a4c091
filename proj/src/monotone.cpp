// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include "spde/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace spde {

MonotoneFn linear_drift(double c) {
  if (c < 0.0) throw std::invalid_argument("linear_drift: c must be >= 0");
  MonotoneFn f;
  f.name = "linear";
  f.eval = [c](double r) { return c * r; };
  f.deriv = [c](double) { return c; };
  f.growth_p = 2.0;
  f.growth_K = c;
  return f;
}

MonotoneFn power_drift(double p) {
  if (p < 2.0) throw std::invalid_argument("power_drift: need p >= 2");
  const double q = p / 2.0;  // |f(r)| = |r|^q
  MonotoneFn f;
  f.name = "power";
  f.eval = [q](double r) {
    return r == 0.0 ? 0.0 : r * std::pow(std::fabs(r), q - 1.0);
  };
  f.deriv = [q](double r) {
    return r == 0.0 ? (q > 1.0 ? 0.0 : 1.0) : q * std::pow(std::fabs(r), q - 1.0);
  };
  f.growth_p = p;
  f.growth_K = 1.0;
  return f;
}

MonotoneFn cubic_drift() {
  MonotoneFn f;
  f.name = "cubic";
  f.eval = [](double r) { return r * r * r; };
  f.deriv = [](double r) { return 3.0 * r * r; };
  f.growth_p = 6.0;
  f.growth_K = 1.0;
  return f;
}

MonotoneFn linear_plus_cubic_drift() {
  MonotoneFn f;
  f.name = "linear_plus_cubic";
  f.eval = [](double r) { return r + r * r * r; };
  f.deriv = [](double r) { return 1.0 + 3.0 * r * r; };
  f.growth_p = 6.0;
  // sup_r |r + r^3| / (1 + |r|^3) is about 1.116, attained near |r| = 1.86
  f.growth_K = 1.25;
  return f;
}

MonotoneFn drift_by_name(const std::string& name, double c, double p) {
  if (name == "linear") return linear_drift(c);
  if (name == "power") return power_drift(p);
  if (name == "cubic") return cubic_drift();
  if (name == "linear_plus_cubic") return linear_plus_cubic_drift();
  throw std::invalid_argument("unknown drift name: " + name);
}

double conjugate_growth(double p) {
  if (p < 2.0) throw std::invalid_argument("conjugate_growth: need p >= 2");
  return p * p / 2.0;
}

double resolvent(const MonotoneFn& f, double lambda, double r,
                 const RootOptions& opts) {
  if (lambda <= 0.0) throw std::invalid_argument("resolvent: lambda must be > 0");
  if (!f.eval) throw std::invalid_argument("resolvent: drift has no eval");

  const auto g = [&](double y) { return y + lambda * f.eval(y) - r; };

  // f monotone with f(0)=0 puts the root in [min(0,r), max(0,r)].
  double lo = std::min(0.0, r);
  double hi = std::max(0.0, r);
  if (lo == hi) return lo;

  double y = r / (1.0 + lambda);  // exact for f = identity, decent otherwise
  y = std::clamp(y, lo, hi);

  double gy = g(y);
  for (int it = 0; it < opts.max_iter; ++it) {
    if (std::fabs(gy) <= opts.tol) return y;
    if (gy < 0.0) lo = y; else hi = y;

    double y_next;
    if (f.deriv) {
      const double slope = 1.0 + lambda * f.deriv(y);
      y_next = (slope > 0.0) ? y - gy / slope : 0.5 * (lo + hi);
      if (!(y_next > lo && y_next < hi)) y_next = 0.5 * (lo + hi);
    } else {
      y_next = 0.5 * (lo + hi);
    }
    y = y_next;
    gy = g(y);
  }
  if (std::fabs(gy) <= opts.tol) return y;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "resolvent: no root to tol=%g after %d iterations "
                "(bracket [%g,%g], residual %g)",
                opts.tol, opts.max_iter, lo, hi, gy);
  throw RootFailure(buf, lo, hi, gy, opts.max_iter);
}

double yosida(const MonotoneFn& f, double lambda, double r,
              const RootOptions& opts) {
  return (r - resolvent(f, lambda, r, opts)) / lambda;
}

std::vector<std::string> check_monotone(const MonotoneFn& f, double radius,
                                        int n_samples) {
  std::vector<std::string> bad;
  char buf[160];
  if (!f.eval) {
    bad.emplace_back("drift has no eval function");
    return bad;
  }
  if (std::fabs(f.eval(0.0)) > 1e-14) {
    std::snprintf(buf, sizeof buf, "f(0) = %g, expected 0", f.eval(0.0));
    bad.emplace_back(buf);
  }
  double prev_r = -radius;
  double prev_v = f.eval(prev_r);
  for (int i = 1; i < n_samples; ++i) {
    const double r = -radius + 2.0 * radius * i / (n_samples - 1);
    const double v = f.eval(r);
    if (v < prev_v - 1e-12) {
      std::snprintf(buf, sizeof buf, "not monotone: f(%g)=%g < f(%g)=%g", r, v,
                    prev_r, prev_v);
      bad.emplace_back(buf);
      break;
    }
    prev_r = r;
    prev_v = v;
  }
  for (int i = 0; i < n_samples; ++i) {
    const double r = -radius + 2.0 * radius * i / (n_samples - 1);
    const double bound =
        f.growth_K * (1.0 + std::pow(std::fabs(r), f.growth_p / 2.0));
    if (std::fabs(f.eval(r)) > bound * (1.0 + 1e-12)) {
      std::snprintf(buf, sizeof buf, "growth violated at r=%g: |f|=%g > %g", r,
                    std::fabs(f.eval(r)), bound);
      bad.emplace_back(buf);
      break;
    }
  }
  return bad;
}

}  // namespace spde
