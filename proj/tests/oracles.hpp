#pragma once

// Test-only reference computations. Nothing here calls into the solver paths
// it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <span>

#include "riemannlab/euler.hpp"

namespace oracle {

using riemannlab::GasModel;
using riemannlab::PrimitiveState;

/// Star-pressure function written out independently of the library.
inline double star_function(double p, const PrimitiveState& wl, const PrimitiveState& wr,
                            double g) {
  auto side = [g](double p, const PrimitiveState& w) {
    if (p > w.p) {
      const double a = 2.0 / ((g + 1.0) * w.rho);
      const double b = (g - 1.0) / (g + 1.0) * w.p;
      return (p - w.p) * std::sqrt(a / (p + b));
    }
    const double c = std::sqrt(g * w.p / w.rho);
    return 2.0 * c / (g - 1.0) * (std::pow(p / w.p, (g - 1.0) / (2.0 * g)) - 1.0);
  };
  return side(p, wl) + side(p, wr) + (wr.u - wl.u);
}

/// Bisection on [1e-12, 10 max(p_L, p_R)] (widened while the upper end is
/// still below the root), run until the bracket stops shrinking.
inline double bisect_star_pressure(const PrimitiveState& wl, const PrimitiveState& wr,
                                   double g) {
  double lo = 1e-12;
  double hi = 10.0 * std::max(wl.p, wr.p);
  while (star_function(hi, wl, wr, g) < 0.0) hi *= 10.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (star_function(mid, wl, wr, g) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// u* from the star pressure via u* = u_L - f_L(p*).
inline double star_velocity(double p_star, const PrimitiveState& wl, double g) {
  if (p_star > wl.p) {
    const double a = 2.0 / ((g + 1.0) * wl.rho);
    const double b = (g - 1.0) / (g + 1.0) * wl.p;
    return wl.u - (p_star - wl.p) * std::sqrt(a / (p_star + b));
  }
  const double c = std::sqrt(g * wl.p / wl.rho);
  return wl.u - 2.0 * c / (g - 1.0) * (std::pow(p_star / wl.p, (g - 1.0) / (2.0 * g)) - 1.0);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
  return std::exp(d(rng));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// rho, p log-uniform in [1e-3, 1e3], |u| <= 1e2.
inline PrimitiveState random_state(std::mt19937_64& rng) {
  return {log_uniform(rng, 1e-3, 1e3), uniform(rng, -1e2, 1e2), log_uniform(rng, 1e-3, 1e3)};
}

/// States within a factor ~10 of unity and moderate velocities.
inline PrimitiveState moderate_state(std::mt19937_64& rng) {
  return {log_uniform(rng, 0.1, 10.0), uniform(rng, -2.0, 2.0), log_uniform(rng, 0.1, 10.0)};
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

/// FNV-1a over the byte patterns of a sequence of doubles.
inline std::uint64_t fnv1a(std::span<const double> values) {
  std::uint64_t h = 1469598103934665603ull;
  for (double v : values) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof v);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  }
  return h;
}

} // namespace oracle
