// SPDX-License-Identifier: MIT
// Independent reference computations for the tests: Gauss-Legendre
// quadrature, closed forms and small helpers. Nothing here calls into the
// library code under test beyond the arithmetic carriers.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "irrsum/real.hpp"

namespace oracle {

using irrsum::Complex;
using irrsum::Precision;
using irrsum::Real;

inline double rel_err(const Complex& got, const Complex& want) {
  const Real d = abs(got - want);
  const Real s = abs(want);
  return (s.is_zero() ? d : d / s).to_double();
}

inline double rel_err(const Real& got, const Real& want) { return rel_err(Complex(got), Complex(want)); }

inline Complex cw(double re, double im, Precision p = irrsum::kDefaultPrecision) { return Complex(re, im, p); }

/// Nodes and weights of n-point Gauss-Legendre on [−1, 1], by Newton on P_n.
struct GaussLegendre {
  std::vector<Real> x;
  std::vector<Real> w;
  GaussLegendre(int n, Precision p) {
    const Real pi = Real::pi(p);
    for (int i = 1; i <= n; ++i) {
      Real z = cos(pi * (4L * i - 1) / (4L * n + 2));
      Real dp(p);
      for (int it = 0; it < 100; ++it) {
        Real p0(1L, p), p1 = z;
        for (int k = 2; k <= n; ++k) {
          Real p2 = ((2L * k - 1) * z * p1 - (k - 1L) * p0) / static_cast<long>(k);
          p0 = std::move(p1);
          p1 = std::move(p2);
        }
        dp = static_cast<long>(n) * (z * p1 - p0) / (z * z - 1L);
        const Real dz = p1 / dp;
        z -= dz;
        if (abs(dz) < ldexp(Real(1L, p), -(p.bits - 4))) break;
      }
      x.push_back(z);
      w.push_back(Real(2L, p) / ((1L - z * z) * dp * dp));
    }
  }
};

/// Composite Gauss-Legendre over `panels` equal panels of [a, b].
template <class T>
T integrate(const std::function<T(const Real&)>& f, const Real& a, const Real& b, int panels = 16,
            int order = 32) {
  const Precision p = std::max(a.precision(), b.precision());
  static thread_local std::vector<std::pair<std::pair<long, int>, GaussLegendre>> cache;
  const GaussLegendre* gl = nullptr;
  for (const auto& [key, g] : cache) {
    if (key.first == p.bits && key.second == order) gl = &g;
  }
  if (gl == nullptr) {
    cache.emplace_back(std::make_pair(p.bits, order), GaussLegendre(order, p));
    gl = &cache.back().second;
  }
  T acc = T(Real(p));
  const Real h = (b - a) / static_cast<long>(panels);
  for (int j = 0; j < panels; ++j) {
    const Real lo = a + h * static_cast<long>(j);
    const Real mid = lo + h / 2L;
    for (std::size_t i = 0; i < gl->x.size(); ++i) {
      const Real t = mid + h / 2L * gl->x[i];
      acc += f(t) * (gl->w[i] * h / 2L);
    }
  }
  return acc;
}

/// 1/((1 − e^{w/√2})(1 − e^w)), the unit series on ℕ + √2·ℕ... in closed form.
inline Complex r_sqrt2_closed(const Complex& w) {
  const Precision p = w.precision();
  const Complex one(Real(1L, p));
  return one / ((one - exp(w / sqrt(Real(2L, p)))) * (one - exp(w)));
}

/// 1/(1 − e^w)
inline Complex geometric_closed(const Complex& w) {
  const Complex one(Real(1L, w.precision()));
  return one / (one - exp(w));
}

inline std::mt19937_64 rng(unsigned long seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace oracle
