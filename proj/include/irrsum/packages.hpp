// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <vector>

#include "irrsum/distribution.hpp"
#include "irrsum/real.hpp"

namespace irrsum {

/// b·⟨Δ_R, e^{tw}⟩ with R = nodes. `window` and `index` record where the
/// term came from in a decomposition.
struct PackageTerm {
  std::vector<Real> nodes;
  Complex b;
  long window = 0;
  long index = 0;
};

enum class PackageMethod {
  automatic,    ///< series unless |w|·diam(R) > kProductSwitch
  product,      ///< divided differences of e^{tw}, guard bits from the node geometry
  series,       ///< n!·Σ_k w^k/k!·h_{k−n}(R), cancellation-free in the h_m
  naive_double  ///< product formula in 53-bit arithmetic
};

/// |w|·diam above which the automatic method prefers divided differences.
inline constexpr double kProductSwitch = 32.0;

/// ⟨Δ_R, e^{tw}⟩ at the precision of w. The product method works at that
/// precision without guard bits, so it shows the raw cancellation.
Complex eval_package(const std::vector<Real>& nodes, const Complex& w,
                     PackageMethod method = PackageMethod::automatic);

/// v[i] = ⟨Δ_{{x_0..x_i}}, e^{tw}⟩ for every prefix of the sorted nodes,
/// accurate to about the precision of w (guard bits are added as needed).
std::vector<Complex> eval_package_prefixes(const std::vector<Real>& nodes, const Complex& w,
                                           PackageMethod method = PackageMethod::automatic);

/// √2·|w|^n·e^{β_min Re w}; requires Re w < 0.
Real package_bound(const std::vector<Real>& nodes, const Complex& w);

/// h(p) = Σ r!·a/(p−β)^{r+1}.
Complex hyperfunction_eval(const DiscreteDistribution& D, const Complex& p);

using TestFunction = std::function<Complex(const Complex&)>;

/// (1/2πi)∮ h(p)φ(p) dp by the trapezoid rule on `nodes` points of the circle.
Complex contour_pairing(const DiscreteDistribution& D, const TestFunction& phi, const Real& center,
                        const Real& radius, long nodes);

struct ContourResult {
  Complex value;
  long nodes = 0;
  bool converged = false;
};

/// Doubles the node count from `start` until two successive values agree to tol.
ContourResult contour_pairing_adaptive(const DiscreteDistribution& D, const TestFunction& phi,
                                       const Real& center, const Real& radius, const Real& tol,
                                       long start = 16, long max_nodes = 1L << 16);

}  // namespace irrsum
