// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

#include "irrsum/real.hpp"

namespace irrsum {

/// H_{a,k} = {x + iy : x + (k/2)·log(x² + y²) < a}.
struct LogDomain {
  Real a;
  Real k;
};

/// Ω_C = Φ_C({Re z < a}) with Φ_C(z) = z − C·√(1 + z²) on the principal branch.
struct QuadDomain {
  Real C;
  Real a;
};

enum class Membership { inside, outside, indeterminate };

/// Strict membership; throws at w = 0.
bool log_contains(const LogDomain& H, const Complex& w);

/// Whether |w^p e^{βw}| ≤ e^{aβ}. Requires β > 0, 0 ≤ p ≤ kβ, |w| ≥ 1 and
/// w ∈ H_{a,k}; under these the inequality always holds.
bool cle_check(const Complex& w, const Real& a, const Real& k, const Real& beta, long p);

Complex quad_map(const Real& C, const Complex& z);

/// Solves Φ_C(z) = w by Newton from w/(1 + C) and tests Re z < a.
/// Points with Re w ≥ a are outside without solving, since Re Φ_C(z) ≤ Re z.
Membership quad_contains(const QuadDomain& Q, const Complex& w);

/// Boundary points x + iy of H_{a,k} at `count` evenly spaced y. x is the
/// first point where the defining inequality fails when coming from −∞.
std::vector<Complex> boundary_samples(const LogDomain& H, const Real& ymin, const Real& ymax, long count);

/// Φ_C(a + iy) at `count` evenly spaced y.
std::vector<Complex> boundary_samples(const QuadDomain& Q, const Real& ymin, const Real& ymax, long count);

}  // namespace irrsum
