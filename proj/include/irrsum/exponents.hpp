// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irrsum/real.hpp"

namespace irrsum {

/// A support point. When generated from R_α it remembers its exact
/// representation β = p + q/α.
struct Exponent {
  Real value;
  std::optional<long> p;
  std::optional<long> q;
};

/// Sorted, deduplicated support set, finite up to `cutoff` (+inf when the
/// set was given explicitly).
struct ExponentSet {
  std::vector<Exponent> points;
  Real cutoff;
  std::optional<Real> alpha;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  std::vector<Real> values() const;
  /// Whether some point lies within the merge tolerance of x.
  bool contains(const Real& x) const;
  /// Smallest point strictly greater than x (beyond merge tolerance).
  std::optional<Real> next_above(const Real& x) const;
};

/// Tolerance at which two support points are treated as the same point.
Real merge_tolerance(const Real& x);

/// R_α ∩ [0, cutoff] with R_α = ℕ + α⁻¹ℕ.
ExponentSet generate_r_alpha(const Real& alpha, const Real& cutoff);
/// ℕ ∩ [0, cutoff].
ExponentSet generate_integers(const Real& cutoff);
/// Explicit finite set; points are sorted and merged.
ExponentSet make_exponent_set(std::vector<Real> points);

struct DensityParams {
  Real mu;
  Real nu;
  Real window;
};

/// Linear density (μ, ν) of R for windows of length `window`.
///
/// Windows are [β, β+L) anchored at support points. Every finite set
/// satisfies the bound with μ = 0 and a large ν, so the pair is taken at
/// the knee of the feasible frontier: μ minimizes ν(μ) + μ·S, where ν(μ) is
/// the least admissible ν for that μ and S is the midpoint of the window
/// suprema. This recovers μ = α for R_α.
DensityParams density_params(const ExponentSet& R, const Real& window);

/// Largest count of points in a window [β, β+L) minus its allowance.
/// Nonpositive iff the density bound holds on every anchored window.
Real density_violation(const ExponentSet& R, const DensityParams& d);

/// Cut sequence t_0 = t_1 = t_2 = t_3 = 0, t_n = (n − 3.5)/k, with points
/// that fall on the support moved to the right.
class AdmissibleSequence {
 public:
  AdmissibleSequence(Real k, std::map<long, Real> nudges);

  const Real& k() const { return k_; }
  const std::map<long, Real>& nudges() const { return nudges_; }
  Real rule(long n) const;
  Real t(long n) const;
  Real operator()(long n) const { return t(n); }

  /// Same sequence with t_n = +inf for n > last: a finite number of
  /// integrations by parts, the last window running to infinity.
  AdmissibleSequence truncated_after(long last) const;
  std::optional<long> last_finite() const { return last_; }

  /// Largest n with t_{n+1} ≤ T (−1 if even t_1 > T).
  long max_window(const Real& T) const;

 private:
  Real k_;
  std::map<long, Real> nudges_;
  std::optional<long> last_;
};

AdmissibleSequence admissible_sequence(const Real& k, const ExponentSet& R);

}  // namespace irrsum
