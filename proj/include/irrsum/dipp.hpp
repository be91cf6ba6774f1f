// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irrsum/distribution.hpp"
#include "irrsum/exponents.hpp"
#include "irrsum/series.hpp"

namespace irrsum {

/// Window n: D_n lives on [lo, hi] = [t_n, t_{n+1}].
struct DippWindow {
  long n = 0;
  Real lo;
  Real hi;
  DiscreteDistribution D;
};

/// Border values and window distributions of the diagonal integration by
/// parts, built once and then immutable.
struct DippState {
  Series series;
  AdmissibleSequence seq{Real(1L, Precision{64}), {}};
  long n_max = 0;
  Precision precision;
  /// t_0..t_{n_max+1}; the last entry may be +inf
  std::vector<Real> t;
  /// border[m][k−1] = (I^kD)(t_m) for k = 1..m (empty when t_m = +inf)
  std::vector<std::vector<Complex>> border;
  /// Σ_β |a_β| (t_m − β)^{k−1}/(k−1)!, the magnitude behind border[m][k−1]
  std::vector<std::vector<Real>> border_mag;
  /// number of atoms with β ≤ t_m
  std::vector<std::size_t> atoms_upto;
  std::vector<DippWindow> windows;

  /// BT_m: atoms (t_m, k−1, (−1)^k (I^kD)(t_m)) for k = 1..m.
  DiscreteDistribution border_terms(long m) const;
  bool last_window_infinite() const { return t.back().is_inf(); }
};

/// Admissible sequence for a materialized series, built at 64 bits. For a
/// finite (explicit) series it is truncated so the last window [t_L, ∞)
/// holds the remaining atoms.
AdmissibleSequence make_sequence(const Series& s, const Real& k);

/// Largest usable window index: the truncation point of a truncated
/// sequence, otherwise the largest n with t_{n+1} ≤ cutoff.
long max_windows(const Series& s, const AdmissibleSequence& seq);

/// Builds D_0..D_{n_max}. n_max < 0 picks max_windows. Throws when a cut
/// point lies on the support or t_{n_max+1} exceeds the cutoff.
DippState window_distributions(const Series& s, const AdmissibleSequence& seq, long n_max = -1);

/// Ã_n computed from the closed-form integrals; `magnitude`, when given,
/// receives the same expression with every term in absolute value.
Complex dipp_term(const DippState& state, long n, const Complex& w, Real* magnitude = nullptr);

/// Absolute diagnostic of window n:
/// |w|^n ∫|I^nD| e^{t Re w} dt + |I^{n+1}D(t_{n+1})| |w|^n e^{t_{n+1} Re w}.
Real dipp_diagnostic(const DippState& state, long n, const Complex& w);

/// Σ_{n ≤ n_max} ∫_{t_n}^{t_{n+1}} |I^nD| e^{at} dt + Σ_{1≤n≤n_max} |I^nD(t_n)| e^{a t_n};
/// the n = 0 integral is the direct Σ_{β ≤ t_1} |a_β| e^{aβ}.
Real dipp_bound_estimate(const DippState& state, const Real& a);

/// I^nD restricted to window n ≥ 1, as pieces between the window atoms.
PiecewisePolynomial<Complex> window_primitive(const DippState& state, long n);

struct DippDiagnostics {
  std::vector<Complex> terms;
  std::vector<Real> diagnostic;
  Real diagnostic_sum;
  /// geometric extrapolation of the remaining diagnostic terms
  Real tail;
  /// first-order rounding estimate at the working precision
  Real rounding;
  /// truncated boundedness functional at a = Re w
  Real bound_estimate;
  long windows = 0;
  Precision working;
  /// support truncation point (+inf for finite series)
  Real truncation;
  std::string note;
};

struct DippResult {
  Complex value;
  bool converged = false;
  DippDiagnostics diagnostics;
};

/// Whether the windows of width 1/k shrink the terms geometrically at w:
/// |w|/k > 1 and (|w|/k)·e^{1 + Re(w)/k} < 1. Outside this regime the
/// partial sums need not approach the sum even when the terms look small.
bool dipp_regime(const Real& k, const Complex& w);

/// Partial sums Σ_{n ≤ N} Ã_n at a fixed state, stopping once the tail is
/// below tol·|value|.
DippResult dipp_sum(const DippState& state, const Complex& w, const Real& tol);

/// Full driver: materializes the series, builds the state and raises the
/// working precision (doubling, capped at kMaxPrecisionBits) until rounding
/// is below tol·|value|. The value is returned at precision p.
DippResult dipp_sum(const SeriesSpec& spec, const Real& k, const Complex& w, const Real& tol,
                    long n_max, Precision p);

}  // namespace irrsum
