// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irrsum/dipp.hpp"
#include "irrsum/packages.hpp"
#include "irrsum/series.hpp"

namespace irrsum {

/// Σ_n b_n ⟨Δ_{R_n}, e^{tw}⟩ together with the constants certifying it.
struct PackageDecomposition {
  std::vector<PackageTerm> terms;
  /// μ + 2k
  Real k_prime;
  /// measured max of N_n − k'·β_n over the emitted terms
  Real c;
  /// a-priori bound 3.5(μ/k + 2) + ν
  Real c_bound;
  Real r;
  bool r_clipped = false;
  Real mu;
  Real nu;
  /// partial sums of |b_n| r^{β_n} in term order
  std::vector<Real> tail;
  Precision precision;
  bool integer_support = false;
  /// the series was reproduced exactly: all atoms sit in the windows and the
  /// last window runs to infinity
  bool closed = false;
  Real a;
  Real k;
  Real eps;
  long windows = 0;
  /// precision the pipeline ran at before rounding to `precision`
  Precision working;
  std::string note;
};

struct SummationOptions {
  /// cluster width for the border terms; default is a quarter of the
  /// smallest gap between a cut point and its neighbours
  std::optional<Real> eps;
  /// last window; −1 takes every window below the cutoff
  long n_max = -1;
  /// end with [t_{n_max}, ∞) holding all remaining atoms instead of the
  /// border term at t_{n_max+1}
  bool close_tail = false;
};

/// Cuts the series along an admissible sequence, replaces the border terms
/// by node clusters and decomposes every window into nested Vandermonde
/// packages. Finite (explicit) series are always closed.
PackageDecomposition summate_by_packages(const SeriesSpec& spec, const Real& a, const Real& k,
                                         const SummationOptions& opts, Precision p);

struct DecompositionValue {
  Complex value;
  /// Σ |b|·package_bound over the windows past `max_window`, or over the last
  /// window of an open decomposition; +inf when Re w ≥ 0
  Real package_tail;
};

/// Evaluates the decomposition, grouping the terms of a window into one
/// prefix evaluation. Only windows ≤ max_window enter the value.
DecompositionValue eval_decomposition(const PackageDecomposition& dec, const Complex& w,
                                      std::optional<long> max_window = std::nullopt);

struct MethodRow {
  std::string method;
  long bits = 0;
  Complex value;
  Real rel_error;
  double digits = 0;
  std::string note;
};

struct CompareReport {
  Complex oracle;
  std::vector<MethodRow> rows;
};

/// Naive, DIPP and package sums at each precision against the naive sum at
/// 4096 bits. Errors are relative unless the oracle vanishes.
CompareReport compare_methods(const SeriesSpec& spec, const Complex& w, const std::vector<long>& precisions,
                              const Real& a, const Real& k);

/// |eval(w) − eval(w + 2πi)| ≤ tol. Requires an integer support.
bool periodicity_check(const PackageDecomposition& dec, const Complex& w, const Real& tol);

}  // namespace irrsum
