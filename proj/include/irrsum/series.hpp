// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "irrsum/distribution.hpp"
#include "irrsum/exponents.hpp"

namespace irrsum {

/// Recipe for a formal series Σ a_β e^{βw}. Numbers are kept as decimal
/// strings so the series can be rebuilt at any precision.
struct SeriesSpec {
  enum class Support { r_alpha, integers, explicit_points };
  enum class Coefficients { unit, geometric, explicit_values, paired_difference };

  Support support = Support::r_alpha;
  std::string alpha = "sqrt2";  ///< decimal string or "sqrt2"
  std::string cutoff = "40";
  std::vector<std::string> points;

  Coefficients coefficients = Coefficients::unit;
  std::string ratio = "1";
  /// explicit coefficient values as (re, im) decimal strings
  std::vector<std::pair<std::string, std::string>> values;
  std::string delta = "1e-8";
  long pairs = 0;

  std::string label;
};

/// A series materialized at a fixed precision.
struct Series {
  ExponentSet support;  ///< points carrying a coefficient, cutoff included
  std::vector<Complex> coefficients;
  Precision precision;

  /// Σ a_β δ_β
  DiscreteDistribution distribution() const;
  /// Largest support point.
  Real max_point() const;
  bool finite() const { return support.cutoff.is_inf(); }
  bool integer_support() const;
};

/// Builds the support and coefficients at precision p. paired_difference
/// pairs each of the first `pairs` points β of the support with β + δ,
/// carrying −1/δ at β and +1/δ at β + δ.
Series materialize(const SeriesSpec& spec, Precision p);

/// Σ a_β e^{βw} over the materialized support at precision p.
Complex naive_sum(const SeriesSpec& spec, const Complex& w, Precision p);

}  // namespace irrsum
