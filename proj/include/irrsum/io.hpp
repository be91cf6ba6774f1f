// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include <json.hpp>

#include "irrsum/series.hpp"
#include "irrsum/summation.hpp"

namespace irrsum {

/// Decimal digits that make a p-bit value round-trip through text.
std::size_t round_trip_digits(Precision p);

/// Decimal string with round_trip_digits of the value's own precision.
std::string decimal(const Real& x);
/// [re, im] as decimal strings.
nlohmann::json decimal(const Complex& z);

/// Parses a series file:
///   {"support": {"kind": "r_alpha", "alpha": "sqrt2", "cutoff": 40}
///             | {"kind": "explicit", "points": [...]}
///             | {"kind": "integers", "cutoff": 100},
///    "coefficients": {"kind": "unit"} | {"kind": "geometric", "ratio": q}
///             | {"kind": "explicit", "values": [x or [re, im], ...]}
///             | {"kind": "paired_difference", "delta": d, "pairs": n},
///    "label": "..."}
/// Numbers may be JSON numbers or decimal strings. Throws
/// std::invalid_argument with the offending field on malformed input.
SeriesSpec parse_series(const nlohmann::json& doc);
SeriesSpec parse_series_text(const std::string& text);
SeriesSpec load_series_file(const std::string& path);

/// {"terms": [{"b": [re, im], "nodes": [...], "window": n, "index": i}],
///  "k_prime", "c", "c_bound", "r", "mu", "nu", "tail": [...], ...}
/// with every number a decimal string at the decomposition's precision.
nlohmann::json decomposition_to_json(const PackageDecomposition& dec);
/// Inverse of decomposition_to_json; exact at the stored precision.
PackageDecomposition decomposition_from_json(const nlohmann::json& doc);

}  // namespace irrsum
