// SPDX-License-Identifier: MIT
#include "irrsum/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace irrsum {

namespace {

Real parse_alpha(const std::string& s, Precision p) {
  if (s == "sqrt2") return sqrt(Real(2L, p));
  return Real::parse(s, p);
}

}  // namespace

DiscreteDistribution Series::distribution() const {
  std::vector<Atom> atoms;
  atoms.reserve(coefficients.size());
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    atoms.push_back(Atom{support.points[i].value, 0, coefficients[i]});
  }
  return DiscreteDistribution(std::move(atoms));
}

Real Series::max_point() const {
  if (support.empty()) return Real(precision);
  return support.points.back().value;
}

bool Series::integer_support() const {
  return std::all_of(support.points.begin(), support.points.end(),
                     [](const Exponent& e) { return floor(e.value) == e.value; });
}

Series materialize(const SeriesSpec& spec, Precision p) {
  Series s;
  s.precision = p;
  std::vector<std::size_t> order;  // explicit points: position of each sorted point in the input
  switch (spec.support) {
    case SeriesSpec::Support::r_alpha: {
      const Real cutoff = Real::parse(spec.cutoff, p);
      if (!(cutoff.sign() > 0)) throw std::invalid_argument("series: cutoff must be > 0");
      s.support = generate_r_alpha(parse_alpha(spec.alpha, p), cutoff);
      break;
    }
    case SeriesSpec::Support::integers: {
      const Real cutoff = Real::parse(spec.cutoff, p);
      if (!(cutoff.sign() > 0)) throw std::invalid_argument("series: cutoff must be > 0");
      s.support = generate_integers(cutoff);
      break;
    }
    case SeriesSpec::Support::explicit_points: {
      std::vector<std::pair<Real, std::size_t>> pts;
      for (std::size_t i = 0; i < spec.points.size(); ++i) {
        pts.emplace_back(Real::parse(spec.points[i], p), i);
        if (pts.back().first.sign() < 0 || !pts.back().first.is_finite()) {
          throw std::invalid_argument("series: support points must be finite and nonnegative");
        }
      }
      std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<Real> vals;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0 && pts[i].first == pts[i - 1].first) {
          throw std::invalid_argument("series: repeated support point");
        }
        vals.push_back(pts[i].first);
        order.push_back(pts[i].second);
      }
      s.support = make_exponent_set(std::move(vals));
      if (s.support.size() != order.size()) throw std::invalid_argument("series: support points too close to separate");
      break;
    }
  }

  const std::size_t n = s.support.size();
  switch (spec.coefficients) {
    case SeriesSpec::Coefficients::unit:
      s.coefficients.assign(n, Complex(Real(1L, p)));
      break;
    case SeriesSpec::Coefficients::geometric: {
      const Real q = Real::parse(spec.ratio, p);
      if (!(q.sign() > 0)) throw std::invalid_argument("series: geometric ratio must be > 0");
      const Real lq = log(q);
      for (const auto& e : s.support.points) s.coefficients.push_back(Complex(exp(lq * e.value)));
      break;
    }
    case SeriesSpec::Coefficients::explicit_values: {
      if (spec.values.size() != n) {
        throw std::invalid_argument("series: " + std::to_string(spec.values.size()) +
                                    " coefficient values for " + std::to_string(n) + " support points");
      }
      for (std::size_t i = 0; i < n; ++i) {
        const auto& v = spec.values[order.empty() ? i : order[i]];
        s.coefficients.push_back(Complex(Real::parse(v.first, p), Real::parse(v.second, p)));
      }
      break;
    }
    case SeriesSpec::Coefficients::paired_difference: {
      const Real delta = Real::parse(spec.delta, p);
      if (!(delta.sign() > 0)) throw std::invalid_argument("series: delta must be > 0");
      if (spec.pairs < 1) throw std::invalid_argument("series: pairs must be >= 1");
      if (static_cast<std::size_t>(spec.pairs) > n) {
        throw std::invalid_argument("series: more pairs than support points");
      }
      std::vector<Exponent> pts;
      const Real inv = Real(1L, p) / delta;
      for (long j = 0; j < spec.pairs; ++j) {
        const Real& b = s.support.points[static_cast<std::size_t>(j)].value;
        pts.push_back(Exponent{b, std::nullopt, std::nullopt});
        pts.push_back(Exponent{b + delta, std::nullopt, std::nullopt});
        s.coefficients.push_back(Complex(-inv));
        s.coefficients.push_back(Complex(inv));
      }
      for (std::size_t i = 1; i < pts.size(); ++i) {
        if (!(pts[i - 1].value < pts[i].value)) {
          throw std::invalid_argument("series: delta not below the gap between paired points");
        }
      }
      // only the paired points carry coefficients, so the series is finite
      s.support.points = std::move(pts);
      s.support.alpha.reset();
      s.support.cutoff = Real::infinity(p);
      break;
    }
  }
  return s;
}

Complex naive_sum(const SeriesSpec& spec, const Complex& w, Precision p) {
  const Series s = materialize(spec, p);
  const Complex wp(Real(w.re, p), Real(w.im, p));
  Complex acc(p);
  for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
    acc += s.coefficients[i] * exp(wp * s.support.points[i].value);
  }
  return acc;
}

}  // namespace irrsum
