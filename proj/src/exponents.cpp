// SPDX-License-Identifier: MIT
#include "irrsum/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace irrsum {

Real merge_tolerance(const Real& x) {
  const Precision p = x.precision();
  Real scale = max(Real(1L, p), abs(x));
  return ldexp(scale, -(p.bits - 16));
}

std::vector<Real> ExponentSet::values() const {
  std::vector<Real> v;
  v.reserve(points.size());
  for (const auto& e : points) v.push_back(e.value);
  return v;
}

bool ExponentSet::contains(const Real& x) const {
  if (points.empty()) return false;
  const Real tol = merge_tolerance(x);
  auto it = std::lower_bound(points.begin(), points.end(), x - tol,
                             [](const Exponent& e, const Real& v) { return e.value < v; });
  return it != points.end() && abs(it->value - x) <= tol;
}

std::optional<Real> ExponentSet::next_above(const Real& x) const {
  const Real lim = x + merge_tolerance(x);
  auto it = std::upper_bound(points.begin(), points.end(), lim,
                             [](const Real& v, const Exponent& e) { return v < e.value; });
  if (it == points.end()) return std::nullopt;
  return it->value;
}

namespace {

ExponentSet finish(std::vector<Exponent> pts, Real cutoff, std::optional<Real> alpha) {
  std::stable_sort(pts.begin(), pts.end(),
                   [](const Exponent& a, const Exponent& b) { return a.value < b.value; });
  std::vector<Exponent> out;
  for (auto& e : pts) {
    if (!out.empty() && abs(e.value - out.back().value) <= merge_tolerance(e.value)) continue;
    out.push_back(std::move(e));
  }
  return ExponentSet{std::move(out), std::move(cutoff), std::move(alpha)};
}

}  // namespace

ExponentSet generate_r_alpha(const Real& alpha, const Real& cutoff) {
  if (!(alpha.sign() > 0)) throw std::invalid_argument("generate_r_alpha: alpha must be > 0");
  if (cutoff.sign() < 0) throw std::invalid_argument("generate_r_alpha: cutoff must be >= 0");
  const Precision p = std::max(alpha.precision(), cutoff.precision());
  const Real inv = Real(1L, p) / alpha;
  const Real lim = cutoff + merge_tolerance(cutoff);
  std::vector<Exponent> pts;
  for (long q = 0;; ++q) {
    const Real base = inv * q;
    if (base > lim) break;
    for (long pp = 0;; ++pp) {
      Real v = base + pp;
      if (v > lim) break;
      pts.push_back(Exponent{std::move(v), pp, q});
    }
  }
  return finish(std::move(pts), Real(cutoff, p), Real(alpha, p));
}

ExponentSet generate_integers(const Real& cutoff) {
  if (cutoff.sign() < 0) throw std::invalid_argument("generate_integers: cutoff must be >= 0");
  const Precision p = cutoff.precision();
  std::vector<Exponent> pts;
  for (long n = 0; Real(n, p) <= cutoff; ++n) pts.push_back(Exponent{Real(n, p), n, 0});
  return finish(std::move(pts), cutoff, Real(1L, p));
}

ExponentSet make_exponent_set(std::vector<Real> points) {
  std::vector<Exponent> pts;
  Precision p{53};
  for (auto& v : points) {
    if (v.sign() < 0) throw std::invalid_argument("support points must be nonnegative");
    p = std::max(p, v.precision());
    pts.push_back(Exponent{std::move(v), std::nullopt, std::nullopt});
  }
  return finish(std::move(pts), Real::infinity(p), std::nullopt);
}

namespace {

struct Window {
  double count;
  double sup;
};

// β + L is often itself a support point (R_α is closed under +1); a point
// within rounding of a window end is the end, excluded as in exact arithmetic,
// so window counts do not depend on the precision
Real below_end(const Real& end) {
  return end - ldexp(max(Real(1L, end.precision()), abs(end)), -(end.precision().bits - 8));
}

std::vector<Window> anchored_windows(const ExponentSet& R, const Real& L) {
  std::vector<Window> w;
  const auto& pts = R.points;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < pts.size(); ++lo) {
    const Real end = pts[lo].value + L;
    const Real cut = below_end(end);
    if (hi < lo) hi = lo;
    while (hi < pts.size() && pts[hi].value < cut) ++hi;
    w.push_back(Window{static_cast<double>(hi - lo), end.to_double()});
  }
  return w;
}

}  // namespace

DensityParams density_params(const ExponentSet& R, const Real& window) {
  if (R.empty()) throw std::invalid_argument("density_params: empty support");
  if (!(window.sign() > 0)) throw std::invalid_argument("density_params: window must be > 0");
  const Precision p = window.precision();
  const double L = window.to_double();
  const auto wins = anchored_windows(R, window);
  double smin = wins.front().sup, smax = wins.front().sup, mu_hi = 0;
  for (const auto& w : wins) {
    smin = std::min(smin, w.sup);
    smax = std::max(smax, w.sup);
    mu_hi = std::max(mu_hi, w.count / (L * w.sup));
  }
  const double S = 0.5 * (smin + smax);
  const auto nu_of = [&](double mu) {
    double nu = 0;
    for (const auto& w : wins) nu = std::max(nu, w.count / L - mu * w.sup);
    return nu;
  };
  const auto f = [&](double mu) { return nu_of(mu) + mu * S; };
  double lo = 0, hi = mu_hi + 1;
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (f(m1) <= f(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  double mu = 0.5 * (lo + hi);
  if (f(0.0) <= f(mu) + 1e-12) mu = 0.0;
  // Guard the double evaluation so the bound holds exactly for the chosen pair.
  const double nu = nu_of(mu) * (1 + 1e-12) + 1e-12;
  return DensityParams{Real(mu, p), Real(nu, p), window};
}

Real density_violation(const ExponentSet& R, const DensityParams& d) {
  const Precision p = d.window.precision();
  Real worst = Real::infinity(p, -1);
  const auto& pts = R.points;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < pts.size(); ++lo) {
    const Real end = pts[lo].value + d.window;
    const Real cut = below_end(end);
    if (hi < lo) hi = lo;
    while (hi < pts.size() && pts[hi].value < cut) ++hi;
    const Real allowance = d.mu * d.window * end + d.nu * d.window;
    worst = max(worst, Real(static_cast<long>(hi - lo), p) - allowance);
  }
  return worst;
}

AdmissibleSequence::AdmissibleSequence(Real k, std::map<long, Real> nudges)
    : k_(std::move(k)), nudges_(std::move(nudges)) {
  if (!(k_.sign() > 0)) throw std::invalid_argument("admissible sequence: k must be > 0");
}

Real AdmissibleSequence::rule(long n) const {
  if (n <= 3) return Real(k_.precision());
  return (Real(n, k_.precision()) - Real(3.5, k_.precision())) / k_;
}

Real AdmissibleSequence::t(long n) const {
  if (n < 0) throw std::out_of_range("admissible sequence: negative index");
  if (last_ && n > *last_) return Real::infinity(k_.precision());
  Real v = rule(n);
  if (auto it = nudges_.find(n); it != nudges_.end()) v += it->second;
  return v;
}

AdmissibleSequence AdmissibleSequence::truncated_after(long last) const {
  AdmissibleSequence s = *this;
  s.last_ = last;
  return s;
}

long AdmissibleSequence::max_window(const Real& T) const {
  if (T.is_inf()) {
    if (last_) return *last_;
    throw std::domain_error("max_window: unbounded cutoff needs a truncated sequence");
  }
  long n = -1;
  while (!(t(n + 2) > T)) {
    ++n;
    if (last_ && n >= *last_) break;
  }
  return n;
}

AdmissibleSequence admissible_sequence(const Real& k, const ExponentSet& R) {
  if (!(k.sign() > 0)) throw std::invalid_argument("admissible_sequence: k must be > 0");
  const Precision p = k.precision();
  AdmissibleSequence base(k, {});
  std::map<long, Real> nudges;
  if (!R.empty()) {
    const Real cap = Real(1L, p) / (k * 4L);
    const Real top = R.points.back().value;
    for (long n = 1; !(base.rule(n) > top); ++n) {
      const Real v = base.rule(n);
      if (!R.contains(v)) continue;
      // nearest larger point among the support and the later rule values
      Real gap = cap * 2L;
      if (auto nx = R.next_above(v)) gap = min(gap, *nx - v);
      for (long m = n + 1;; ++m) {
        const Real u = base.rule(m);
        if (u > v) {
          gap = min(gap, u - v);
          break;
        }
      }
      nudges.emplace(n, min(gap / 2L, cap));
    }
  }
  return AdmissibleSequence(k, std::move(nudges));
}

}  // namespace irrsum
