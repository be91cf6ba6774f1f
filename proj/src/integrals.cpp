// SPDX-License-Identifier: MIT
#include "irrsum/integrals.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace irrsum {

namespace {

Real widened(const Real& x, Precision p) { return Real(x, p); }
Complex widened(const Complex& z, Precision p) { return Complex(Real(z.re, p), Real(z.im, p)); }

long mag_exponent(const Real& x) { return x.exponent(); }
long mag_exponent(const Complex& z) { return std::max(z.re.exponent(), z.im.exponent()); }

Real expm1_of(const Real& x) { return expm1(x); }
Complex expm1_of(const Complex& z) {
  if (z.im.is_zero()) return Complex(expm1(z.re), Real(z.precision()));
  return exp(z) - Real(1L, z.precision());
}

bool negative_real_part(const Real& w) { return w.sign() < 0; }
bool negative_real_part(const Complex& w) { return w.re.sign() < 0; }

long checked_bits(long bits) {
  if (bits > 4 * kMaxPrecisionBits) {
    throw PrecisionError("monomial-exponential integral needs " + std::to_string(bits) +
                         " working bits");
  }
  return bits;
}

template <class T>
std::vector<T> monomial_integrals_impl(const T& w, const Real& h, int m, IntegralPath path) {
  if (m < 0) return {};
  const Precision p = std::max(precision_of(w), h.precision());
  if (h.sign() < 0) throw std::invalid_argument("monomial_exp_integrals: negative length");
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(m) + 1);

  if (h.is_inf()) {
    if (!negative_real_part(w)) {
      throw std::domain_error("integral to +inf needs Re(w) < 0");
    }
    // J_j(∞) = (−1/w)^{j+1}
    T base = T(Real(-1L, p)) / w;
    T acc = base;
    for (int j = 0; j <= m; ++j) {
      out.push_back(acc);
      acc *= base;
    }
    return out;
  }
  if (h.is_zero()) {
    for (int j = 0; j <= m; ++j) out.push_back(T(Real(p)));
    return out;
  }

  const double a = (magnitude(w) * h).to_double();
  const double log2e = std::numbers::log2e;
  const long series_guard = 32 + static_cast<long>(std::ceil(2.0 * a * log2e));
  long recurrence_guard = 32;
  if (a > 0) {
    for (int j = 1; j <= m; ++j) {
      recurrence_guard += static_cast<long>(std::ceil(std::max(0.0, std::log2((j + 1.0) / a))));
    }
  }
  if (path == IntegralPath::automatic) {
    path = (a < kSeriesSwitch || series_guard <= recurrence_guard) ? IntegralPath::series
                                                                   : IntegralPath::recurrence;
  }
  if (path == IntegralPath::recurrence && a == 0.0) path = IntegralPath::series;

  if (path == IntegralPath::series) {
    const Precision q{checked_bits(p.bits + series_guard)};
    const T wq = widened(w, q);
    const Real hq(h, q);
    const T z = wq * hq;
    std::vector<T> s(static_cast<std::size_t>(m) + 1, T(Real(q)));
    T term(Real(1L, q));
    for (long i = 0;; ++i) {
      for (int j = 0; j <= m; ++j) s[static_cast<std::size_t>(j)] += term / (i + j + 1);
      term *= z;
      term /= (i + 1);
      if (static_cast<double>(i) > 2.0 * a + 2.0 && mag_exponent(term) < -q.bits) break;
      if (i > 64L * q.bits) throw PrecisionError("exponential power series did not settle");
    }
    Real factor = hq;
    for (int j = 0; j <= m; ++j) {
      if (j > 0) {
        factor *= hq;
        factor /= static_cast<long>(j);
      }
      T v = s[static_cast<std::size_t>(j)] * factor;
      round_to(v, p);
      out.push_back(std::move(v));
    }
    return out;
  }

  const Precision q{checked_bits(p.bits + recurrence_guard)};
  const T wq = widened(w, q);
  const Real hq(h, q);
  const T z = wq * hq;
  const T e = exp(z);
  T prev = expm1_of(z) / wq;
  T v0 = prev;
  round_to(v0, p);
  out.push_back(std::move(v0));
  Real hpow(1L, q);
  for (int j = 1; j <= m; ++j) {
    hpow *= hq;
    hpow /= static_cast<long>(j);
    T cur = (e * hpow - prev) / wq;
    T v = cur;
    round_to(v, p);
    out.push_back(std::move(v));
    prev = std::move(cur);
  }
  return out;
}

template <class T>
T poly_exp_integral_impl(const Polynomial<T>& q, const T& w, const Real& t0, const Real& t1,
                         IntegralPath path) {
  Precision p = std::max(precision_of(w), std::max(t0.precision(), t1.precision()));
  if (!q.is_zero()) p = std::max(p, precision_of(q.coefficients().front()));
  if (t1 < t0) throw std::invalid_argument("poly_exp_integral: t1 < t0");
  if (q.is_zero() || t1 == t0) return T(Real(p));
  const Polynomial<T> qs = (q.shift() == t0) ? q : q.shifted(t0);
  const Real h = t1.is_inf() ? Real::infinity(p) : t1 - t0;
  const auto J = monomial_exp_integrals(widened(w, p), h, qs.degree(), path);
  T acc{Real(p)};
  Real fact(1L, p);
  const auto& c = qs.coefficients();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j > 0) fact *= static_cast<long>(j);
    acc += c[j] * J[j] * fact;
  }
  return acc * exp(w * t0);
}

long variations_count(const std::vector<Real>& b) {
  long count = 0;
  int last = 0;
  for (const auto& x : b) {
    const int s = x.sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

std::vector<Real> taylor_shift_one(std::vector<Real> c) {
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) c[j] += c[j + 1];
  }
  return c;
}

struct Isolator {
  const Polynomial<Real>& q;
  Real t0;
  Real width;
  Precision p;
  long floor_bits;
  int max_depth;
  std::vector<Real> roots;

  Real to_t(const Real& s) const { return t0 + width * s; }

  void bisect(Real lo, Real hi) {
    int slo = q(lo).sign();
    const int shi = q(hi).sign();
    if (slo == 0) {
      roots.push_back(lo);
      return;
    }
    if (shi == 0) {
      roots.push_back(hi);
      return;
    }
    if (slo == shi) {
      // Counted by Descartes but no bracket: a cluster; keep one representative.
      roots.push_back((lo + hi) / 2);
      return;
    }
    const long target = -(p.bits / 2 + 8);
    for (int it = 0; it < 4 * p.bits; ++it) {
      Real mid = (lo + hi) / 2;
      const Real scale = max(Real(1L, p), abs(mid));
      if ((hi - lo).exponent() - scale.exponent() < target) break;
      const int sm = q(mid).sign();
      if (sm == 0) {
        lo = mid;
        hi = mid;
        break;
      }
      if (sm == slo) {
        lo = std::move(mid);
      } else {
        hi = std::move(mid);
      }
    }
    roots.push_back((lo + hi) / 2);
  }

  // b: coefficients of B(s) = q(t(s_lo + s_w·s)), s ∈ [0,1].
  void isolate(std::vector<Real> b, const Real& s_lo, const Real& s_w, int depth) {
    Real m(p);
    for (const auto& x : b) m = max(m, abs(x));
    if (m.is_zero()) return;
    const long cut = m.exponent() - floor_bits;
    for (auto& x : b) {
      if (x.exponent() < cut) x = Real(p);
    }
    while (!b.empty() && b.back().is_zero()) b.pop_back();
    if (b.size() <= 1) return;
    std::vector<Real> rev(b.rbegin(), b.rend());
    const long v = variations_count(taylor_shift_one(std::move(rev)));
    if (v == 0) return;
    if (v == 1) {
      bisect(to_t(s_lo), to_t(s_lo + s_w));
      return;
    }
    if (depth >= max_depth) {
      roots.push_back(to_t(s_lo + s_w / 2));
      return;
    }
    std::vector<Real> left = b;
    Real half(1L, p);
    for (std::size_t j = 1; j < left.size(); ++j) {
      half /= 2L;
      left[j] *= half;
    }
    std::vector<Real> right = taylor_shift_one(left);
    const Real hw = s_w / 2;
    isolate(left, s_lo, hw, depth + 1);
    if (right.front().is_zero() || right.front().exponent() < cut) roots.push_back(to_t(s_lo + hw));
    isolate(std::move(right), s_lo + hw, hw, depth + 1);
  }
};

// 16-point Gauss-Legendre nodes/weights on [-1,1], computed once in double.
const std::array<std::pair<double, double>, 16>& gauss_legendre16() {
  static const auto table = [] {
    std::array<std::pair<double, double>, 16> t{};
    const int n = 16;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-17) break;
      }
      t[static_cast<std::size_t>(i)] = {x, 2.0 / ((1 - x * x) * dp * dp)};
    }
    return t;
  }();
  return table;
}

Real gl_panel(const std::function<Real(const Real&)>& f, const Real& a, const Real& b) {
  const Real mid = (a + b) / 2;
  const Real half = (b - a) / 2;
  Real acc(a.precision());
  for (const auto& [x, wgt] : gauss_legendre16()) {
    acc += f(mid + half * Real(x, a.precision())) * Real(wgt, a.precision());
  }
  return acc * half;
}

Real adaptive_gl(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                 const Real& whole, int depth) {
  const Real mid = (a + b) / 2;
  const Real l = gl_panel(f, a, mid);
  const Real r = gl_panel(f, mid, b);
  const Real both = l + r;
  const Real err = abs(both - whole);
  if (depth >= 24 || err <= abs(both) * Real(1e-18, a.precision()) || err.is_zero()) return both;
  return adaptive_gl(f, a, mid, l, depth + 1) + adaptive_gl(f, mid, b, r, depth + 1);
}

}  // namespace

std::vector<Real> monomial_exp_integrals(const Real& w, const Real& h, int m, IntegralPath path) {
  return monomial_integrals_impl(w, h, m, path);
}

std::vector<Complex> monomial_exp_integrals(const Complex& w, const Real& h, int m,
                                            IntegralPath path) {
  return monomial_integrals_impl(w, h, m, path);
}

Real poly_exp_integral(const Polynomial<Real>& q, const Real& w, const Real& t0, const Real& t1,
                       IntegralPath path) {
  return poly_exp_integral_impl(q, w, t0, t1, path);
}

Complex poly_exp_integral(const Polynomial<Complex>& q, const Complex& w, const Real& t0,
                          const Real& t1, IntegralPath path) {
  return poly_exp_integral_impl(q, w, t0, t1, path);
}

std::vector<Real> sign_change_points(const Polynomial<Real>& q, const Real& t0, const Real& t1) {
  if (q.degree() <= 0 || !(t0 < t1)) return {};
  Precision p = std::max(t0.precision(), precision_of(q.coefficients().front()));
  const Polynomial<Real> qs = (q.shift() == t0) ? q : q.shifted(t0);
  const Real width = t1 - t0;
  std::vector<Real> b = qs.coefficients();
  Real dpow(1L, p);
  for (std::size_t j = 1; j < b.size(); ++j) {
    dpow *= width;
    b[j] *= dpow;
  }
  Isolator iso{qs, t0, width, p, p.bits - 24, static_cast<int>(p.bits / 2), {}};
  iso.isolate(std::move(b), Real(p), Real(1L, p), 0);
  std::sort(iso.roots.begin(), iso.roots.end());
  std::vector<Real> out;
  for (auto& r : iso.roots) {
    if (!(t0 < r && r < t1)) continue;
    if (!out.empty() && out.back() == r) continue;
    out.push_back(std::move(r));
  }
  // Representatives of even clusters separate pieces of equal sign; drop them.
  std::vector<Real> kept;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Real& left = kept.empty() ? t0 : kept.back();
    const Real& right = i + 1 < out.size() ? out[i + 1] : t1;
    const int sl = q((left + out[i]) / 2).sign();
    const int sr = q((out[i] + right) / 2).sign();
    if (sl != 0 && sl == sr) continue;
    kept.push_back(out[i]);
  }
  return kept;
}

Real abs_exp_integral(const Polynomial<Real>& q, const Real& rate, const Real& t0, const Real& t1) {
  if (q.is_zero() || !(t0 < t1)) return Real(std::max(t0.precision(), rate.precision()));
  if (t1.is_inf()) {
    if (!(rate.sign() < 0)) throw std::domain_error("absolute integral to +inf needs rate < 0");
    // Cauchy bound: no real root beyond shift + 1 + max |c_j / c_d|.
    const auto& c = q.coefficients();
    Real m(t0.precision());
    for (std::size_t j = 0; j + 1 < c.size(); ++j) m = max(m, abs(c[j] / c.back()));
    const Real bound = q.shift() + m + 1L;
    if (!(bound > t0)) return abs(poly_exp_integral(q, rate, t0, t1));
    return abs_exp_integral(q, rate, t0, bound) + abs(poly_exp_integral(q, rate, bound, t1));
  }
  std::vector<Real> cuts;
  cuts.push_back(t0);
  for (auto& r : sign_change_points(q, t0, t1)) cuts.push_back(std::move(r));
  cuts.push_back(t1);
  Real acc(std::max(t0.precision(), rate.precision()));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    acc += abs(poly_exp_integral(q, rate, cuts[i], cuts[i + 1]));
  }
  return acc;
}

Real abs_exp_integral(const Polynomial<Complex>& q, const Real& rate, const Real& t0,
                      const Real& t1) {
  if (q.is_zero() || !(t0 < t1)) return Real(std::max(t0.precision(), rate.precision()));
  bool real = true;
  for (const auto& c : q.coefficients()) real = real && c.is_real();
  if (!real && t1.is_inf()) {
    if (!(rate.sign() < 0)) throw std::domain_error("absolute integral to +inf needs rate < 0");
    // Quadrature up to T, then the majorant Σ|c_j|(t − s)^j beyond T, which
    // has a single sign past the shift and integrates in closed form.
    std::vector<Real> mags;
    for (const auto& c : q.coefficients()) mags.push_back(abs(c));
    const Polynomial<Real> majorant(std::move(mags), q.shift());
    const Real start = max(t0, q.shift());
    Real span = max(Real(1L, rate.precision()), Real(static_cast<long>(q.degree() + 1), rate.precision()) / abs(rate));
    const Real tiny = ldexp(Real(1L, rate.precision()), -(rate.precision().bits + 8));
    for (int it = 0; it < 64; ++it) {
      const Real T = start + span;
      const Real tail = poly_exp_integral(majorant, rate, T, t1);
      const Real head = abs_exp_integral(q, rate, t0, T);
      if (tail <= tiny * head || it == 63) return head + tail;
      span *= 2L;
    }
  }
  if (real) {
    std::vector<Real> re;
    for (const auto& c : q.coefficients()) re.push_back(c.re);
    return abs_exp_integral(Polynomial<Real>(std::move(re), q.shift()), rate, t0, t1);
  }
  const auto f = [&](const Real& t) { return abs(q(t)) * exp(rate * t); };
  const Real whole = gl_panel(f, t0, t1);
  return adaptive_gl(f, t0, t1, whole, 0);
}

namespace {

template <class T>
Real pw_abs_impl(const PiecewisePolynomial<T>& f, const Real& rate, const Real& lo,
                 const Real& hi) {
  Real acc(std::max(rate.precision(), lo.precision()));
  for (std::size_t j = 0; j < f.pieces.size(); ++j) {
    const Real a = max(f.breakpoints[j], lo);
    const Real b = min(f.breakpoints[j + 1], hi);
    if (a < b) acc += abs_exp_integral(f.pieces[j], rate, a, b);
  }
  if (!f.tail.is_zero() && !f.breakpoints.empty()) {
    const Real a = max(f.breakpoints.back(), lo);
    if (a < hi) acc += abs_exp_integral(f.tail, rate, a, hi);
  }
  return acc;
}

template <class T>
Real pw_l1_impl(const PiecewisePolynomial<T>& f) {
  if (!f.compact()) throw std::domain_error("pw_l1_norm: function has unbounded support");
  if (f.empty()) return Real(Precision{53});
  const Precision p = f.breakpoints.front().precision();
  return pw_abs_impl(f, Real(p), f.breakpoints.front(), f.breakpoints.back());
}

}  // namespace

Real pw_l1_norm(const PiecewisePolynomial<Real>& f) { return pw_l1_impl(f); }
Real pw_l1_norm(const PiecewisePolynomial<Complex>& f) { return pw_l1_impl(f); }

Real pw_abs_exp_integral(const PiecewisePolynomial<Real>& f, const Real& rate, const Real& lo,
                         const Real& hi) {
  return pw_abs_impl(f, rate, lo, hi);
}

Real pw_abs_exp_integral(const PiecewisePolynomial<Complex>& f, const Real& rate, const Real& lo,
                         const Real& hi) {
  return pw_abs_impl(f, rate, lo, hi);
}

}  // namespace irrsum
