// SPDX-License-Identifier: MIT
#include "irrsum/domains.hpp"

#include <algorithm>
#include <stdexcept>

namespace irrsum {

namespace {

constexpr Precision kDomainPrecision{128};

Precision working(const Complex& w) { return std::max(kDomainPrecision, w.precision()); }

// x + (k/2)·log(x² + y²) − a
Real log_defect(const LogDomain& H, const Real& x, const Real& y) {
  return x + H.k * log(x * x + y * y) / 2L - H.a;
}

std::vector<Real> grid(const Real& lo, const Real& hi, long count, Precision p) {
  if (count < 2) throw std::invalid_argument("boundary_samples: count must be >= 2");
  std::vector<Real> ys;
  const Real step = (Real(hi, p) - Real(lo, p)) / (count - 1);
  for (long j = 0; j < count; ++j) ys.push_back(j == count - 1 ? Real(hi, p) : Real(lo, p) + step * j);
  return ys;
}

Real bisect(const LogDomain& H, const Real& y, Real lo, Real hi) {
  for (int it = 0; it < 2 * lo.precision().bits; ++it) {
    Real mid = (lo + hi) / 2L;
    if (mid == lo || mid == hi) break;
    if (log_defect(H, mid, y).sign() < 0) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return hi;
}

}  // namespace

bool log_contains(const LogDomain& H, const Complex& w) {
  if (w.is_zero()) throw std::invalid_argument("log_contains: w = 0");
  const Precision p = working(w);
  return log_defect(H, Real(w.re, p), Real(w.im, p)).sign() < 0;
}

bool cle_check(const Complex& w, const Real& a, const Real& k, const Real& beta, long p) {
  if (!(beta.sign() > 0)) throw std::invalid_argument("cle_check: beta must be > 0");
  if (p < 0 || Real(p, beta.precision()) > k * beta) throw std::invalid_argument("cle_check: needs 0 <= p <= k*beta");
  const Precision q = std::max(working(w), beta.precision());
  const Real r = abs(Complex(Real(w.re, q), Real(w.im, q)));
  if (r < Real(1L, q)) throw std::invalid_argument("cle_check: needs |w| >= 1");
  if (!log_contains(LogDomain{a, k}, w)) throw std::invalid_argument("cle_check: w is not in H_{a,k}");
  // log |w^p e^{βw}| = p·log|w| + β·Re w
  const Real lhs = log(r) * p + Real(beta, q) * Real(w.re, q);
  return lhs <= Real(a, q) * beta;
}

Complex quad_map(const Real& C, const Complex& z) {
  const Precision p = std::max(z.precision(), C.precision());
  const Complex one(Real(1L, p));
  return z - sqrt(one + z * z) * C;
}

Membership quad_contains(const QuadDomain& Q, const Complex& w) {
  const Precision p = working(w);
  const Complex wp(Real(w.re, p), Real(w.im, p));
  if (!(wp.re < Q.a)) return Membership::outside;
  const Real C(Q.C, p);
  const Complex one(Real(1L, p));
  const Real tol = ldexp(Real(1L, p), -(p.bits - 8)) * (abs(wp) + 1L);
  Complex z = wp / (C + 1L);
  for (int it = 0; it < 200; ++it) {
    const Complex s = sqrt(one + z * z);
    const Complex f = z - s * C - wp;
    if (abs(f) < tol) return z.re < Q.a ? Membership::inside : Membership::outside;
    if (s.is_zero()) break;
    const Complex df = one - z * C / s;
    if (df.is_zero()) break;
    z -= f / df;
    if (!z.re.is_finite() || !z.im.is_finite()) break;
  }
  return Membership::indeterminate;
}

std::vector<Complex> boundary_samples(const LogDomain& H, const Real& ymin, const Real& ymax, long count) {
  if (!(H.k.sign() > 0)) throw std::invalid_argument("boundary_samples: k must be > 0");
  const Precision p = std::max(kDomainPrecision, H.a.precision());
  std::vector<Complex> out;
  for (const Real& y : grid(ymin, ymax, count, p)) {
    // f → −∞ as x → −∞, so walk left until inside, then right until outside
    Real step = max(Real(1L, p), abs(H.a) + H.k * log(abs(y) + 2L));
    Real lo = Real(H.a, p) - step;
    while (!(log_defect(H, lo, y).sign() < 0)) lo -= step *= 2L;
    Real hi = Real(H.a, p) + step;
    while (log_defect(H, hi, y).sign() < 0) hi += step *= 2L;
    if (abs(y) * 2L <= H.k) {
      // f is not monotone here: scan for the first crossing before refining
      const long n = 4096;
      const Real dx = (hi - lo) / n;
      Real prev = lo;
      for (long j = 1; j <= n; ++j) {
        Real x = lo + dx * j;
        if (!(log_defect(H, x, y).sign() < 0)) {
          hi = std::move(x);
          lo = std::move(prev);
          break;
        }
        prev = std::move(x);
      }
    }
    out.emplace_back(bisect(H, y, lo, hi), y);
  }
  return out;
}

std::vector<Complex> boundary_samples(const QuadDomain& Q, const Real& ymin, const Real& ymax, long count) {
  const Precision p = std::max(kDomainPrecision, Q.a.precision());
  std::vector<Complex> out;
  for (const Real& y : grid(ymin, ymax, count, p)) out.push_back(quad_map(Q.C, Complex(Real(Q.a, p), y)));
  return out;
}

}  // namespace irrsum
