// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "irrsum/real.hpp"

namespace irrsum {

/// Polynomial Σ c_j (t − s)^j with an explicit shift point s.
/// T is Real or Complex.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::vector<T> coefficients, Real shift)
      : c_(std::move(coefficients)), s_(std::move(shift)) {
    trim();
  }

  const Real& shift() const { return s_; }
  const std::vector<T>& coefficients() const { return c_; }
  std::vector<T>& coefficients() { return c_; }
  /// Degree after trimming; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  T operator()(const Real& t) const {
    if (c_.empty()) return T(Real(t.precision()));
    const Real u = t - s_;
    T acc = c_.back();
    for (std::size_t j = c_.size() - 1; j-- > 0;) {
      acc *= u;
      acc += c_[j];
    }
    return acc;
  }

  /// Same function re-expanded around a new shift point (Taylor shift).
  Polynomial shifted(const Real& s) const {
    Polynomial r = *this;
    const Real d = s - s_;
    const std::size_t n = r.c_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = n - 1; j-- > i;) {
        r.c_[j] += r.c_[j + 1] * d;
      }
    }
    r.s_ = s;
    return r;
  }

  Polynomial derivative() const {
    std::vector<T> d;
    for (std::size_t j = 1; j < c_.size(); ++j) d.push_back(c_[j] * static_cast<long>(j));
    return Polynomial(std::move(d), s_);
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) return *this = o;
    const Polynomial other = (o.s_ == s_) ? o : o.shifted(s_);
    if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), T(Real(s_.precision())));
    for (std::size_t j = 0; j < other.c_.size(); ++j) c_[j] += other.c_[j];
    return *this;
  }

  template <class S>
  Polynomial& operator*=(const S& scalar) {
    for (auto& c : c_) c *= scalar;
    return *this;
  }

  /// Drops trailing coefficients that are exactly zero.
  void trim() {
    while (!c_.empty() && is_exact_zero(c_.back())) c_.pop_back();
  }

 private:
  static bool is_exact_zero(const Real& x) { return x.is_zero(); }
  static bool is_exact_zero(const Complex& z) { return z.is_zero(); }

  std::vector<T> c_;
  Real s_;
};

/// Breakpointed polynomial function on [b_0, ∞): piece j lives on
/// [b_j, b_{j+1}) and is centered at b_j; `tail` covers [b_m, ∞). The
/// function is zero left of b_0.
template <class T>
struct PiecewisePolynomial {
  std::vector<Real> breakpoints;
  std::vector<Polynomial<T>> pieces;
  Polynomial<T> tail;

  bool compact() const { return tail.is_zero(); }
  bool empty() const { return breakpoints.empty(); }

  T operator()(const Real& t) const {
    if (breakpoints.empty() || t < breakpoints.front()) return T(Real(t.precision()));
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    const auto idx = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
    if (idx >= pieces.size()) return tail(t);
    return pieces[idx](t);
  }
};

}  // namespace irrsum
