// SPDX-License-Identifier: MIT
#pragma once

#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace irrsum {

/// Binary precision of a computation, in bits.
struct Precision {
  long bits = 256;
  friend constexpr bool operator==(Precision, Precision) = default;
  friend constexpr auto operator<=>(Precision, Precision) = default;
};

inline constexpr Precision kDefaultPrecision{256};
inline constexpr long kMaxPrecisionBits = 8192;

/// Raised when a computation would need more than kMaxPrecisionBits.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Multiple precision real backed by mpfr_t, rounding to nearest.
///
/// Each value owns its precision. Binary operations produce a result at the
/// larger operand precision; compound assignment widens the left operand
/// when the right one is wider, so accumulators started from a default
/// constructed Real adopt the precision of what is added to them.
class Real {
 public:
  Real() {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_set_zero(v_, 1);
  }
  explicit Real(Precision p) {
    mpfr_init2(v_, p.bits);
    mpfr_set_zero(v_, 1);
  }
  Real(long x, Precision p) {
    mpfr_init2(v_, p.bits);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(int x, Precision p) : Real(static_cast<long>(x), p) {}
  Real(double x, Precision p) {
    mpfr_init2(v_, p.bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  /// Copy of `other` rounded to precision `p`.
  Real(const Real& other, Precision p) {
    mpfr_init2(v_, p.bits);
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  /// Parses a decimal (or "inf"/"-inf") string at precision p.
  static Real parse(std::string_view text, Precision p);
  static Real pi(Precision p);
  static Real infinity(Precision p, int sign = 1);

  Precision precision() const { return Precision{static_cast<long>(mpfr_get_prec(v_))}; }
  /// Rounds in place to precision p (may lose bits).
  void set_precision(Precision p) { mpfr_prec_round(v_, p.bits, MPFR_RNDN); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  /// Decimal scientific notation; digits = 0 picks enough digits for an
  /// exact round trip at this value's precision.
  std::string to_string(std::size_t digits = 0) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with |x| in [2^(e-1), 2^e); very negative for zero.
  long exponent() const { return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_)); }

  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) {
    widen(o);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    widen(o);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    widen(o);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    widen(o);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator+=(long o) {
    mpfr_add_si(v_, v_, o, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(long o) {
    mpfr_sub_si(v_, v_, o, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(long o) {
    mpfr_mul_si(v_, v_, o, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(long o) {
    mpfr_div_si(v_, v_, o, MPFR_RNDN);
    return *this;
  }

  friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }
  friend Real operator+(Real a, long b) { return a += b; }
  friend Real operator-(Real a, long b) { return a -= b; }
  friend Real operator*(Real a, long b) { return a *= b; }
  friend Real operator/(Real a, long b) { return a /= b; }
  friend Real operator+(long b, Real a) { return a += b; }
  friend Real operator*(long b, Real a) { return a *= b; }
  friend Real operator-(long b, const Real& a) {
    Real r(a.precision());
    mpfr_si_sub(r.v_, b, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(long b, const Real& a) {
    Real r(a.precision());
    mpfr_si_div(r.v_, b, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b) {
    const int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  friend std::ostream& operator<<(std::ostream& os, const Real& x);

 private:
  using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  static Real binary(const Real& a, const Real& b, BinaryFn f) {
    Real r(Precision{std::max<long>(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_))});
    f(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  void widen(const Real& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  }

  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
void sin_cos(const Real& x, Real& s, Real& c);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real pow(const Real& x, const Real& y);
Real floor(const Real& x);
Real ceil(const Real& x);
Real ldexp(const Real& x, long e);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
/// n! at precision p.
Real factorial(unsigned long n, Precision p);

/// Complex number with Real parts. Arithmetic follows the precision rules
/// of Real componentwise.
class Complex {
 public:
  Real re;
  Real im;

  Complex() = default;
  explicit Complex(Precision p) : re(p), im(p) {}
  Complex(Real r) : re(std::move(r)), im(re.precision()) {}  // NOLINT: implicit on purpose
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r, double i, Precision p) : re(r, p), im(i, p) {}

  Precision precision() const { return std::max(re.precision(), im.precision()); }
  void set_precision(Precision p) {
    re.set_precision(p);
    im.set_precision(p);
  }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }

  Complex operator-() const { return Complex(-re, -im); }
  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator+=(const Real& o) {
    re += o;
    return *this;
  }
  Complex& operator-=(const Real& o) {
    re -= o;
    return *this;
  }
  Complex& operator*=(const Real& o) {
    re *= o;
    im *= o;
    return *this;
  }
  Complex& operator/=(const Real& o) {
    re /= o;
    im /= o;
    return *this;
  }
  Complex& operator*=(long o) {
    re *= o;
    im *= o;
    return *this;
  }
  Complex& operator/=(long o) {
    re /= o;
    im /= o;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator+(Complex a, const Real& b) { return a += b; }
  friend Complex operator-(Complex a, const Real& b) { return a -= b; }
  friend Complex operator*(Complex a, const Real& b) { return a *= b; }
  friend Complex operator*(const Real& b, Complex a) { return a *= b; }
  friend Complex operator/(Complex a, const Real& b) { return a /= b; }
  friend Complex operator*(Complex a, long b) { return a *= b; }
  friend Complex operator/(Complex a, long b) { return a /= b; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

Real abs(const Complex& z);
/// |z|^2
Real norm(const Complex& z);
Real arg(const Complex& z);
Complex conj(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
/// Principal square root: Re >= 0, branch cut on the negative real axis.
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, long n);

/// Magnitude helpers so templates can treat Real and Complex alike.
inline Real magnitude(const Real& x) { return abs(x); }
inline Real magnitude(const Complex& z) { return abs(z); }
inline Precision precision_of(const Real& x) { return x.precision(); }
inline Precision precision_of(const Complex& z) { return z.precision(); }
inline Real real_part(const Real& x) { return x; }
inline Real real_part(const Complex& z) { return z.re; }
inline void round_to(Real& x, Precision p) { x.set_precision(p); }
inline void round_to(Complex& z, Precision p) { z.set_precision(p); }

std::ostream& operator<<(std::ostream& os, const Complex& z);

}  // namespace irrsum
