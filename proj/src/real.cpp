// SPDX-License-Identifier: MIT
#include "irrsum/real.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <string>

namespace irrsum {

namespace {

using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

Real unary(const Real& x, UnaryFn f) {
  Real r(x.precision());
  f(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

}  // namespace

Real Real::parse(std::string_view text, Precision p) {
  std::string s(text);
  // Trim surrounding whitespace; mpfr_set_str refuses it.
  const auto first = s.find_first_not_of(" \t\n\r");
  const auto last = s.find_last_not_of(" \t\n\r");
  if (first == std::string::npos) throw std::invalid_argument("empty numeric string");
  s = s.substr(first, last - first + 1);
  Real r(p);
  if (s == "inf" || s == "+inf") return infinity(p, 1);
  if (s == "-inf") return infinity(p, -1);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0 || r.is_nan()) {
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  }
  return r;
}

Real Real::pi(Precision p) {
  Real r(p);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::infinity(Precision p, int sign) {
  Real r(p);
  mpfr_set_inf(r.v_, sign);
  return r;
}

std::string Real::to_string(std::size_t digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() > 0 ? "inf" : "-inf";
  if (is_zero()) return "0";
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  std::string m(raw);
  mpfr_free_str(raw);
  std::string out;
  std::size_t pos = 0;
  if (m[0] == '-') {
    out += '-';
    pos = 1;
  }
  std::string d = m.substr(pos);
  while (d.size() > 1 && d.back() == '0') d.pop_back();
  out += d[0];
  if (d.size() > 1) {
    out += '.';
    out += d.substr(1);
  }
  const long exp10 = static_cast<long>(e) - 1;
  if (exp10 != 0) out += "e" + std::to_string(exp10);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
  const auto digits = static_cast<std::size_t>(std::max<std::streamsize>(os.precision(), 1));
  return os << x.to_string(digits);
}

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real expm1(const Real& x) { return unary(x, mpfr_expm1); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }

void sin_cos(const Real& x, Real& s, Real& c) {
  s = Real(x.precision());
  c = Real(x.precision());
  mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
}

Real atan2(const Real& y, const Real& x) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r(x.precision());
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real floor(const Real& x) {
  Real r(x.precision());
  mpfr_floor(r.raw(), x.raw());
  return r;
}

Real ceil(const Real& x) {
  Real r(x.precision());
  mpfr_ceil(r.raw(), x.raw());
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real factorial(unsigned long n, Precision p) {
  Real r(p);
  mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
  return r;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex operator*(const Complex& a, const Complex& b) {
  if (b.im.is_zero()) return Complex(a.re * b.re, a.im * b.re);
  if (a.im.is_zero()) return Complex(a.re * b.re, a.re * b.im);
  return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

Complex& Complex::operator/=(const Complex& o) {
  if (o.im.is_zero()) {
    re /= o.re;
    im /= o.re;
    return *this;
  }
  const Real d = o.re * o.re + o.im * o.im;
  Real r = (re * o.re + im * o.im) / d;
  Real i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real arg(const Complex& z) { return atan2(z.im, z.re); }
Complex conj(const Complex& z) { return Complex(z.re, -z.im); }

Complex exp(const Complex& z) {
  const Real m = exp(z.re);
  if (z.im.is_zero()) return Complex(m, Real(z.precision()));
  Real s, c;
  sin_cos(z.im, s, c);
  return Complex(m * c, m * s);
}

Complex log(const Complex& z) { return Complex(log(abs(z)), arg(z)); }

Complex sqrt(const Complex& z) {
  const Precision p = z.precision();
  if (z.is_zero()) return Complex(p);
  const Real m = abs(z);
  // Stable form: the root with nonnegative real part.
  Real u = sqrt((m + abs(z.re)) / 2);
  if (z.re.sign() >= 0) {
    return Complex(u, z.im / (u * 2));
  }
  Real v = abs(z.im) / (u * 2);
  if (z.im.sign() < 0) u = -u;
  return Complex(v, u);
}

Complex pow(const Complex& z, long n) {
  if (n < 0) return Complex(Real(1L, z.precision())) / pow(z, -n);
  Complex result(Real(1L, z.precision()));
  Complex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  return os << '(' << z.re << ", " << z.im << ')';
}

}  // namespace irrsum
