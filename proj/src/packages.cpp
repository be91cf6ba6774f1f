// SPDX-License-Identifier: MIT
#include "irrsum/packages.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace irrsum {

namespace {

constexpr double kLog2E = 1.4426950408889634;

void require_sorted(const std::vector<Real>& nodes) {
  if (nodes.empty()) throw std::invalid_argument("package: no nodes");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i - 1] < nodes[i])) throw std::invalid_argument("package: nodes must be distinct and sorted");
  }
}

Precision working_precision(const std::vector<Real>& nodes, const Complex& w) {
  Precision p = w.precision();
  for (const auto& x : nodes) p = std::max(p, x.precision());
  return p;
}

std::vector<Complex> zero_w_prefixes(std::size_t n, Precision p) {
  std::vector<Complex> v(n, Complex(p));
  v[0] = Complex(Real(1L, p));
  return v;
}

// Series in the complete homogeneous polynomials of y_j = x_j − x_0.
std::vector<Complex> series_prefixes(const std::vector<Real>& x, const Complex& w, Precision p) {
  const std::size_t n = x.size();
  const double wd = abs(w).to_double();
  const double d = (x.back() - x.front()).to_double();
  const double re = w.re.to_double();
  const long guard = 32 + static_cast<long>(std::ceil((wd + std::max(0.0, -re)) * d * kLog2E));
  const Precision q{p.bits + guard};
  const Complex wq(Real(w.re, q), Real(w.im, q));

  std::vector<Real> y;
  y.reserve(n);
  for (const auto& v : x) y.push_back(Real(v, q) - Real(x.front(), q));
  std::vector<Real> H(n, Real(1L, q));
  std::vector<Complex> S(n, Complex(q));
  std::vector<Complex> c{Complex(Real(1L, q))};  // w^j / j!
  const auto coef = [&](std::size_t j) -> const Complex& {
    while (c.size() <= j) {
      Complex next = c.back() * wq;
      next /= static_cast<long>(c.size());
      c.push_back(std::move(next));
    }
    return c[j];
  };

  const double x_wd = wd * d;
  const double log_target = -static_cast<double>(p.bits + 8) * std::log(2.0) - x_wd;
  for (long m = 0;; ++m) {
    if (m > 0) {
      Real prev(q);
      for (std::size_t i = 0; i < n; ++i) {
        Real nv = prev + y[i] * H[i];
        H[i] = nv;
        prev = std::move(nv);
      }
    }
    for (std::size_t i = 0; i < n; ++i) S[i] += coef(static_cast<std::size_t>(m) + i) * H[i];
    if (m > 2.0 * x_wd && m > 4) {
      // remaining terms ≤ |w|^i/i! · 2(|w|d)^m/m! for every prefix
      const double lt = (x_wd > 0 ? m * std::log(x_wd) : -1e300) - std::lgamma(m + 1.0) + std::log(2.0);
      if (lt < log_target) break;
    }
    if (m > 1000000) throw std::runtime_error("package series: term cutoff exceeded");
  }
  const Complex shift = exp(wq * Real(x.front(), q));
  std::vector<Complex> v;
  v.reserve(n);
  Real fact(1L, q);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) fact *= static_cast<long>(i);
    Complex r = S[i] * fact * shift;
    r.set_precision(p);
    v.push_back(std::move(r));
  }
  return v;
}

// Bits lost by the divided-difference table, estimated for every prefix.
long product_guard(const std::vector<Real>& x, const Complex& w) {
  const std::size_t n = x.size();
  const double re = w.re.to_double();
  const double lw = std::log2(std::max(abs(w).to_double(), std::numeric_limits<double>::min()));
  std::vector<double> L(n, 0.0);  // −log2 |weight_j| for the current prefix
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = (x[j] - x.front()).to_double();
  double worst = 0;
  double log_fact = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) log_fact += std::log2(static_cast<double>(i));
    for (std::size_t j = 0; j < i; ++j) {
      const double g = std::log2(abs(x[i] - x[j]).to_double());
      L[j] += g;
      L[i] += g;
    }
    double mx = -1e300;
    for (std::size_t j = 0; j <= i; ++j) mx = std::max(mx, -L[j] + y[j] * re * kLog2E);
    double s = 0;
    for (std::size_t j = 0; j <= i; ++j) s += std::exp2(-L[j] + y[j] * re * kLog2E - mx);
    const double mag = log_fact + mx + std::log2(s);
    const double val = static_cast<double>(i) * lw + std::min(0.0, re * y[i]) * kLog2E;
    worst = std::max(worst, mag - val);
  }
  return 32 + static_cast<long>(std::ceil(std::max(0.0, worst)));
}

std::vector<Complex> product_prefixes(const std::vector<Real>& x, const Complex& w, Precision p,
                                      long guard) {
  const std::size_t n = x.size();
  const Precision q{p.bits + guard};
  if (q.bits > 16 * kMaxPrecisionBits) throw PrecisionError("package product: guard bits exceed the cap");
  Complex wq(Real(w.re, q), Real(w.im, q));
  std::vector<Real> y;
  for (const auto& v : x) y.push_back(Real(v, q) - Real(x.front(), q));
  std::vector<Complex> c;
  c.reserve(n);
  for (const auto& v : y) c.push_back(exp(wq * v));
  for (std::size_t l = 1; l < n; ++l) {
    for (std::size_t j = n - 1; j >= l; --j) {
      c[j] = (c[j] - c[j - 1]) / (y[j] - y[j - l]);
      if (j == l) break;
    }
  }
  const Complex shift = exp(wq * Real(x.front(), q));
  std::vector<Complex> v;
  Real fact(1L, q);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) fact *= static_cast<long>(i);
    Complex r = c[i] * fact * shift;
    r.set_precision(p);
    v.push_back(std::move(r));
  }
  return v;
}

bool prefer_series(const std::vector<Real>& x, const Complex& w) {
  return abs(w).to_double() * (x.back() - x.front()).to_double() <= kProductSwitch;
}

}  // namespace

std::vector<Complex> eval_package_prefixes(const std::vector<Real>& nodes, const Complex& w,
                                           PackageMethod method) {
  require_sorted(nodes);
  const Precision p = working_precision(nodes, w);
  if (w.is_zero()) return zero_w_prefixes(nodes.size(), p);
  if (method == PackageMethod::automatic) {
    method = prefer_series(nodes, w) ? PackageMethod::series : PackageMethod::product;
  }
  switch (method) {
    case PackageMethod::series:
      return series_prefixes(nodes, w, p);
    case PackageMethod::product:
      return product_prefixes(nodes, w, p, product_guard(nodes, w));
    case PackageMethod::naive_double: {
      std::vector<Complex> v;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::vector<Real> pre(nodes.begin(), nodes.begin() + static_cast<long>(i) + 1);
        v.push_back(eval_package(pre, w, PackageMethod::naive_double));
      }
      return v;
    }
    case PackageMethod::automatic:
      break;
  }
  throw std::logic_error("eval_package_prefixes: unreachable");
}

Complex eval_package(const std::vector<Real>& nodes, const Complex& w, PackageMethod method) {
  require_sorted(nodes);
  const Precision p = working_precision(nodes, w);
  const std::size_t n = nodes.size() - 1;
  if (w.is_zero()) return n == 0 ? Complex(Real(1L, p)) : Complex(p);
  switch (method) {
    case PackageMethod::automatic:
      if (prefer_series(nodes, w)) return series_prefixes(nodes, w, p).back();
      return product_prefixes(nodes, w, p, product_guard(nodes, w)).back();
    case PackageMethod::series:
      return series_prefixes(nodes, w, p).back();
    case PackageMethod::product: {
      const auto a = vandermonde_weights(nodes);
      Complex acc(p);
      for (std::size_t i = 0; i <= n; ++i) acc += a[i] * exp(w * (nodes[i] - nodes.front()));
      return acc * factorial(n, p) * exp(w * nodes.front());
    }
    case PackageMethod::naive_double: {
      const Precision d{53};
      std::vector<Real> xd;
      for (const auto& x : nodes) xd.push_back(Real(x, d));
      const Complex wd(Real(w.re, d), Real(w.im, d));
      const auto a = vandermonde_weights(xd);
      Complex acc(d);
      for (std::size_t i = 0; i <= n; ++i) acc += a[i] * exp(wd * xd[i]);
      return acc * factorial(n, d);
    }
  }
  throw std::logic_error("eval_package: unreachable");
}

Real package_bound(const std::vector<Real>& nodes, const Complex& w) {
  require_sorted(nodes);
  if (!(w.re.sign() < 0)) throw std::invalid_argument("package_bound: needs Re(w) < 0");
  const Precision p = working_precision(nodes, w);
  const long n = static_cast<long>(nodes.size()) - 1;
  return sqrt(Real(2L, p)) * pow(abs(w), n) * exp(nodes.front() * w.re);
}

Complex hyperfunction_eval(const DiscreteDistribution& D, const Complex& p) {
  const Precision prec = std::max(D.precision(), p.precision());
  Complex acc(prec);
  for (const auto& a : D.atoms()) {
    const Complex d = p - a.beta;
    if (d.is_zero()) throw std::domain_error("hyperfunction_eval: p is a pole (on the support)");
    acc += a.a * factorial(static_cast<unsigned long>(a.r), prec) / pow(d, a.r + 1);
  }
  return acc;
}

Complex contour_pairing(const DiscreteDistribution& D, const TestFunction& phi, const Real& center,
                        const Real& radius, long nodes) {
  if (nodes < 1) throw std::invalid_argument("contour_pairing: need at least one node");
  if (!(radius.sign() > 0)) throw std::invalid_argument("contour_pairing: radius must be > 0");
  for (const auto& a : D.atoms()) {
    if (!(abs(a.beta - center) < radius)) {
      throw std::invalid_argument("contour_pairing: circle does not enclose the support");
    }
  }
  const Precision p = std::max(D.precision(), std::max(center.precision(), radius.precision()));
  const Real step = Real::pi(p) * 2L / nodes;
  Complex acc(p);
  for (long j = 0; j < nodes; ++j) {
    Real s(p), c(p);
    sin_cos(step * j, s, c);
    const Complex u(radius * c, radius * s);
    const Complex z = u + center;
    acc += hyperfunction_eval(D, z) * phi(z) * u;
  }
  return acc / nodes;
}

ContourResult contour_pairing_adaptive(const DiscreteDistribution& D, const TestFunction& phi,
                                       const Real& center, const Real& radius, const Real& tol,
                                       long start, long max_nodes) {
  ContourResult r;
  r.nodes = std::max(1L, start);
  r.value = contour_pairing(D, phi, center, radius, r.nodes);
  while (r.nodes * 2 <= max_nodes) {
    Complex next = contour_pairing(D, phi, center, radius, r.nodes * 2);
    r.nodes *= 2;
    const bool close = abs(next - r.value) <= tol * max(Real(1L, tol.precision()), abs(next));
    r.value = std::move(next);
    if (close) {
      r.converged = true;
      break;
    }
  }
  return r;
}

}  // namespace irrsum
