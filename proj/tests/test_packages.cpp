// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <algorithm>

#include "irrsum/packages.hpp"
#include "oracles.hpp"

using namespace irrsum;
using oracle::rel_err;

namespace {

const Precision P = kDefaultPrecision;

Real R(double x, Precision p = P) { return Real(x, p); }

std::vector<Real> random_nodes(std::mt19937_64& g, std::size_t n, Precision p, double lo = 0, double hi = 5) {
  std::vector<Real> x;
  while (x.size() < n) {
    Real v = R(oracle::uniform(g, lo, hi), p);
    if (std::none_of(x.begin(), x.end(), [&](const Real& y) { return y == v; })) x.push_back(v);
  }
  std::sort(x.begin(), x.end());
  return x;
}

// Divided difference of e^{tw} by the recursive definition, as an oracle
// independent of the product and series code paths. w carries the precision.
Complex divided_difference(const std::vector<Real>& x, const Complex& w) {
  std::vector<Complex> f;
  for (const auto& b : x) f.push_back(exp(w * Complex(b)));
  for (std::size_t level = 1; level < x.size(); ++level) {
    for (std::size_t i = x.size() - 1; i >= level; --i) {
      f[i] = (f[i] - f[i - 1]) / Complex(x[i] - x[i - level]);
    }
  }
  return f.back() * factorial(x.size() - 1, w.precision());
}

}  // namespace

TEST_SUITE("packages") {

TEST_CASE("eval_package examples") {
  const Complex w(R(-1));
  const Complex want = Complex(pow(1L - exp(R(-1)), 2));
  for (auto m : {PackageMethod::product, PackageMethod::series, PackageMethod::automatic}) {
    const Complex v = eval_package({R(0), R(1), R(2)}, w, m);
    CHECK(rel_err(v, want) < 1e-60);
    CHECK(abs(v.re - R(0.39957640089)) < R(1e-10));
  }
  for (auto m : {PackageMethod::product, PackageMethod::series}) {
    CHECK(abs(eval_package({R(0.3), R(1.1)}, Complex(P), m)) < R(1e-70));
    CHECK(rel_err(eval_package({R(0.3)}, Complex(P), m), Complex(R(1))) < 1e-70);
  }
  const Real h = Real::parse("1e-6", P);
  const Complex c = eval_package({R(1), 1L + h, 1L + 2L * h}, w);
  CHECK(abs(c - Complex(exp(R(-1)))) < R(1e-5));
  CHECK(abs(c - Complex(exp(R(-1)))) > R(1e-8));  // the O(h) term is really there
}

TEST_CASE("package_bound examples and errors") {
  const Complex w1(R(-1));
  CHECK(abs(package_bound({R(0), R(1), R(2)}, w1) - sqrt(R(2))) < R(1e-60));
  CHECK(package_bound({R(0), R(1), R(2)}, w1) >= abs(eval_package({R(0), R(1), R(2)}, w1)));
  const Real beta = R(2.5);
  CHECK(rel_err(package_bound({beta}, w1), sqrt(R(2)) * exp(-beta)) < 1e-60);
  const Complex w2(R(-2));
  const Real b = package_bound({R(1), R(1.1)}, w2);
  CHECK(abs(b - R(0.38279)) < R(1e-5));
  const Real actual = abs(eval_package({R(1), R(1.1)}, w2));
  // (e^{−2} − e^{−2.2})/0.1 = 0.245320…
  CHECK(rel_err(actual, (exp(R(-2)) - exp(R(-2.2))) / R(0.1)) < 1e-15);
  CHECK(b >= actual);
  CHECK_THROWS((void)package_bound({R(0), R(1)}, Complex(R(0), R(1))));
}

TEST_CASE("product and series agree, and match recursive divided differences") {
  const Precision hi{512};
  auto g = oracle::rng(41);
  for (int trial = 0; trial < 80; ++trial) {
    const auto x = random_nodes(g, 1 + trial % 11, hi);
    Complex w(oracle::uniform(g, -4, -0.1), oracle::uniform(g, -8, 8), hi);
    if (abs(w) > R(8, hi)) w = w * (R(8, hi) / abs(w));
    const Complex prod = eval_package(x, w, PackageMethod::product);
    const Complex ser = eval_package(x, w, PackageMethod::series);
    CHECK(rel_err(prod, ser) < 1e-25);
    CHECK(rel_err(ser, divided_difference(x, w)) < 1e-25);
    const auto pre = eval_package_prefixes(x, Complex(Real(w.re, P), Real(w.im, P)));
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::vector<Real> sub(x.begin(), x.begin() + static_cast<long>(i) + 1);
      CHECK(rel_err(pre[i], divided_difference(sub, w)) < 1e-25);
    }
  }
}

TEST_CASE("cancellation exposure on clustered nodes") {
  const Real h = Real::parse("1e-6", Precision{512});
  std::vector<Real> x;
  for (long i = 0; i <= 3; ++i) x.push_back(Real(1L, Precision{512}) + h * i);
  const Complex w512(R(-1.3, Precision{512}), R(0.7, Precision{512}));
  const Complex oracle_v = eval_package(x, w512, PackageMethod::series);
  const Complex naive = eval_package(x, w512, PackageMethod::naive_double);
  CHECK(rel_err(naive, oracle_v) > 1e-6);
  std::vector<Real> x256;
  for (const auto& v : x) x256.emplace_back(v, P);
  const Complex w256(R(-1.3), R(0.7));
  CHECK(rel_err(eval_package(x256, w256, PackageMethod::product), oracle_v) < 1e-30);
  CHECK(rel_err(eval_package(x256, w256, PackageMethod::series), oracle_v) < 1e-30);
  CHECK(rel_err(eval_package_prefixes(x256, w256).back(), oracle_v) < 1e-30);
}

TEST_CASE("package_bound dominates on random samples") {
  const Precision p{128};
  auto g = oracle::rng(42);
  long violations = 0;
  for (int s = 0; s < 10000; ++s) {
    const auto x = random_nodes(g, 1 + g() % 6, p);
    const Complex w(oracle::uniform(g, -4, -0.01), oracle::uniform(g, -8, 8), p);
    if (package_bound(x, w) < abs(eval_package(x, w))) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("complete homogeneous polynomials of nonnegative nodes are nonnegative") {
  auto g = oracle::rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_nodes(g, 1 + trial % 10, P);
    for (const auto& h : complete_homogeneous(x, 40)) CHECK(h >= R(0));
  }
}

TEST_CASE("hyperfunction examples") {
  const auto d01 = vandermonde({R(0), R(1)});
  CHECK(rel_err(hyperfunction_eval(d01, Complex(R(2))), Complex(R(0.5))) < 1e-70);
  const DiscreteDistribution d0({Atom{R(0), 0, Complex(R(1))}});
  CHECK(rel_err(hyperfunction_eval(d0, Complex(R(0), R(1))), Complex(R(0), R(-1))) < 1e-70);
  CHECK(rel_err(hyperfunction_eval(vandermonde({R(0), R(1), R(2)}), Complex(R(3))), Complex(1L / R(6))) < 1e-70);
  CHECK_THROWS((void)hyperfunction_eval(d01, Complex(R(1))));

  auto g = oracle::rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_nodes(g, 1 + trial % 8, P);
    const Complex p(oracle::uniform(g, -2, 7), oracle::uniform(g, 0.1, 3), P);
    Complex prod(Real(1L, P));
    for (const auto& b : x) prod /= p - Complex(b);
    CHECK(rel_err(hyperfunction_eval(vandermonde(x), p), prod) < 1e-50);
  }
}

TEST_CASE("contour pairing examples") {
  const auto d = vandermonde({R(0), R(1)});
  const TestFunction id = [](const Complex& p) { return p; };
  CHECK(abs(contour_pairing(d, id, R(0.5), R(1), 64) - Complex(R(1))) < R(1e-12));
  const DiscreteDistribution single({Atom{R(2), 0, Complex(R(1))}});
  const TestFunction one = [](const Complex& p) { return Complex(Real(1L, p.precision())); };
  CHECK(abs(contour_pairing(single, one, R(2), R(0.5), 16) - Complex(R(1))) < R(1e-12));
  const Complex w(R(-1));
  const TestFunction e = [w](const Complex& p) { return exp(p * w); };
  const auto D = normalized_vandermonde({R(0), R(1), R(2)});
  CHECK(abs(contour_pairing(D, e, R(1), R(2), 128) - Complex(pow(1L - exp(R(-1)), 2))) < R(1e-10));
  CHECK_THROWS((void)contour_pairing(D, e, R(0), R(1), 64));
}

TEST_CASE("adaptive contour pairing matches the atom sum, derivative atoms included") {
  auto g = oracle::rng(45);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<Atom> atoms;
    for (int i = 0; i < 4; ++i) {
      atoms.push_back(Atom{R(oracle::uniform(g, 0, 3)), static_cast<int>(g() % 3),
                           Complex(oracle::uniform(g, -1, 1), oracle::uniform(g, -1, 1), P)});
    }
    const DiscreteDistribution D(atoms);
    const Complex w(oracle::uniform(g, -2, 0.5), oracle::uniform(g, -2, 2), P);
    const TestFunction e = [w](const Complex& p) { return exp(p * w); };
    const auto res = contour_pairing_adaptive(D, e, R(1.5), R(2.5), R(1e-14));
    CHECK(res.converged);
    CHECK(abs(res.value - D.pair_exp(w)) < R(1e-10));
  }
}

}  // TEST_SUITE
