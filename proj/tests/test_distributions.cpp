// SPDX-License-Identifier: MIT
#include <doctest.h>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "irrsum/distribution.hpp"
#include "irrsum/integrals.hpp"
#include "oracles.hpp"

using namespace irrsum;
using oracle::rel_err;

namespace {

const Precision P = kDefaultPrecision;

Real R(double x) { return Real(x, P); }

Real from_q(const mpq_class& q) {
  Real r(P);
  mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

bool near(const Complex& a, const Complex& b, double tol = 1e-60) { return abs(a - b) <= R(tol); }

DiscreteDistribution dist(std::initializer_list<std::pair<double, double>> atoms) {
  std::vector<Atom> v;
  for (const auto& [beta, a] : atoms) v.push_back(Atom{R(beta), 0, Complex(R(a))});
  return DiscreteDistribution(std::move(v));
}

// Coefficient of the atom at β (zero when absent).
Complex coeff_at(const DiscreteDistribution& D, const Real& beta, int r = 0) {
  for (const auto& a : D.atoms()) {
    if (a.r == r && abs(a.beta - beta) < R(1e-60)) return a.a;
  }
  return Complex(P);
}

// Solves Σ_i a_i β_i^j = [j = n] for j = 0..n by exact Gaussian elimination.
std::vector<mpq_class> vandermonde_linear_solve(const std::vector<mpq_class>& x) {
  const std::size_t n = x.size();
  std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n + 1));
  for (std::size_t j = 0; j < n; ++j) {
    mpq_class pw = 1;
    for (std::size_t i = 0; i < n; ++i) {
      pw = 1;
      for (std::size_t e = 0; e < j; ++e) pw *= x[i];
      M[j][i] = pw;
    }
    M[j][n] = (j + 1 == n) ? 1 : 0;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (M[piv][c] == 0) ++piv;
    std::swap(M[piv], M[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || M[r][c] == 0) continue;
      const mpq_class f = M[r][c] / M[c][c];
      for (std::size_t q = c; q <= n; ++q) M[r][q] -= f * M[c][q];
    }
  }
  std::vector<mpq_class> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = M[i][n] / M[i][i];
  return a;
}

// Σ over compositions p_0+…+p_n = d of Π β_i^{p_i}.
mpq_class composition_sum(const std::vector<mpq_class>& x, std::size_t i, int d) {
  if (i + 1 == x.size()) {
    mpq_class pw = 1;
    for (int e = 0; e < d; ++e) pw *= x[i];
    return pw;
  }
  mpq_class acc = 0, pw = 1;
  for (int e = 0; e <= d; ++e) {
    acc += pw * composition_sum(x, i + 1, d - e);
    pw *= x[i];
  }
  return acc;
}

std::vector<mpq_class> random_rational_nodes(std::mt19937_64& g, std::size_t n) {
  std::vector<mpq_class> x;
  while (x.size() < n) {
    mpq_class q(static_cast<long>(g() % 200), static_cast<long>(1 + g() % 17));
    q.canonicalize();
    if (std::find(x.begin(), x.end(), q) == x.end()) x.push_back(q);
  }
  std::sort(x.begin(), x.end());
  return x;
}

std::vector<Real> random_nodes(std::mt19937_64& g, std::size_t n, double lo = 0, double hi = 3) {
  std::vector<Real> x;
  while (x.size() < n) {
    Real v = R(oracle::uniform(g, lo, hi));
    bool ok = true;
    for (const auto& y : x) ok = ok && abs(y - v) > R(0.05);
    if (ok) x.push_back(v);
  }
  std::sort(x.begin(), x.end());
  return x;
}

// Random real distribution of order ≥ k on `n` random points: a combination
// of normalized Vandermonde distributions of subsets of size ≥ k+1.
DiscreteDistribution random_order_k(std::mt19937_64& g, std::size_t n, int k) {
  const auto pts = random_nodes(g, n);
  DiscreteDistribution D;
  for (int term = 0; term < 4; ++term) {
    std::vector<Real> sub;
    for (const auto& x : pts) {
      if (g() % 2 == 0) sub.push_back(x);
    }
    while (sub.size() < static_cast<std::size_t>(k) + 1) {
      sub = pts;
      sub.resize(static_cast<std::size_t>(k) + 1 + g() % (n - static_cast<std::size_t>(k)));
    }
    D += normalized_vandermonde(sub) * Complex(R(oracle::uniform(g, -2, 2)));
  }
  return D;
}

Real pair_poly(const DiscreteDistribution& D, const Polynomial<Real>& phi) {
  Real acc(P);
  for (const auto& a : D.atoms()) acc += a.a.re * phi(a.beta);
  return acc;
}

}  // namespace

TEST_SUITE("distributions") {

TEST_CASE("vandermonde examples") {
  const auto d01 = vandermonde({R(0), R(1)});
  CHECK(near(coeff_at(d01, R(0)), Complex(R(-1))));
  CHECK(near(coeff_at(d01, R(1)), Complex(R(1))));
  const auto d012 = vandermonde({R(0), R(1), R(2)});
  CHECK(near(coeff_at(d012, R(0)), Complex(R(0.5))));
  CHECK(near(coeff_at(d012, R(1)), Complex(R(-1))));
  CHECK(near(coeff_at(d012, R(2)), Complex(R(0.5))));
  const auto single = vandermonde({R(1.25)});
  REQUIRE(single.size() == 1);
  CHECK(near(single.atoms()[0].a, Complex(R(1))));
  CHECK_THROWS_AS((void)vandermonde({R(1), R(1)}), std::invalid_argument);
  CHECK_THROWS_AS((void)vandermonde({}), std::invalid_argument);
}

TEST_CASE("normalized_vandermonde examples") {
  const auto n3 = normalized_vandermonde({R(0), R(1), R(2), R(3)});
  const double want[] = {-1, 3, -3, 1};
  for (int i = 0; i < 4; ++i) CHECK(near(coeff_at(n3, R(i)), Complex(R(want[i]))));
  const auto n2 = normalized_vandermonde({R(0), R(1), R(2)});
  CHECK(near(coeff_at(n2, R(1)), Complex(R(-2))));
  CHECK(near(moment(n3, 3), Complex(R(6))));
}

TEST_CASE("product formula equals the exact rational linear solve") {
  auto g = oracle::rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto x = random_rational_nodes(g, 1 + trial % 8);
    const auto prod = vandermonde_weights(x);
    const auto solve = vandermonde_linear_solve(x);
    REQUIRE(prod.size() == solve.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(prod[i] == solve[i]);
    std::vector<Real> xr;
    for (const auto& q : x) xr.push_back(from_q(q));
    const auto D = vandermonde(xr);
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(rel_err(coeff_at(D, xr[i]), Complex(from_q(solve[i]))) < 1e-60);
    }
  }
}

TEST_CASE("moment examples") {
  const auto d01 = vandermonde({R(0), R(1)});
  CHECK(near(moment(d01, 0), Complex(R(0))));
  CHECK(near(moment(d01, 1), Complex(R(1))));
  CHECK(near(moment(d01, 2), Complex(R(1))));
  CHECK(near(moment(vandermonde({R(0), R(1), R(2)}), 4), Complex(R(7))));
  // derivative atoms: (−1)^1 δ'_2 pairs with t^3 as 3·2² = 12
  const DiscreteDistribution d1({Atom{R(2), 1, Complex(R(1))}});
  CHECK(near(moment(d1, 3), Complex(R(12))));
  CHECK(moment(d1, 0).is_zero());
}

TEST_CASE("moments equal brute-force complete homogeneous sums") {
  auto g = oracle::rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n1 = 1 + trial % 7;
    const auto x = random_rational_nodes(g, n1);
    std::vector<Real> xr;
    for (const auto& q : x) xr.push_back(from_q(q));
    const auto D = vandermonde(xr);
    const int n = static_cast<int>(n1) - 1;
    const auto h = complete_homogeneous(x, 4);
    for (int k = 0; k <= n + 4; ++k) {
      const mpq_class want = k < n ? mpq_class(0) : composition_sum(x, 0, k - n);
      if (k >= n) CHECK(h[static_cast<std::size_t>(k - n)] == want);
      const Complex got = moment(D, k);
      if (want == 0) {
        CHECK(abs(got) < R(1e-50) * pow(max(R(1), xr.back()), k));
      } else {
        CHECK(rel_err(got, Complex(from_q(want))) < 1e-50);
      }
    }
  }
}

TEST_CASE("order_of examples and errors") {
  const Real tol = default_order_tolerance(P);
  CHECK(order_of(dist({{0, -1}, {1, 1}}), tol) == 1);
  CHECK(order_of(dist({{0, 1}, {1, -1}, {2, -1}, {3, 1}}), tol) == 2);
  CHECK(order_of(dist({{0.7, 1}}), tol) == 0);
  CHECK_THROWS_AS((void)order_of(DiscreteDistribution{}, tol), std::invalid_argument);
  for (int n = 1; n <= 6; ++n) {
    std::vector<Real> nodes;
    for (int i = 0; i <= n; ++i) nodes.push_back(R(0.3 * i + 0.1 * i * i));
    CHECK(order_of(vandermonde(nodes), tol) == n);
  }
}

TEST_CASE("merge_vandermonde examples and identity") {
  const auto m1 = merge_vandermonde({R(0)}, R(1), R(2));
  const auto v012 = vandermonde({R(0), R(1), R(2)});
  for (int i = 0; i < 3; ++i) CHECK(near(coeff_at(m1, R(i)), coeff_at(v012, R(i))));
  const auto m0 = merge_vandermonde({}, R(0), R(1));
  CHECK(near(coeff_at(m0, R(1)), Complex(R(1))));
  CHECK(near(coeff_at(m0, R(0)), Complex(R(-1))));
  const auto m3 = merge_vandermonde({R(0), R(1)}, R(2), R(3));
  const auto v3 = vandermonde({R(0), R(1), R(2), R(3)});
  for (int i = 0; i < 4; ++i) CHECK(near(coeff_at(m3, R(i)), coeff_at(v3, R(i))));
  CHECK_THROWS_AS((void)merge_vandermonde({R(0)}, R(1), R(1)), std::invalid_argument);

  auto g = oracle::rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = random_nodes(g, 3 + trial % 6);
    std::vector<std::size_t> idx(x.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), g);
    const Real b1 = x[idx[0]], b2 = x[idx[1]];
    std::vector<Real> rest;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i != idx[0] && i != idx[1]) rest.push_back(x[i]);
    }
    const auto m = merge_vandermonde(rest, b1, b2);
    const auto v = vandermonde(x);
    for (const auto& beta : x) {
      CHECK(rel_err(coeff_at(m, beta), coeff_at(v, beta)) < 1e-50);
    }
  }
}

TEST_CASE("primitive examples") {
  const auto f1 = primitive(dist({{0, -1}, {1, 1}}), 1);
  CHECK(near(f1(R(0.5)), Complex(R(-1))));
  CHECK(near(f1(R(1.5)), Complex(R(0))));
  CHECK(f1.compact());

  const auto tent = primitive(normalized_vandermonde({R(0), R(1), R(2)}), 2);
  CHECK(near(tent(R(0.25)), Complex(R(0.25))));
  CHECK(near(tent(R(1.5)), Complex(R(0.5))));
  CHECK(near(tent(R(2.5)), Complex(R(0))));
  CHECK(tent.compact());

  const auto step = primitive(dist({{0, 1}}), 1);
  CHECK_FALSE(step.compact());
  CHECK(near(step(R(10)), Complex(R(1))));

  const DiscreteDistribution deriv({Atom{R(1), 2, Complex(R(1))}});
  CHECK_THROWS_AS((void)primitive(deriv, 2), std::invalid_argument);
}

// I^nD carries the sign (−1)^n under this convention (I^1 of δ_1 − δ_0 is −1).
TEST_CASE("signed primitive of a normalized Vandermonde is a probability density") {
  auto g = oracle::rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_nodes(g, 2 + trial % 6);
    const int n = static_cast<int>(x.size()) - 1;
    const auto f = primitive(normalized_vandermonde(x), n);
    const long sign = n % 2 == 0 ? 1 : -1;
    for (int s = 0; s <= 1000; ++s) {
      const Real t = x.front() + (x.back() - x.front()) * s / 1000;
      CHECK(f(t).re * sign >= R(-1e-40));
    }
    Real integral(P);
    for (std::size_t j = 0; j < f.pieces.size(); ++j) {
      const Real hi = j + 1 < f.breakpoints.size() ? f.breakpoints[j + 1] : x.back();
      integral += poly_exp_integral(f.pieces[j], Complex(P), f.breakpoints[j], hi).re;
    }
    CHECK(abs(integral * sign - R(1)) < R(1e-12));
  }
}

TEST_CASE("functional_norm examples") {
  CHECK(rel_err(functional_norm(normalized_vandermonde({R(0), R(1), R(2)}), 2), R(1)) < 1e-50);
  CHECK(rel_err(functional_norm(normalized_vandermonde({R(0), R(0.3), R(1.7)}), 2), R(1)) < 1e-50);
  const auto D = dist({{0, 1}, {1, -1}, {2, -1}, {3, 1}});
  CHECK(rel_err(functional_norm(D, 2, Interval{R(0), R(3)}), R(2)) < 1e-50);
  CHECK(rel_err(functional_norm(dist({{2, 1}}), 0), R(1)) < 1e-60);
  CHECK_THROWS_AS((void)functional_norm(D, 3), OrderError);
  try {
    (void)functional_norm(D, 3);
  } catch (const OrderError& e) {
    CHECK(e.moment == 2);
  }
  CHECK_THROWS_AS((void)functional_norm(D, 2, Interval{R(0), R(2)}), std::invalid_argument);
}

TEST_CASE("decompose_nested examples") {
  const auto a = decompose_nested(dist({{0, 1}, {1, -1}, {2, -1}, {3, 1}}), 2);
  const double want_a[] = {0, 0, 2, 1};
  REQUIRE(a.b.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(near(a.b[i], Complex(R(want_a[i])), 1e-60));
  CHECK(a.bound_holds);

  const auto b = decompose_nested(normalized_vandermonde({R(0), R(1), R(2)}), 2);
  const double want_b[] = {0, 0, 1};
  for (int i = 0; i < 3; ++i) CHECK(near(b.b[i], Complex(R(want_b[i])), 1e-60));

  const auto c = decompose_nested(dist({{0, -3}, {1, 3}}), 1);
  CHECK(near(c.b[0], Complex(R(0))));
  CHECK(near(c.b[1], Complex(R(3))));

  CHECK_THROWS_AS((void)decompose_nested(dist({{0, 1}, {1, 1}}), 1), OrderError);
}

TEST_CASE("decompose_nested reconstructs and obeys the factorial bound") {
  auto g = oracle::rng(35);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = trial % 4;
    const std::size_t n = static_cast<std::size_t>(k) + 2 + trial % 5;
    const auto D = random_order_k(g, n, k);
    const auto dec = decompose_nested(D, k);
    CHECK(dec.residual <= R(1e-20) * D.sup_norm());
    CHECK(dec.bound_holds);
    for (int i = 0; i < k; ++i) CHECK(abs(dec.b[static_cast<std::size_t>(i)]) <= R(1e-50) * D.sup_norm());
    // Σ L^{k−i}|b_i| ≤ e·N_k^fun
    Real s(P);
    for (std::size_t i = static_cast<std::size_t>(k); i < dec.b.size(); ++i) {
      s += pow(dec.L, k - static_cast<long>(i)) * abs(dec.b[i]);
    }
    CHECK(s <= exp(R(1)) * (dec.C + dec.C * R(1e-30)));
    // independent reconstruction by pairing with polynomials
    DiscreteDistribution rec;
    for (std::size_t i = 0; i < dec.b.size(); ++i) {
      std::vector<Real> sub(dec.nodes.begin(), dec.nodes.begin() + static_cast<long>(i) + 1);
      rec += normalized_vandermonde(sub) * dec.b[i];
    }
    for (const auto& beta : dec.nodes) CHECK(abs(coeff_at(rec, beta) - coeff_at(D, beta)) <= R(1e-20) * D.sup_norm());
  }
}

TEST_CASE("mean value property of normalized Vandermonde distributions") {
  auto g = oracle::rng(36);
  for (int trial = 0; trial < 60; ++trial) {
    const auto x = random_nodes(g, 1 + trial % 6);
    const int n = static_cast<int>(x.size()) - 1;
    std::vector<Real> c;
    const int deg = n + static_cast<int>(g() % 4);
    for (int j = 0; j <= deg; ++j) c.push_back(R(oracle::uniform(g, -1, 1)));
    Polynomial<Real> phi(c, R(0));
    Polynomial<Real> dn = phi;
    for (int j = 0; j < n; ++j) dn = dn.derivative();
    const Real lo = x.front(), hi = x.back();
    // extremes of a polynomial of degree ≤ 3 on [lo, hi]: ends and critical points
    std::vector<Real> cand{lo, hi};
    const auto d1 = dn.derivative().shifted(R(0));
    const auto& q = d1.coefficients();
    if (q.size() == 2) cand.push_back(-q[0] / q[1]);
    if (q.size() == 3) {
      const Real disc = q[1] * q[1] - 4L * q[0] * q[2];
      if (disc >= R(0)) {
        cand.push_back((-q[1] + sqrt(disc)) / (2L * q[2]));
        cand.push_back((-q[1] - sqrt(disc)) / (2L * q[2]));
      }
    }
    Real mn = Real::infinity(P), mx = Real::infinity(P, -1);
    for (const auto& t : cand) {
      if (t < lo || t > hi) continue;
      mn = min(mn, dn(t));
      mx = max(mx, dn(t));
    }
    const Real v = pair_poly(normalized_vandermonde(x), phi);
    const Real slack = R(1e-40) * (abs(mn) + abs(mx) + R(1));
    CHECK(v >= mn - slack);
    CHECK(v <= mx + slack);
  }
}

TEST_CASE("combinatorial norm examples") {
  const Real L = R(3);
  CHECK(rel_err(combinatorial_norm_lp(normalized_vandermonde({R(0), R(1), R(2)}), 2, L, NormMode::exact_order), R(1)) <
        1e-40);
  CHECK(rel_err(combinatorial_norm_lp(normalized_vandermonde({R(0.5), R(1.1), R(2.9), R(3)}), 3, L,
                                      NormMode::exact_order),
                R(1)) < 1e-40);
  const auto D = dist({{0, 1}, {1, -1}, {2, -1}, {3, 1}});
  CHECK(rel_err(combinatorial_norm_lp(D, 2, L, NormMode::exact_order), R(2)) < 1e-40);
  CHECK(combinatorial_norm_lp(dist({{0, 0}, {1, 0}}), 1, L, NormMode::exact_order).is_zero());
  // the worked decomposition Δ_{0,1,3} + Δ_{0,2,3} reaches the optimum
  const auto two = normalized_vandermonde({R(0), R(1), R(3)}) + normalized_vandermonde({R(0), R(2), R(3)});
  for (int i = 0; i < 4; ++i) CHECK(near(coeff_at(two, R(i)), coeff_at(D, R(i))));
}

TEST_CASE("norm chain on sampled distributions") {
  auto g = oracle::rng(37);
  for (int trial = 0; trial < 25; ++trial) {
    const int k = trial % 3;
    const std::size_t n = static_cast<std::size_t>(k) + 2 + trial % 4;
    const auto D = random_order_k(g, n, k);
    const auto supp = D.support();
    const Real L = supp.back() - supp.front();
    const Real exact = combinatorial_norm_lp(D, k, L, NormMode::exact_order);
    const Real geq = combinatorial_norm_lp(D, k, L, NormMode::geq_order);
    const Real fun = functional_norm(D, k);
    CHECK(geq <= (exact + exact * R(1e-30)));
    CHECK(fun <= (exact + exact * R(1e-30)));
  }
}

TEST_CASE("undegenerate examples") {
  const auto d0 = undegenerate(DiscreteDistribution({Atom{R(0), 0, Complex(R(1))}}), R(1e-3));
  REQUIRE(d0.size() == 1);
  CHECK(near(d0.atoms()[0].a, Complex(R(1))));

  const Real eps = Real::parse("1e-3", P);
  const auto d1 = undegenerate(DiscreteDistribution({Atom{R(0), 1, Complex(R(1))}}), eps);
  CHECK(d1.nondegenerate());
  CHECK(near(coeff_at(d1, eps), Complex(1L / eps), 1e-50));
  CHECK(near(coeff_at(d1, R(0)), Complex(-1L / eps), 1e-50));
  CHECK(abs(moment(d1, 2) - Complex(eps)) < R(1e-50));

  const auto d2 = undegenerate(DiscreteDistribution({Atom{R(1), 2, Complex(R(1))}}), eps);
  const auto s = d2.support();
  REQUIRE(s.size() == 3);
  CHECK(abs(s[1] - Real::parse("1.0005", P)) < R(1e-60));
  CHECK(abs(s[2] - Real::parse("1.001", P)) < R(1e-60));
  const Complex w(R(-1));
  const Real e1 = exp(R(-1));
  CHECK(abs(d2.pair_exp(w) - Complex(e1)) <= 2L * eps * e1);

  const DiscreteDistribution crowded({Atom{R(0), 1, Complex(R(1))}, Atom{R(0.001), 0, Complex(R(1))}});
  CHECK_THROWS_AS((void)undegenerate(crowded, R(0.01)), std::invalid_argument);
  CHECK_THROWS_AS((void)undegenerate(crowded, R(0)), std::invalid_argument);
}

TEST_CASE("undegenerate error stays within the cluster bound") {
  auto g = oracle::rng(38);
  for (int trial = 0; trial < 40; ++trial) {
    const Real beta = R(oracle::uniform(g, 0, 3));
    const int r = 1 + trial % 5;
    const Complex a(oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2), P);
    const Complex w(oracle::uniform(g, -3, 1), oracle::uniform(g, -3, 3), P);
    const Real eps = R(std::pow(10.0, -oracle::uniform(g, 2, 6)));
    const DiscreteDistribution D({Atom{beta, r, a}});
    const auto U = undegenerate(D, eps);
    // sup over the cluster of |φ^{(r+1)}| for φ = e^{tw}
    const Real sup = pow(abs(w), r + 1) * exp(max(w.re * beta, w.re * (beta + eps)));
    CHECK(abs(U.pair_exp(w) - D.pair_exp(w)) <= 2L * eps * sup * abs(a));
  }
}

TEST_CASE("cluster replacement keeps the low moments exact") {
  const auto table = lagrange_derivative_table(4, P);
  std::vector<Atom> atoms{Atom{R(1), 1, Complex(R(2))}, Atom{R(1), 3, Complex(R(-1))}, Atom{R(1), 0, Complex(R(0.5))}};
  const DiscreteDistribution original(atoms);
  const auto U = cluster_replacement(atoms, R(1), R(1e-3), table);
  CHECK(U.nondegenerate());
  for (int j = 0; j <= 3; ++j) CHECK(abs(moment(U, j) - moment(original, j)) < R(1e-40));
}

}  // TEST_SUITE
