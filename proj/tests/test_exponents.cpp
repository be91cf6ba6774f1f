// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "irrsum/exponents.hpp"
#include "oracles.hpp"

using namespace irrsum;

namespace {

const Precision P = kDefaultPrecision;

Real R(double x) { return Real(x, P); }

bool close(const Real& a, const Real& b) { return abs(a - b) < R(1e-60); }

// Count-based check of #(R ∩ [β, β+L)) ≤ μ·L·(β+L) + ν·L for every anchor β
// whose window lies inside [0, cutoff].
bool density_holds(const ExponentSet& set, const DensityParams& d) {
  const auto pts = set.values();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Real hi = pts[i] + d.window;
    if (set.cutoff.is_finite() && hi > set.cutoff + d.window) continue;
    // a point within 1e-40 of the end equals it exactly: these sets have
    // desk-scale p, q, so distinct values p + q/α differ by far more
    long count = 0;
    for (std::size_t j = i; j < pts.size() && pts[j] < hi - R(1e-40); ++j) ++count;
    const Real allowance = d.mu * d.window * hi + d.nu * d.window;
    if (Real(count, P) > allowance + R(1e-30)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("exponents") {

TEST_CASE("generate_r_alpha examples") {
  const auto a2 = generate_r_alpha(R(2), R(1.5));
  REQUIRE(a2.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(close(a2.points[i].value, R(0.5 * static_cast<double>(i))));

  const Real s2 = sqrt(R(2));
  const auto b = generate_r_alpha(s2, R(2));
  const std::vector<Real> want{R(0), 1L / s2, R(1), s2, 1L + 1L / s2, R(2)};
  REQUIRE(b.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(close(b.points[i].value, want[i]));
  CHECK(abs(b.points[1].value - R(0.70711)) < R(1e-5));
  CHECK(abs(b.points[4].value - R(1.70711)) < R(1e-5));

  const auto z = generate_r_alpha(s2, R(0));
  REQUIRE(z.size() == 1);
  CHECK(z.points[0].value.is_zero());
}

TEST_CASE("R_sqrt2 is strictly increasing, keeps (p, q) and has no collisions") {
  const Real s2 = sqrt(R(2));
  const auto set = generate_r_alpha(s2, R(30));
  long expected = 0;
  for (long q = 0; q <= 30 * 1.5; ++q) {
    const Real base = Real(q, P) / s2;
    if (base > R(30)) break;
    expected += floor(R(30) - base).to_long() + 1;
  }
  CHECK(static_cast<long>(set.size()) == expected);
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& e = set.points[i];
    REQUIRE(e.p.has_value());
    REQUIRE(e.q.has_value());
    CHECK(close(e.value, Real(*e.p, P) + Real(*e.q, P) / s2));
    if (i > 0) CHECK(set.points[i - 1].value < e.value);
  }
  CHECK(set.contains(s2));
  CHECK(!set.contains(R(0.5)));
  CHECK(close(*set.next_above(R(1)), s2));
}

TEST_CASE("explicit sets are sorted and merged") {
  const auto set = make_exponent_set({R(2), R(0.5), R(2), R(1)});
  REQUIRE(set.size() == 3);
  CHECK(close(set.points[0].value, R(0.5)));
  CHECK(close(set.points[2].value, R(2)));
  CHECK(set.cutoff.is_inf());
  CHECK(generate_integers(R(3.5)).size() == 4);
}

TEST_CASE("density_params examples") {
  const auto nat = density_params(generate_integers(R(20)), R(1));
  CHECK(nat.mu.is_zero());
  CHECK(abs(nat.nu - R(1)) < R(1e-9));

  const auto single = density_params(make_exponent_set({R(0)}), R(1));
  CHECK(single.mu.is_zero());
  CHECK(abs(single.nu - R(1)) < R(1e-9));

  const auto ra_set = generate_r_alpha(sqrt(R(2)), R(20));
  const auto ra = density_params(ra_set, R(1));
  // the knee of a finite frontier sits slightly off the asymptotic slope
  CHECK(ra.mu <= sqrt(R(2)) + R(0.02));
  CHECK(density_holds(ra_set, ra));
  CHECK(density_violation(ra_set, ra) <= R(0));
}

TEST_CASE("density bound holds on every anchored window for assorted sets") {
  auto g = oracle::rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Real> pts;
    const int n = 5 + static_cast<int>(g() % 40);
    for (int i = 0; i < n; ++i) pts.push_back(R(oracle::uniform(g, 0, 10)));
    const auto set = make_exponent_set(pts);
    for (double L : {0.5, 1.0, 2.0}) {
      const auto d = density_params(set, R(L));
      CHECK(d.mu >= R(0));
      CHECK(d.nu >= R(0));
      CHECK(density_holds(set, d));
    }
  }
  for (double alpha : {1.5, 1.7320508075688772, 3.0}) {
    const auto set = generate_r_alpha(R(alpha), R(15));
    const auto d = density_params(set, R(1));
    CHECK(density_holds(set, d));
  }
}

TEST_CASE("admissible_sequence examples") {
  const ExponentSet none = make_exponent_set({});
  const auto s1 = admissible_sequence(R(1), none);
  for (long n = 0; n <= 3; ++n) CHECK(s1.t(n).is_zero());
  CHECK(close(s1.t(4), R(0.5)));
  CHECK(close(s1.t(5), R(1.5)));
  const auto s2 = admissible_sequence(R(2), none);
  CHECK(close(s2.t(5), R(0.75)));
  const auto half = admissible_sequence(R(1), make_exponent_set({R(0.5)}));
  CHECK(half.t(4) > R(0.5));
  CHECK(half.t(4) <= R(0.75));
}

TEST_CASE("admissible sequences avoid the support and grow linearly") {
  const auto set = generate_r_alpha(sqrt(R(2)), R(40));
  for (double k : {0.08772, 0.5, 1.0, 2.0, 3.7}) {
    const auto seq = admissible_sequence(R(k), set);
    CHECK(seq.t(0).is_zero());
    Real prev = seq.t(0);
    for (long n = 1; n < 400; ++n) {
      const Real t = seq.t(n);
      CHECK(t >= prev);
      if (t <= set.cutoff) CHECK_FALSE(set.contains(t));
      if (n >= 8) CHECK(t / Real(n, P) >= R(0.5 / k));
      prev = t;
    }
    const long m = seq.max_window(set.cutoff);
    CHECK(seq.t(m + 1) <= set.cutoff);
    CHECK(seq.t(m + 2) > set.cutoff);
  }
}

TEST_CASE("truncated sequences end in an infinite window") {
  const auto seq = admissible_sequence(R(1), generate_integers(R(10))).truncated_after(6);
  CHECK(seq.last_finite() == 6);
  CHECK(seq.t(6).is_finite());
  CHECK(seq.t(7).is_inf());
}

}  // TEST_SUITE
