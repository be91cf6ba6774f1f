// SPDX-License-Identifier: MIT
// Combinatorial norm via a dense two-phase simplex (Bland's rule).
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "irrsum/distribution.hpp"

namespace irrsum {

namespace {

using Row = std::vector<Real>;

struct Tableau {
  // rows 0..m-1 are constraints, last column is the right hand side
  std::vector<Row> t;
  Row obj;
  std::vector<std::size_t> basis;
  std::size_t cols = 0;  // structural + artificial variables
  Real eps;

  void pivot(std::size_t r, std::size_t c) {
    const Real piv = t[r][c];
    for (auto& x : t[r]) x /= piv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r || t[i][c].is_zero()) continue;
      const Real f = t[i][c];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (!t[r][j].is_zero()) t[i][j] -= f * t[r][j];
      }
    }
    if (!obj[c].is_zero()) {
      const Real f = obj[c];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (!t[r][j].is_zero()) obj[j] -= f * t[r][j];
      }
    }
    basis[r] = c;
  }

  // Minimizes with reduced costs in obj; columns >= allowed are frozen.
  void run(std::size_t allowed) {
    for (long guard = 0; guard < 1000000; ++guard) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (obj[j] < -eps) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return;
      std::size_t leave = t.size();
      Real best;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i][enter] > eps)) continue;
        Real ratio = t[i][cols] / t[i][enter];
        if (leave == t.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == t.size()) throw std::runtime_error("combinatorial_norm_lp: unbounded program");
      pivot(leave, enter);
    }
    throw std::runtime_error("combinatorial_norm_lp: simplex did not terminate");
  }
};

// min c·x s.t. A x = b, x ≥ 0.
Real solve_standard_form(std::vector<Row> A, Row b, const Row& c, Precision p) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  Tableau tb;
  tb.eps = ldexp(Real(1L, p), -(p.bits / 2));
  tb.cols = n + m;
  for (std::size_t i = 0; i < m; ++i) {
    Row row(n + m + 1, Real(p));
    const bool neg = b[i].sign() < 0;
    for (std::size_t j = 0; j < n; ++j) row[j] = neg ? -A[i][j] : A[i][j];
    row[n + i] = Real(1L, p);
    row[n + m] = neg ? -b[i] : b[i];
    tb.t.push_back(std::move(row));
    tb.basis.push_back(n + i);
  }
  // phase 1: minimize the sum of artificials
  tb.obj.assign(n + m + 1, Real(p));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tb.obj[j] -= tb.t[i][j];
    tb.obj[n + m] -= tb.t[i][n + m];
  }
  tb.run(n);
  Real scale(1L, p);
  for (const auto& x : b) scale = max(scale, abs(x));
  if (abs(tb.obj[n + m]) > tb.eps * scale) {
    throw std::runtime_error("combinatorial_norm_lp: infeasible program (internal error)");
  }
  // drive remaining artificials out of the basis or drop their rows
  for (std::size_t i = 0; i < tb.t.size();) {
    if (tb.basis[i] < n) {
      ++i;
      continue;
    }
    std::size_t c_in = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (abs(tb.t[i][j]) > tb.eps) {
        c_in = j;
        break;
      }
    }
    if (c_in < n) {
      tb.pivot(i, c_in);
      ++i;
    } else {
      tb.t.erase(tb.t.begin() + static_cast<long>(i));
      tb.basis.erase(tb.basis.begin() + static_cast<long>(i));
    }
  }
  // phase 2
  tb.obj.assign(n + m + 1, Real(p));
  for (std::size_t j = 0; j < n; ++j) tb.obj[j] = c[j];
  for (std::size_t i = 0; i < tb.t.size(); ++i) {
    const std::size_t bj = tb.basis[i];
    if (tb.obj[bj].is_zero()) continue;
    const Real f = tb.obj[bj];
    for (std::size_t j = 0; j <= tb.cols; ++j) tb.obj[j] -= f * tb.t[i][j];
  }
  tb.run(n);
  return -tb.obj[n + m];
}

}  // namespace

Real combinatorial_norm_lp(const DiscreteDistribution& D, int k, const Real& rho, NormMode mode) {
  if (k < 0) throw std::invalid_argument("combinatorial_norm_lp: k must be >= 0");
  if (!D.nondegenerate()) throw std::invalid_argument("combinatorial_norm_lp: needs order-0 atoms");
  if (!D.is_real()) throw std::invalid_argument("combinatorial_norm_lp: real coefficients only");
  const Precision p = std::max(D.precision(), rho.precision());
  const auto supp = D.support();
  const std::size_t N = supp.size();
  if (N > 12) throw std::invalid_argument("combinatorial_norm_lp: support larger than 12 points");
  bool all_zero = true;
  for (const auto& a : D.atoms()) all_zero = all_zero && a.a.is_zero();
  if (all_zero) return Real(p);
  if (static_cast<std::size_t>(k) + 1 > N) {
    throw OrderError("combinatorial_norm_lp: order exceeds what the support allows", k);
  }
  Row rhs(N, Real(p));
  for (std::size_t j = 0; j < N; ++j) rhs[j] = D.atoms()[j].a.re;

  std::vector<Row> cols;
  Row cost;
  for (unsigned mask = 1; mask < (1u << N); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size < static_cast<std::size_t>(k) + 1) continue;
    if (mode == NormMode::exact_order && size != static_cast<std::size_t>(k) + 1) continue;
    std::vector<Real> nodes;
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < N; ++j) {
      if (mask & (1u << j)) {
        nodes.push_back(supp[j]);
        idx.push_back(j);
      }
    }
    auto w = vandermonde_weights(nodes);
    const Real nf = factorial(size - 1, p);
    Row col(N, Real(p));
    for (std::size_t q = 0; q < idx.size(); ++q) col[idx[q]] = w[q] * nf;
    const Real weight = pow(rho, static_cast<long>(k + 1) - static_cast<long>(size));
    cols.push_back(col);
    cost.push_back(weight);
    for (auto& x : col) x = -x;
    cols.push_back(std::move(col));
    cost.push_back(weight);
  }
  std::vector<Row> A(N, Row(cols.size(), Real(p)));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < N; ++r) A[r][c] = cols[c][r];
  }
  return solve_standard_form(std::move(A), std::move(rhs), cost, p);
}

}  // namespace irrsum
