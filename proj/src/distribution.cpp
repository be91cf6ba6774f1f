// SPDX-License-Identifier: MIT
#include "irrsum/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "irrsum/integrals.hpp"

namespace irrsum {

namespace {

bool atom_less(const Atom& x, const Atom& y) {
  if (x.beta < y.beta) return true;
  if (y.beta < x.beta) return false;
  return x.r < y.r;
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) {
  for (const auto& a : atoms) {
    if (a.r < 0) throw std::invalid_argument("negative derivative order");
    if (a.beta.sign() < 0) throw std::invalid_argument("atoms must sit on [0, inf)");
  }
  std::stable_sort(atoms.begin(), atoms.end(), atom_less);
  for (auto& a : atoms) {
    if (!atoms_.empty() && atoms_.back().beta == a.beta && atoms_.back().r == a.r) {
      atoms_.back().a += a.a;
    } else {
      atoms_.push_back(std::move(a));
    }
  }
}

int DiscreteDistribution::max_order() const {
  int m = 0;
  for (const auto& a : atoms_) m = std::max(m, a.r);
  return m;
}

std::vector<Real> DiscreteDistribution::support() const {
  std::vector<Real> s;
  for (const auto& a : atoms_) {
    if (s.empty() || !(s.back() == a.beta)) s.push_back(a.beta);
  }
  return s;
}

bool DiscreteDistribution::is_real() const {
  return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.a.is_real(); });
}

Precision DiscreteDistribution::precision() const {
  Precision p{53};
  for (const auto& a : atoms_) p = std::max(p, std::max(a.beta.precision(), a.a.precision()));
  return p;
}

Real DiscreteDistribution::sup_norm() const {
  Real m(precision());
  for (const auto& a : atoms_) m = max(m, abs(a.a));
  return m;
}

Complex DiscreteDistribution::pair_exp(const Complex& w) const {
  Complex acc(std::max(precision(), w.precision()));
  for (const auto& a : atoms_) {
    Complex t = a.a * exp(w * a.beta);
    if (a.r > 0) t *= pow(w, a.r);
    acc += t;
  }
  return acc;
}

DiscreteDistribution& DiscreteDistribution::operator+=(const DiscreteDistribution& o) {
  std::vector<Atom> all = atoms_;
  all.insert(all.end(), o.atoms_.begin(), o.atoms_.end());
  *this = DiscreteDistribution(std::move(all));
  return *this;
}

DiscreteDistribution& DiscreteDistribution::operator-=(const DiscreteDistribution& o) {
  std::vector<Atom> all = atoms_;
  for (const auto& a : o.atoms_) all.push_back(Atom{a.beta, a.r, -a.a});
  *this = DiscreteDistribution(std::move(all));
  return *this;
}

DiscreteDistribution& DiscreteDistribution::operator*=(const Complex& s) {
  for (auto& a : atoms_) a.a *= s;
  return *this;
}

void check_nodes(const std::vector<Real>& nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].sign() < 0) throw std::invalid_argument("nodes must be nonnegative");
    if (i > 0 && !(nodes[i - 1] < nodes[i])) {
      throw std::invalid_argument("nodes must be distinct and sorted");
    }
  }
}

DiscreteDistribution vandermonde(const std::vector<Real>& nodes) {
  if (nodes.empty()) throw std::invalid_argument("vandermonde: no nodes");
  std::vector<Real> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  check_nodes(sorted);
  const auto w = vandermonde_weights(sorted);
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < sorted.size(); ++i) atoms.push_back(Atom{sorted[i], 0, Complex(w[i])});
  return DiscreteDistribution(std::move(atoms));
}

DiscreteDistribution normalized_vandermonde(const std::vector<Real>& nodes) {
  DiscreteDistribution d = vandermonde(nodes);
  const Precision p = d.precision();
  return d * Complex(factorial(nodes.size() - 1, p));
}

Complex moment(const DiscreteDistribution& D, int k) {
  const Precision p = D.precision();
  Complex acc(p);
  for (const auto& a : D.atoms()) {
    if (a.r > k) continue;
    // k!/(k−r)!
    Real f(1L, p);
    for (int j = k - a.r + 1; j <= k; ++j) f *= static_cast<long>(j);
    acc += a.a * (f * pow(a.beta, k - a.r));
  }
  return acc;
}

Real default_order_tolerance(Precision p) { return ldexp(Real(1L, p), -(p.bits - 40)); }

namespace {

long multiplicity_bound(const DiscreteDistribution& D) {
  long total = 0;
  const auto& at = D.atoms();
  for (std::size_t i = 0; i < at.size();) {
    std::size_t j = i;
    int rmax = 0;
    while (j < at.size() && at[j].beta == at[i].beta) rmax = std::max(rmax, at[j++].r);
    total += rmax + 1;
    i = j;
  }
  return total;
}

Real moment_scale(const DiscreteDistribution& D, int k) {
  const Precision p = D.precision();
  Real bmax(p);
  for (const auto& a : D.atoms()) bmax = max(bmax, a.beta);
  const Real base = pow(max(Real(1L, p), bmax), k);
  Real acc(p);
  for (const auto& a : D.atoms()) {
    if (a.r > k) continue;
    Real f(1L, p);
    for (int j = k - a.r + 1; j <= k; ++j) f *= static_cast<long>(j);
    acc += abs(a.a) * f;
  }
  return acc * base;
}

}  // namespace

int order_of(const DiscreteDistribution& D, const Real& tol) {
  if (D.empty()) throw std::invalid_argument("order_of: zero distribution");
  const long n = multiplicity_bound(D);
  for (int k = 0; k < n; ++k) {
    const Real s = moment_scale(D, k);
    if (abs(moment(D, k)) > tol * s) return k;
  }
  throw std::invalid_argument("order_of: distribution vanishes to tolerance");
}

DiscreteDistribution merge_vandermonde(const std::vector<Real>& r_prime, const Real& b1,
                                       const Real& b2) {
  if (b1 == b2) throw std::invalid_argument("merge_vandermonde: b1 == b2");
  for (const auto& x : r_prime) {
    if (x == b1 || x == b2) throw std::invalid_argument("merge_vandermonde: node already in R'");
  }
  std::vector<Real> r1 = r_prime, r2 = r_prime;
  r1.push_back(b1);
  r2.push_back(b2);
  DiscreteDistribution d = vandermonde(r1) - vandermonde(r2);
  return d * Complex(one_like(b1) / (b1 - b2));
}

PiecewisePolynomial<Complex> primitive(const DiscreteDistribution& D, int k) {
  if (k < 1) throw std::invalid_argument("primitive: k must be >= 1");
  for (const auto& a : D.atoms()) {
    if (a.r >= k) throw std::invalid_argument("primitive: derivative order r >= k");
  }
  PiecewisePolynomial<Complex> f;
  if (D.empty()) return f;
  const Precision p = D.precision();
  // (k−r−1)! reciprocals
  std::vector<Real> inv_fact(static_cast<std::size_t>(k));
  inv_fact[0] = Real(1L, p);
  for (int j = 1; j < k; ++j) inv_fact[static_cast<std::size_t>(j)] = inv_fact[static_cast<std::size_t>(j - 1)] / static_cast<long>(j);

  Polynomial<Complex> poly;
  const auto& at = D.atoms();
  for (std::size_t i = 0; i < at.size();) {
    const Real& beta = at[i].beta;
    if (!poly.is_zero()) poly = poly.shifted(beta);
    std::vector<Complex> add(static_cast<std::size_t>(k), Complex(p));
    while (i < at.size() && at[i].beta == beta) {
      const auto deg = static_cast<std::size_t>(k - at[i].r - 1);
      Complex c = at[i].a * inv_fact[deg];
      if (at[i].r % 2 == 1) c = -c;
      add[deg] += c;
      ++i;
    }
    poly += Polynomial<Complex>(std::move(add), beta);
    if (!f.breakpoints.empty()) f.pieces.push_back(f.tail);
    f.breakpoints.push_back(beta);
    f.tail = poly;
    if (f.tail.is_zero()) f.tail = Polynomial<Complex>({}, beta);
  }
  bool compact = false;
  try {
    compact = order_of(D, default_order_tolerance(p)) >= k;
  } catch (const std::invalid_argument&) {
    compact = true;  // numerically zero distribution
  }
  if (compact) f.tail = Polynomial<Complex>({}, f.breakpoints.back());
  return f;
}

Real functional_norm(const DiscreteDistribution& D, int k, const std::optional<Interval>& I) {
  const Precision p = D.precision();
  if (I) {
    for (const auto& a : D.atoms()) {
      if (a.beta < I->lo || a.beta > I->hi) {
        throw std::invalid_argument("functional_norm: support not inside the interval");
      }
    }
  }
  if (k == 0) {
    if (!D.nondegenerate()) throw std::invalid_argument("functional_norm: k = 0 needs order-0 atoms");
    Real acc(p);
    for (const auto& a : D.atoms()) acc += abs(a.a);
    return acc;
  }
  if (D.empty()) return Real(p);
  const Real tol = default_order_tolerance(p);
  for (int j = 0; j < k; ++j) {
    if (abs(moment(D, j)) > tol * moment_scale(D, j)) {
      throw OrderError("functional_norm: moment t^" + std::to_string(j) + " does not vanish", j);
    }
  }
  return pw_l1_norm(primitive(D, k));
}

NestedDecomposition decompose_nested(const DiscreteDistribution& D, int k,
                                     const NestedOptions& opts) {
  if (!D.nondegenerate()) throw std::invalid_argument("decompose_nested: needs order-0 atoms");
  const Precision p = D.precision();
  NestedDecomposition out;
  out.residual = Real(p);
  out.scale = D.sup_norm();
  out.C = Real(p);
  out.L = Real(p);
  out.worst_bound_ratio = Real(p);
  if (D.empty()) return out;
  if (opts.check_order) {
    const Real tol = default_order_tolerance(p);
    for (int j = 0; j < k; ++j) {
      if (abs(moment(D, j)) > tol * moment_scale(D, j)) {
        throw OrderError("decompose_nested: moment t^" + std::to_string(j) + " does not vanish", j);
      }
    }
  }
  const auto& at = D.atoms();
  const std::size_t n = at.size();
  for (const auto& a : at) out.nodes.push_back(a.beta);

  // v[j] = P_i(β_j) for the current i
  std::vector<Real> v(n, Real(1L, p));
  Real fact(1L, p);
  Real max_abs_sum(p);
  out.b.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      fact *= static_cast<long>(i);
      for (std::size_t j = i; j < n; ++j) v[j] *= at[j].beta - at[i - 1].beta;
    }
    Complex s(p);
    Real abs_sum(p);
    for (std::size_t j = i; j < n; ++j) {
      s += at[j].a * v[j];
      abs_sum += abs(at[j].a) * abs(v[j]);
    }
    out.b.push_back(s / fact);
    max_abs_sum = max(max_abs_sum, abs_sum / fact);
  }
  Real max_b(p);
  for (const auto& b : out.b) max_b = max(max_b, abs(b));
  if (!max_b.is_zero() && !max_abs_sum.is_zero()) {
    out.log2_amplification = static_cast<double>(max_abs_sum.exponent() - max_b.exponent());
  }

  if (opts.reconstruct) {
    Real worst(p);
    for (std::size_t j = 0; j < n; ++j) {
      // w = j!·Π_{p<j} 1/(β_j − β_p), then w ← w·i/(β_j − β_i)
      Real w = factorial(j, p);
      for (std::size_t q = 0; q < j; ++q) w /= at[j].beta - at[q].beta;
      Complex rec = out.b[j] * w;
      for (std::size_t i = j + 1; i < n; ++i) {
        w *= static_cast<long>(i);
        w /= at[j].beta - at[i].beta;
        rec += out.b[i] * w;
      }
      worst = max(worst, abs(rec - at[j].a));
    }
    out.residual = worst;
  }

  if (opts.check_bound && k >= 0) {
    out.C = functional_norm(D, k);
    out.L = at.back().beta - at.front().beta;
    const Real slack = ldexp(Real(1L, p), -(p.bits - 48));
    Real lpow(1L, p);
    Real ifact(1L, p);
    for (std::size_t i = static_cast<std::size_t>(k); i < n; ++i) {
      if (i > static_cast<std::size_t>(k)) {
        lpow *= out.L;
        ifact *= static_cast<long>(i - static_cast<std::size_t>(k));
      }
      const Real bound = out.C * lpow / ifact;
      const Real bi = abs(out.b[i]);
      if (!bound.is_zero()) out.worst_bound_ratio = max(out.worst_bound_ratio, bi / bound);
      if (bi > bound * (Real(1L, p) + slack) + slack * out.scale) out.bound_holds = false;
    }
  }
  return out;
}

std::vector<std::vector<Real>> lagrange_derivative_table(int m, Precision p) {
  if (m < 1) throw std::invalid_argument("lagrange_derivative_table: m must be >= 1");
  // Integer arithmetic stays exact with enough bits.
  const long exact_bits =
      64 + static_cast<long>(2.0 * m * std::log2(static_cast<double>(m) + 1.0) + 0.5);
  const Precision q{std::max(p.bits, exact_bits)};
  std::vector<std::vector<Real>> table(static_cast<std::size_t>(m),
                                       std::vector<Real>(static_cast<std::size_t>(m), Real(p)));
  for (int i = 0; i < m; ++i) {
    // coefficients of Π_{j≠i} (u − j) in powers of u
    std::vector<Real> c(1, Real(1L, q));
    Real denom(1L, q);
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      std::vector<Real> next(c.size() + 1, Real(q));
      for (std::size_t d = 0; d < c.size(); ++d) {
        next[d + 1] += c[d];
        next[d] -= c[d] * static_cast<long>(j);
      }
      c = std::move(next);
      denom *= static_cast<long>(i - j);
    }
    Real rfact(1L, q);
    for (int r = 0; r < m; ++r) {
      if (r > 0) rfact *= static_cast<long>(r);
      Real v = c[static_cast<std::size_t>(r)] * rfact / denom;
      v.set_precision(p);
      table[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = std::move(v);
    }
  }
  return table;
}

DiscreteDistribution cluster_replacement(const std::vector<Atom>& atoms_at_beta, const Real& beta,
                                         const Real& h,
                                         const std::vector<std::vector<Real>>& table) {
  const int m = static_cast<int>(table.size());
  const Precision p = std::max(beta.precision(), h.precision());
  std::vector<Complex> coef(static_cast<std::size_t>(m), Complex(p));
  for (const auto& a : atoms_at_beta) {
    if (a.r >= m) throw std::invalid_argument("cluster_replacement: table too small");
    if (a.r == 0) {
      coef[0] += a.a;
      continue;
    }
    const Real hr = pow(h, -a.r);
    for (int i = 0; i < m; ++i) {
      const Real& l = table[static_cast<std::size_t>(a.r)][static_cast<std::size_t>(i)];
      if (l.is_zero()) continue;
      coef[static_cast<std::size_t>(i)] += a.a * (l * hr);
    }
  }
  std::vector<Atom> out;
  for (int i = 0; i < m; ++i) {
    out.push_back(Atom{beta + h * static_cast<long>(i), 0, std::move(coef[static_cast<std::size_t>(i)])});
  }
  return DiscreteDistribution(std::move(out));
}

DiscreteDistribution undegenerate(const DiscreteDistribution& D, const Real& eps,
                                  const std::map<Real, Real, std::less<>>& spacing) {
  if (!(eps.sign() > 0)) throw std::invalid_argument("undegenerate: eps must be > 0");
  const auto supp = D.support();
  std::vector<Atom> out;
  const auto& at = D.atoms();
  std::map<int, std::vector<std::vector<Real>>> tables;
  for (std::size_t i = 0; i < at.size();) {
    std::size_t j = i;
    int rmax = 0;
    while (j < at.size() && at[j].beta == at[i].beta) rmax = std::max(rmax, at[j++].r);
    if (rmax == 0) {
      for (std::size_t q = i; q < j; ++q) out.push_back(at[q]);
    } else {
      const Real& beta = at[i].beta;
      Real h = eps / static_cast<long>(rmax);
      if (auto it = spacing.find(beta); it != spacing.end()) h = it->second;
      // the cluster spreads forward, so only the gap to the next point matters
      const auto next = std::upper_bound(supp.begin(), supp.end(), beta);
      if (next != supp.end() && !(h * static_cast<long>(rmax) * 2L < *next - beta)) {
        throw std::invalid_argument("undegenerate: cluster width is not below half the gap to the next point");
      }
      auto tit = tables.find(rmax + 1);
      if (tit == tables.end()) {
        tit = tables.emplace(rmax + 1, lagrange_derivative_table(rmax + 1, D.precision())).first;
      }
      const std::vector<Atom> here(at.begin() + static_cast<long>(i), at.begin() + static_cast<long>(j));
      const DiscreteDistribution rep = cluster_replacement(here, beta, h, tit->second);
      out.insert(out.end(), rep.atoms().begin(), rep.atoms().end());
    }
    i = j;
  }
  return DiscreteDistribution(std::move(out));
}

DiscreteDistribution undegenerate(const DiscreteDistribution& D, const Real& eps) {
  return undegenerate(D, eps, {});
}

}  // namespace irrsum
