// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irrsum/polynomial.hpp"
#include "irrsum/real.hpp"

namespace irrsum {

/// Raised when a distribution does not have the order an operation needs.
class OrderError : public std::runtime_error {
 public:
  OrderError(const std::string& what, int failing_moment)
      : std::runtime_error(what), moment(failing_moment) {}
  int moment;
};

/// One term (−1)^r a δ_β^{(r)}. With this sign convention the pairing with
/// e^{tw} is a·w^r·e^{βw}.
struct Atom {
  Real beta;
  int r = 0;
  Complex a;
};

/// Finite sum of diracs and dirac derivatives, sorted by (β, r) with no
/// repeated (β, r).
class DiscreteDistribution {
 public:
  DiscreteDistribution() = default;
  /// Sorts and merges atoms sharing (β, r); zero coefficients are kept.
  explicit DiscreteDistribution(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }
  int max_order() const;
  /// Distinct support points, ascending.
  std::vector<Real> support() const;
  bool nondegenerate() const { return max_order() == 0; }
  bool is_real() const;
  Precision precision() const;
  /// max |a|
  Real sup_norm() const;

  /// ⟨D, e^{tw}⟩ = Σ a w^r e^{βw}.
  Complex pair_exp(const Complex& w) const;

  DiscreteDistribution& operator+=(const DiscreteDistribution& o);
  DiscreteDistribution& operator-=(const DiscreteDistribution& o);
  DiscreteDistribution& operator*=(const Complex& s);
  friend DiscreteDistribution operator+(DiscreteDistribution a, const DiscreteDistribution& b) {
    return a += b;
  }
  friend DiscreteDistribution operator-(DiscreteDistribution a, const DiscreteDistribution& b) {
    return a -= b;
  }
  friend DiscreteDistribution operator*(DiscreteDistribution a, const Complex& s) { return a *= s; }

 private:
  std::vector<Atom> atoms_;
};

inline Real one_like(const Real& x) { return Real(1L, x.precision()); }
template <class F>
F one_like(const F&) {
  return F(1);
}

/// Product-formula weights a_i = Π_{p≠i} 1/(β_i − β_p) over any field.
template <class F>
std::vector<F> vandermonde_weights(const std::vector<F>& nodes) {
  std::vector<F> a;
  a.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    F prod = one_like(nodes[i]);
    for (std::size_t p = 0; p < nodes.size(); ++p) {
      if (p == i) continue;
      if (nodes[i] == nodes[p]) throw std::invalid_argument("vandermonde: repeated node");
      prod *= nodes[i] - nodes[p];
    }
    a.push_back(one_like(nodes[i]) / prod);
  }
  return a;
}

/// Complete homogeneous symmetric polynomials h_0..h_m of the nodes.
template <class F>
std::vector<F> complete_homogeneous(const std::vector<F>& nodes, int m) {
  std::vector<F> h(static_cast<std::size_t>(m) + 1, nodes.empty() ? F() : nodes[0] - nodes[0]);
  if (nodes.empty()) return h;
  h[0] = one_like(nodes[0]);
  // h_j(x_0..x_i) = h_j(x_0..x_{i−1}) + x_i h_{j−1}(x_0..x_i)
  for (const auto& x : nodes) {
    for (std::size_t j = 1; j < h.size(); ++j) {
      F t = x * h[j - 1];
      h[j] += t;
    }
  }
  return h;
}

/// Validates that nodes are distinct, sorted and nonnegative.
void check_nodes(const std::vector<Real>& nodes);

DiscreteDistribution vandermonde(const std::vector<Real>& nodes);
DiscreteDistribution normalized_vandermonde(const std::vector<Real>& nodes);

/// D(t^k) = Σ a·k!/(k−r)!·β^{k−r}.
Complex moment(const DiscreteDistribution& D, int k);

/// Largest k with |D(t^p)| ≤ tol·Σ|a|·max(1, β_max)^p for all p < k.
int order_of(const DiscreteDistribution& D, const Real& tol);
/// Tolerance used when operations check orders internally.
Real default_order_tolerance(Precision p);

DiscreteDistribution merge_vandermonde(const std::vector<Real>& r_prime, const Real& b1,
                                       const Real& b2);

/// I^kD as a piecewise polynomial. When the order of D is at least k the
/// tail beyond the support is set to exactly zero.
PiecewisePolynomial<Complex> primitive(const DiscreteDistribution& D, int k);

struct Interval {
  Real lo;
  Real hi;
};

/// N_k^fun(D); k = 0 gives the total variation Σ|a|.
Real functional_norm(const DiscreteDistribution& D, int k,
                     const std::optional<Interval>& I = std::nullopt);

struct NestedOptions {
  bool check_order = true;
  bool reconstruct = true;
  bool check_bound = true;
};

/// D = Σ_i b_i Δ_{{β_0..β_i}}.
struct NestedDecomposition {
  std::vector<Real> nodes;
  std::vector<Complex> b;
  /// max_j |Σ b_i Δ_i − D|_j (when reconstructed)
  Real residual;
  /// max_j |a_j|
  Real scale;
  /// C = N_k^fun(D) and L = β_n − β_0 (when the bound was checked)
  Real C;
  Real L;
  bool bound_holds = true;
  /// largest |b_i| / (C L^{i−k}/(i−k)!) over i ≥ k
  Real worst_bound_ratio;
  /// log2 of the cancellation in D(P_i) relative to max|b|
  double log2_amplification = 0;
};

NestedDecomposition decompose_nested(const DiscreteDistribution& D, int k,
                                     const NestedOptions& opts = {});

enum class NormMode { exact_order, geq_order };

/// Combinatorial norm as a linear program over subsets of the support.
Real combinatorial_norm_lp(const DiscreteDistribution& D, int k, const Real& rho, NormMode mode);

/// Table L[r][i] = d^r/du^r ℓ_i(0) for the Lagrange basis on nodes 0..m−1.
std::vector<std::vector<Real>> lagrange_derivative_table(int m, Precision p);

/// Replaces every location carrying derivative atoms by a forward cluster
/// β, β+h, …, β+r_max·h with h = eps/r_max. Each atom (β, r, a) becomes
/// a·(derivative of order r at β of the interpolant on the cluster), which
/// is a·Δ_cluster when r = r_max and keeps moments 0..r_max exact.
/// Throws when a cluster is not below half the gap to the next point.
DiscreteDistribution undegenerate(const DiscreteDistribution& D, const Real& eps);

/// Same replacement with an explicit spacing per location; locations not
/// in the map use eps/r_max.
DiscreteDistribution undegenerate(const DiscreteDistribution& D, const Real& eps,
                                  const std::map<Real, Real, std::less<>>& spacing);

/// Replacement of the derivative atoms at one location using the first
/// (r_max+1) nodes β + i·h.
DiscreteDistribution cluster_replacement(const std::vector<Atom>& atoms_at_beta, const Real& beta,
                                         const Real& h,
                                         const std::vector<std::vector<Real>>& table);

}  // namespace irrsum
