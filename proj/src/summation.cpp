// SPDX-License-Identifier: MIT
#include "irrsum/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "irrsum/exponents.hpp"

namespace irrsum {

namespace {

using LocationMap = std::map<Real, Real, std::less<>>;

struct Layout {
  AdmissibleSequence seq{Real(1L, Precision{64}), {}};
  bool closed = false;
  long n_max = -1;
  Real eps;
  /// cluster spacing per degenerate cut location
  LocationMap spacing;
  /// largest derivative order per location
  std::map<Real, long, std::less<>> order;
  double guard_estimate = 0;
};

// Cut points t_1..t_{n_max+1} that are finite, as (value, m).
std::vector<std::pair<Real, long>> finite_cuts(const AdmissibleSequence& seq, long n_max) {
  std::vector<std::pair<Real, long>> cuts;
  for (long m = 1; m <= n_max + 1; ++m) {
    Real t = seq.t(m);
    if (t.is_finite()) cuts.emplace_back(std::move(t), m);
  }
  return cuts;
}

// Sequence, window count and cluster geometry. Independent of the working
// precision: the cut points are 64-bit and the spacings are powers of two,
// so every cluster node is exact above about 128 bits.
Layout plan(const Series& s, const Real& k, const SummationOptions& opts) {
  Layout lay;
  lay.seq = make_sequence(s, k);
  lay.closed = s.finite();
  if (opts.close_tail && !lay.closed) {
    const long last = opts.n_max >= 0 ? opts.n_max : max_windows(s, lay.seq);
    if (last < 0) throw std::invalid_argument("summate_by_packages: cutoff below t_1");
    lay.seq = lay.seq.truncated_after(last);
    lay.closed = true;
  }
  lay.n_max = opts.n_max >= 0 ? opts.n_max : max_windows(s, lay.seq);
  if (lay.n_max < 0) throw std::invalid_argument("summate_by_packages: cutoff below t_1");

  const Precision p = s.precision;
  const auto cuts = finite_cuts(lay.seq, lay.n_max);
  for (const auto& [t, m] : cuts) {
    auto& r = lay.order[t];
    r = std::max(r, m - 1);
  }

  // neighbours of every cut point among the cuts and the processed support
  std::vector<std::pair<Real, bool>> pts;
  const Real top = lay.seq.t(lay.n_max + 1);
  for (const auto& e : s.support.points) {
    if (!(e.value > top)) pts.emplace_back(e.value, false);
  }
  for (const auto& [t, m] : lay.order) pts.emplace_back(t, true);
  std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Real min_gap = Real::infinity(p);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!pts[i].second && !pts[i - 1].second) continue;
    const Real g = pts[i].first - pts[i - 1].first;
    if (g.sign() > 0) min_gap = min(min_gap, g);
  }

  if (opts.eps) {
    if (!(opts.eps->sign() > 0)) throw std::invalid_argument("summate_by_packages: eps_degen must be > 0");
    lay.eps = Real(*opts.eps, p);
  } else {
    lay.eps = min_gap.is_inf() ? Real(0.25, p) : min_gap / 4L;
  }

  for (const auto& [t, r] : lay.order) {
    if (r < 1) continue;
    const Real x = lay.eps / r;
    Real h = ldexp(Real(1L, p), x.exponent() - 1);
    const auto next = std::upper_bound(pts.begin(), pts.end(), t,
                                       [](const Real& v, const auto& q) { return v < q.first; });
    if (next != pts.end() && !(h * r * 2L < next->first - t)) {
      throw std::invalid_argument("summate_by_packages: eps_degen too large for the gap after cut point " +
                                  t.to_string(10));
    }
    // Lagrange derivatives of order r on spacing h scale like (2/h)^r
    lay.guard_estimate = std::max(lay.guard_estimate, static_cast<double>(r) * (1.0 - std::log2(h.to_double())));
    lay.spacing.emplace(t, std::move(h));
  }
  return lay;
}

struct Attempt {
  std::vector<PackageTerm> terms;
  double needed_bits = 0;
};

Attempt run(const SeriesSpec& spec, const Layout& lay, Precision q, Precision out) {
  const Series s = materialize(spec, q);
  const DippState st = window_distributions(s, lay.seq, lay.n_max);
  const long last = st.n_max;

  std::map<long, std::vector<std::vector<Real>>> tables;
  const auto table = [&](long m) -> const std::vector<std::vector<Real>>& {
    auto it = tables.find(m);
    if (it == tables.end()) it = tables.emplace(m, lagrange_derivative_table(static_cast<int>(m), q)).first;
    return it->second;
  };

  // U(BT_m) for m = 0..n_max+1: BT_m moved onto the first m nodes of its location's cluster
  std::vector<DiscreteDistribution> ubt(static_cast<std::size_t>(last) + 2);
  double border_bits = 0;
  for (long m = 1; m <= last + 1; ++m) {
    const Real& t = st.t[static_cast<std::size_t>(m)];
    if (t.is_inf()) continue;
    const DiscreteDistribution bt = st.border_terms(m);
    for (std::size_t j = 0; j < st.border[static_cast<std::size_t>(m)].size(); ++j) {
      const Real v = abs(st.border[static_cast<std::size_t>(m)][j]);
      const Real& mag = st.border_mag[static_cast<std::size_t>(m)][j];
      if (!v.is_zero() && !mag.is_zero()) {
        border_bits = std::max(border_bits, static_cast<double>(mag.exponent() - v.exponent()));
      }
    }
    if (m == 1) {
      ubt[static_cast<std::size_t>(m)] = bt;
      continue;
    }
    const Real& h = lay.spacing.find(t)->second;
    ubt[static_cast<std::size_t>(m)] = cluster_replacement(bt.atoms(), t, Real(h, q), table(m));
  }

  Attempt at;
  const std::size_t N = s.coefficients.size();
  for (long n = 0; n <= last; ++n) {
    const std::size_t lo = n == 0 ? 0 : st.atoms_upto[static_cast<std::size_t>(n)];
    const bool infinite = st.t[static_cast<std::size_t>(n) + 1].is_inf();
    const std::size_t hi = infinite ? N : st.atoms_upto[static_cast<std::size_t>(n) + 1];
    std::vector<Atom> atoms;
    for (std::size_t i = lo; i < hi; ++i) atoms.push_back(Atom{s.support.points[i].value, 0, s.coefficients[i]});
    DiscreteDistribution D(std::move(atoms));
    D += ubt[static_cast<std::size_t>(n) + 1];
    D -= ubt[static_cast<std::size_t>(n)];
    if (D.empty()) continue;

    // the open-ended last window of a closed decomposition has order 0 only
    const int order = infinite ? 0 : static_cast<int>(n);
    NestedOptions nopts;
    nopts.reconstruct = false;
    nopts.check_bound = false;
    NestedDecomposition nd = decompose_nested(D, order, nopts);
    at.needed_bits = std::max(at.needed_bits, nd.log2_amplification + border_bits +
                                                  std::log2(static_cast<double>(D.size()) + 1.0) + 16.0);
    for (std::size_t i = static_cast<std::size_t>(order); i < nd.b.size(); ++i) {
      Complex b = nd.b[i];
      b.set_precision(out);
      if (b.is_zero()) continue;
      PackageTerm term;
      term.nodes.reserve(i + 1);
      for (std::size_t j = 0; j <= i; ++j) term.nodes.emplace_back(nd.nodes[j], out);
      term.b = std::move(b);
      term.window = n;
      term.index = static_cast<long>(i);
      at.terms.push_back(std::move(term));
    }
  }
  return at;
}

}  // namespace

PackageDecomposition summate_by_packages(const SeriesSpec& spec, const Real& a, const Real& k,
                                         const SummationOptions& opts, Precision p) {
  if (!(k.sign() > 0)) throw std::invalid_argument("summate_by_packages: k must be > 0");
  const Series base = materialize(spec, p);
  PackageDecomposition dec;
  dec.precision = p;
  dec.working = p;
  dec.a = Real(a, p);
  dec.k = Real(k, p);
  dec.integer_support = base.integer_support();
  dec.mu = Real(p);
  dec.nu = Real(p);
  dec.c = Real(p);
  dec.eps = Real(p);
  if (base.coefficients.empty()) {
    dec.closed = true;
  } else {
    const Layout lay = plan(base, k, opts);
    dec.closed = lay.closed;
    dec.eps = lay.eps;
    dec.windows = lay.n_max + 1;
    Precision q{std::min(kMaxPrecisionBits, p.bits + 32 + static_cast<long>(std::ceil(lay.guard_estimate)))};
    for (;;) {
      Attempt at = run(spec, lay, q, p);
      const double spare = static_cast<double>(q.bits - p.bits);
      if (at.needed_bits <= spare || q.bits >= kMaxPrecisionBits) {
        if (at.needed_bits > spare) {
          dec.note = "cancellation estimate exceeds the working precision at the cap";
        }
        dec.terms = std::move(at.terms);
        dec.working = q;
        break;
      }
      const long bits = std::max(q.bits + 64, p.bits + static_cast<long>(std::ceil(at.needed_bits)) + 16);
      q = Precision{std::min(kMaxPrecisionBits, bits)};
    }
    const DensityParams d = density_params(base.support, Real(1L, p));
    dec.mu = d.mu;
    dec.nu = d.nu;
  }

  dec.k_prime = dec.mu + dec.k * 2L;
  dec.c_bound = (dec.mu / dec.k + 2L) * Real(3.5, p) + dec.nu;
  if (a >= Real(1L, p)) {
    dec.r = Real(0.5, p);
    dec.r_clipped = true;
  } else {
    dec.r = exp(dec.a - 1L);
  }
  Real c = Real::infinity(p, -1);
  Real acc(p);
  const Real log_r = log(dec.r);
  for (const auto& t : dec.terms) {
    const long N = static_cast<long>(t.nodes.size()) - 1;
    c = max(c, Real(N, p) - dec.k_prime * t.nodes.front());
    acc += abs(t.b) * exp(log_r * t.nodes.front());
    dec.tail.push_back(acc);
  }
  dec.c = dec.terms.empty() ? Real(p) : c;
  return dec;
}

DecompositionValue eval_decomposition(const PackageDecomposition& dec, const Complex& w,
                                      std::optional<long> max_window) {
  const Precision p = std::max(dec.precision, w.precision());
  const Complex wp(Real(w.re, p), Real(w.im, p));
  DecompositionValue out{Complex(p), Real(p)};
  const bool bounded = wp.re.sign() < 0;
  long last = -1;
  for (const auto& t : dec.terms) last = std::max(last, t.window);
  const long cut = max_window.value_or(last);
  // without an explicit cut the last window of an open decomposition stands in for the rest
  const long tail_from = max_window ? cut + 1 : (dec.closed ? last + 1 : last);

  for (std::size_t i = 0; i < dec.terms.size();) {
    std::size_t j = i;
    const long n = dec.terms[i].window;
    const std::vector<Real>* longest = &dec.terms[i].nodes;
    while (j < dec.terms.size() && dec.terms[j].window == n) {
      if (dec.terms[j].nodes.size() > longest->size()) longest = &dec.terms[j].nodes;
      ++j;
    }
    if (n >= tail_from) {
      if (!bounded) {
        out.package_tail = Real::infinity(p);
      } else if (out.package_tail.is_finite()) {
        for (std::size_t q = i; q < j; ++q) {
          out.package_tail += abs(dec.terms[q].b) * package_bound(dec.terms[q].nodes, wp);
        }
      }
    }
    if (n <= cut) {
      const auto v = eval_package_prefixes(*longest, wp);
      for (std::size_t q = i; q < j; ++q) {
        const auto& nodes = dec.terms[q].nodes;
        const std::size_t m = nodes.size();
        const bool prefix = m <= longest->size() && nodes.front() == longest->front() &&
                            nodes.back() == (*longest)[m - 1];
        out.value += dec.terms[q].b * (prefix ? v[m - 1] : eval_package(nodes, wp));
      }
    }
    i = j;
  }
  return out;
}

CompareReport compare_methods(const SeriesSpec& spec, const Complex& w, const std::vector<long>& precisions,
                              const Real& a, const Real& k) {
  if (!(w.re.sign() < 0)) throw std::invalid_argument("compare_methods: needs Re(w) < 0");
  constexpr Precision kOracle{4096};
  CompareReport rep;
  rep.oracle = naive_sum(spec, Complex(Real(w.re, kOracle), Real(w.im, kOracle)), kOracle);
  const Real scale = abs(rep.oracle);
  const auto add = [&](std::string method, long bits, Complex v, std::string note) {
    MethodRow row;
    row.method = std::move(method);
    row.bits = bits;
    Real err = abs(Complex(Real(v.re, kOracle), Real(v.im, kOracle)) - rep.oracle);
    if (!scale.is_zero()) err /= scale;
    err.set_precision(Precision{64});
    row.rel_error = err;
    row.digits = err.is_zero() ? std::numeric_limits<double>::infinity() : -std::log10(err.to_double());
    row.value = std::move(v);
    row.note = std::move(note);
    rep.rows.push_back(std::move(row));
  };
  for (const long bits : precisions) {
    const Precision p{bits};
    if (bits < 2 || bits > kMaxPrecisionBits) throw std::invalid_argument("compare_methods: precision out of range");
    const Complex wp(Real(w.re, p), Real(w.im, p));
    add("naive", bits, naive_sum(spec, wp, p), "");
    const Real tol = max(ldexp(Real(1L, p), -(bits - 8)), Real(1e-30, p));
    const DippResult dr = dipp_sum(spec, k, wp, tol, -1, p);
    add("dipp", bits, dr.value, dr.converged ? "" : "not converged");
    const PackageDecomposition dec = summate_by_packages(spec, a, k, {}, p);
    add("packages", bits, eval_decomposition(dec, wp).value, dec.note);
  }
  return rep;
}

bool periodicity_check(const PackageDecomposition& dec, const Complex& w, const Real& tol) {
  if (!dec.integer_support) throw std::invalid_argument("periodicity_check: support is not contained in the integers");
  const Precision p = std::max(dec.precision, w.precision());
  const Complex w1(Real(w.re, p), Real(w.im, p));
  const Complex w2(Real(w.re, p), Real(w.im, p) + Real::pi(p) * 2L);
  const Complex d = eval_decomposition(dec, w1).value - eval_decomposition(dec, w2).value;
  return abs(d) <= tol;
}

}  // namespace irrsum
