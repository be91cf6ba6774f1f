// SPDX-License-Identifier: MIT
#include "irrsum/dipp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "irrsum/integrals.hpp"

namespace irrsum {

namespace {

constexpr Precision kSequencePrecision{64};

const std::vector<Complex>& coefficients(const DippState& s) { return s.series.coefficients; }
const Real& beta_of(const DippState& s, std::size_t i) { return s.series.support.points[i].value; }

// First atom index of window n and one past its last atom.
std::pair<std::size_t, std::size_t> window_atoms(const DippState& s, long n) {
  const std::size_t lo = n == 0 ? 0 : s.atoms_upto[static_cast<std::size_t>(n)];
  const std::size_t hi = s.t[static_cast<std::size_t>(n) + 1].is_inf()
                             ? s.series.coefficients.size()
                             : s.atoms_upto[static_cast<std::size_t>(n) + 1];
  return {lo, hi};
}

// (I^kD)(t_m), zero when t_m = +inf or k > m.
Complex border_value(const DippState& s, long m, long k) {
  const auto& b = s.border[static_cast<std::size_t>(m)];
  if (k < 1 || static_cast<std::size_t>(k) > b.size()) return Complex(s.precision);
  return b[static_cast<std::size_t>(k) - 1];
}

Real border_magnitude(const DippState& s, long m, long k) {
  const auto& b = s.border_mag[static_cast<std::size_t>(m)];
  if (k < 1 || static_cast<std::size_t>(k) > b.size()) return Real(s.precision);
  return b[static_cast<std::size_t>(k) - 1];
}

Complex widened(const Complex& w, Precision p) {
  return Complex(Real(w.re, std::max(p, w.re.precision())), Real(w.im, std::max(p, w.im.precision())));
}

// ∫_{t_n}^{t_{n+1}} |I^nD| e^{rate·t} dt, the direct Σ|a|e^{rate β} for n = 0.
Real window_abs_integral(const DippState& s, long n, const Real& rate) {
  const Precision p = s.precision;
  if (n == 0) {
    const auto [lo, hi] = window_atoms(s, 0);
    Real acc(p);
    for (std::size_t i = lo; i < hi; ++i) acc += abs(coefficients(s)[i]) * exp(rate * beta_of(s, i));
    return acc;
  }
  const Real& t1 = s.t[static_cast<std::size_t>(n) + 1];
  if (t1.is_inf() && !(rate.sign() < 0)) return Real::infinity(p);
  return pw_abs_exp_integral(window_primitive(s, n), rate, s.t[static_cast<std::size_t>(n)], t1);
}

}  // namespace

DiscreteDistribution DippState::border_terms(long m) const {
  std::vector<Atom> atoms;
  const auto& b = border[static_cast<std::size_t>(m)];
  for (std::size_t k = 1; k <= b.size(); ++k) {
    atoms.push_back(Atom{t[static_cast<std::size_t>(m)], static_cast<int>(k) - 1, k % 2 == 0 ? b[k - 1] : -b[k - 1]});
  }
  return DiscreteDistribution(std::move(atoms));
}

AdmissibleSequence make_sequence(const Series& s, const Real& k) {
  AdmissibleSequence seq = admissible_sequence(Real(k, kSequencePrecision), s.support);
  if (!s.finite()) return seq;
  const Real top = s.max_point();
  long L = 1;
  while (!(seq.t(L) > top)) ++L;
  return seq.truncated_after(L - 1);
}

long max_windows(const Series& s, const AdmissibleSequence& seq) {
  // a truncated sequence closes with [t_last, ∞), which holds every remaining atom
  if (seq.last_finite()) return *seq.last_finite();
  return seq.max_window(s.support.cutoff);
}

DippState window_distributions(const Series& s, const AdmissibleSequence& seq, long n_max) {
  const long allowed = max_windows(s, seq);
  if (n_max < 0) n_max = allowed;
  if (n_max > allowed) {
    throw std::invalid_argument("window_distributions: t_" + std::to_string(n_max + 1) +
                                " exceeds the support cutoff");
  }
  if (n_max < 0) throw std::invalid_argument("window_distributions: cutoff below t_1");
  DippState st;
  st.series = s;
  st.seq = seq;
  st.n_max = n_max;
  st.precision = s.precision;
  const Precision p = s.precision;
  const std::size_t N = s.coefficients.size();
  std::vector<Real> beta;
  std::vector<Real> mag;
  beta.reserve(N);
  for (std::size_t i = 0; i < N; ++i) {
    beta.push_back(s.support.points[i].value);
    mag.push_back(abs(s.coefficients[i]));
  }
  for (long m = 0; m <= n_max + 1; ++m) {
    Real tm(seq.t(m), std::max(p, seq.t(m).precision()));
    if (m >= 1 && tm.is_finite() && s.support.contains(tm)) {
      throw std::invalid_argument("window_distributions: cut point t_" + std::to_string(m) +
                                  " lies on the support");
    }
    st.t.push_back(std::move(tm));
  }
  st.border.resize(st.t.size());
  st.border_mag.resize(st.t.size());
  st.atoms_upto.resize(st.t.size());
  for (std::size_t m = 0; m < st.t.size(); ++m) {
    const Real& tm = st.t[m];
    st.atoms_upto[m] = tm.is_inf() ? N
                                   : static_cast<std::size_t>(std::upper_bound(beta.begin(), beta.end(), tm) - beta.begin());
    if (m == 0 || tm.is_inf()) continue;
    std::vector<Complex> B(m, Complex(p));
    std::vector<Real> M(m, Real(p));
    for (std::size_t i = 0; i < st.atoms_upto[m]; ++i) {
      const Real x = tm - beta[i];
      Real f(1L, p);  // x^{k−1}/(k−1)!
      for (std::size_t k = 1; k <= m; ++k) {
        if (k > 1) {
          f *= x;
          f /= static_cast<long>(k - 1);
        }
        B[k - 1] += s.coefficients[i] * f;
        M[k - 1] += mag[i] * f;
      }
    }
    st.border[m] = std::move(B);
    st.border_mag[m] = std::move(M);
  }
  for (long n = 0; n <= n_max; ++n) {
    const auto [lo, hi] = window_atoms(st, n);
    std::vector<Atom> atoms;
    for (std::size_t i = lo; i < hi; ++i) atoms.push_back(Atom{beta[i], 0, s.coefficients[i]});
    DiscreteDistribution D(std::move(atoms));
    D += st.border_terms(n + 1);
    D -= st.border_terms(n);
    st.windows.push_back(DippWindow{n, st.t[static_cast<std::size_t>(n)], st.t[static_cast<std::size_t>(n) + 1], std::move(D)});
  }
  return st;
}

PiecewisePolynomial<Complex> window_primitive(const DippState& s, long n) {
  if (n < 1 || n > s.n_max) throw std::out_of_range("window_primitive: window index");
  const Precision p = s.precision;
  const Real& tn = s.t[static_cast<std::size_t>(n)];
  std::vector<Complex> c;
  Real fact(1L, p);
  for (long j = 0; j < n; ++j) {
    if (j > 0) fact *= j;
    c.push_back(border_value(s, n, n - j) / fact);
  }
  const Real inv_last = Real(1L, p) / factorial(static_cast<unsigned long>(n - 1), p);
  PiecewisePolynomial<Complex> f;
  f.breakpoints.push_back(tn);
  Polynomial<Complex> poly(std::move(c), tn);
  const auto [lo, hi] = window_atoms(s, n);
  for (std::size_t i = lo; i < hi; ++i) {
    const Real& b = beta_of(s, i);
    f.pieces.push_back(poly);
    poly = poly.is_zero() ? Polynomial<Complex>({}, b) : poly.shifted(b);
    std::vector<Complex> add(static_cast<std::size_t>(n), Complex(p));
    add.back() = coefficients(s)[i] * inv_last;
    poly += Polynomial<Complex>(std::move(add), b);
    f.breakpoints.push_back(b);
  }
  f.tail = poly;
  return f;
}

Complex dipp_term(const DippState& s, long n, const Complex& w_in, Real* magnitude) {
  if (n < 0 || n > s.n_max) throw std::out_of_range("dipp_term: window index");
  const Precision p = std::max(s.precision, w_in.precision());
  const Complex w = widened(w_in, p);
  const Real& tn = s.t[static_cast<std::size_t>(n)];
  const Real& tn1 = s.t[static_cast<std::size_t>(n) + 1];
  if (tn1.is_inf() && !(w.re.sign() < 0)) {
    throw std::domain_error("dipp_term: infinite last window needs Re(w) < 0");
  }
  const Real wabs = abs(w);
  const auto [lo, hi] = window_atoms(s, n);
  Complex value(p);
  Real mag(p);
  if (n == 0) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Complex e = exp(w * beta_of(s, i));
      value += coefficients(s)[i] * e;
      mag += abs(coefficients(s)[i]) * exp(w.re * beta_of(s, i));
    }
    if (!tn1.is_inf()) {
      value -= border_value(s, 1, 1) * exp(w * tn1);
      mag += border_magnitude(s, 1, 1) * exp(w.re * tn1);
    }
    if (magnitude) *magnitude = mag;
    return value;
  }
  // (−1)^n w^n [ e^{t_n w} Σ_j I^{n−j}D(t_n) J_j(h) + Σ_window a e^{βw} J_{n−1}(t_{n+1} − β) ]
  const Real h = tn1.is_inf() ? Real::infinity(p) : tn1 - tn;
  Complex inner(p);
  Real inner_mag(p);
  if (!h.is_zero()) {
    const auto J = monomial_exp_integrals(w, h, static_cast<int>(n - 1));
    Complex acc(p);
    Real acc_mag(p);
    for (long j = 0; j < n; ++j) {
      acc += border_value(s, n, n - j) * J[static_cast<std::size_t>(j)];
      acc_mag += border_magnitude(s, n, n - j) * abs(J[static_cast<std::size_t>(j)]);
    }
    inner += acc * exp(w * tn);
    inner_mag += acc_mag * exp(w.re * tn);
  }
  for (std::size_t i = lo; i < hi; ++i) {
    const Real& b = beta_of(s, i);
    const Real hb = tn1.is_inf() ? Real::infinity(p) : tn1 - b;
    const auto J = monomial_exp_integrals(w, hb, static_cast<int>(n - 1));
    inner += coefficients(s)[i] * exp(w * b) * J.back();
    inner_mag += abs(coefficients(s)[i]) * exp(w.re * b) * abs(J.back());
  }
  const Complex wn = pow(w, n);
  const Real wn_abs = pow(wabs, n);
  value = inner * wn;
  if (n % 2 == 1) value = -value;
  mag = inner_mag * wn_abs;
  if (!tn1.is_inf()) {
    Complex border = border_value(s, n + 1, n + 1) * wn * exp(w * tn1);
    if (n % 2 == 0) border = -border;
    value += border;
    mag += border_magnitude(s, n + 1, n + 1) * wn_abs * exp(w.re * tn1);
  }
  if (magnitude) *magnitude = mag;
  return value;
}

Real dipp_diagnostic(const DippState& s, long n, const Complex& w) {
  const Precision p = std::max(s.precision, w.precision());
  const Real rate(w.re, p);
  const Real wn_abs = pow(abs(w), n);
  Real d = window_abs_integral(s, n, rate) * wn_abs;
  const Real& tn1 = s.t[static_cast<std::size_t>(n) + 1];
  if (!tn1.is_inf()) d += abs(border_value(s, n + 1, n + 1)) * wn_abs * exp(rate * tn1);
  return d;
}

Real dipp_bound_estimate(const DippState& s, const Real& a) {
  const Precision p = std::max(s.precision, a.precision());
  Real acc(p);
  for (long n = 0; n <= s.n_max; ++n) {
    acc += window_abs_integral(s, n, a);
    if (n >= 1) acc += abs(border_value(s, n, n)) * exp(a * s.t[static_cast<std::size_t>(n)]);
    if (acc.is_inf()) break;
  }
  return acc;
}

bool dipp_regime(const Real& k, const Complex& w) {
  const Precision p = std::max(k.precision(), w.precision());
  const Real z = abs(w) / Real(k, p);
  if (!(z > Real(1L, p))) return false;
  return log(z) + 1L + w.re / Real(k, p) < Real(p);
}

DippResult dipp_sum(const DippState& s, const Complex& w_in, const Real& tol) {
  if (w_in.is_zero()) throw std::invalid_argument("dipp_sum: w must be nonzero");
  const Precision p = std::max(s.precision, w_in.precision());
  const Complex w = widened(w_in, p);
  DippResult r;
  auto& dg = r.diagnostics;
  r.value = Complex(p);
  dg.diagnostic_sum = Real(p);
  dg.bound_estimate = Real(p);
  dg.rounding = Real(p);
  dg.tail = Real::infinity(p);
  dg.working = p;
  dg.truncation = s.series.support.cutoff;
  const Real rate(w.re, p);
  const Real wabs = abs(w);
  Real mag_sum(p);
  for (long n = 0; n <= s.n_max; ++n) {
    Real mag;
    Complex term = dipp_term(s, n, w, &mag);
    const Real A = window_abs_integral(s, n, rate);
    const Real wn_abs = pow(wabs, n);
    Real d = A * wn_abs;
    const Real& tn1 = s.t[static_cast<std::size_t>(n) + 1];
    if (!tn1.is_inf()) d += abs(border_value(s, n + 1, n + 1)) * wn_abs * exp(rate * tn1);
    dg.bound_estimate += A;
    if (n >= 1) dg.bound_estimate += abs(border_value(s, n, n)) * exp(rate * s.t[static_cast<std::size_t>(n)]);
    r.value += term;
    mag_sum += mag;
    dg.diagnostic_sum += d;
    dg.terms.push_back(std::move(term));
    dg.diagnostic.push_back(std::move(d));
    dg.windows = n + 1;

    const auto& D = dg.diagnostic;
    if (tn1.is_inf()) {
      dg.tail = Real(p);
    } else if (n >= 2) {
      const Real& d0 = D[D.size() - 3];
      const Real& d1 = D[D.size() - 2];
      const Real& d2 = D.back();
      Real q(p);
      if (!d1.is_zero()) q = max(q, d2 / d1);
      if (!d0.is_zero()) q = max(q, d1 / d0);
      if (d2.is_zero()) {
        dg.tail = Real(p);
      } else if (q < 1) {
        dg.tail = d2 * q / (1L - q);
      } else {
        dg.tail = Real::infinity(p);
      }
    }
    const Real target = tol * abs(r.value);
    if (n >= 5 && dg.tail <= target) break;
  }
  dg.rounding = ldexp(mag_sum, -(p.bits - 3));
  r.converged = dg.tail <= tol * abs(r.value);
  if (!s.last_window_infinite() && !dipp_regime(s.seq.k(), w)) {
    // the diagnostic ratios can look geometric long before the sum settles
    r.converged = false;
    dg.note = "outside the convergence regime |w|/k > 1, (|w|/k)·e^{1 + Re(w)/k} < 1";
  }
  if (!s.series.support.cutoff.is_inf()) {
    dg.note += dg.note.empty() ? "" : "; ";
    dg.note += "support truncation at T = " + s.series.support.cutoff.to_string(12);
  }
  if (!r.converged) {
    dg.note += dg.note.empty() ? "" : "; ";
    dg.note += "tail estimate above tolerance after " + std::to_string(dg.windows) + " windows";
  }
  return r;
}

DippResult dipp_sum(const SeriesSpec& spec, const Real& k, const Complex& w, const Real& tol,
                    long n_max, Precision p) {
  Precision pw = p;
  std::optional<AdmissibleSequence> seq;
  for (;;) {
    const Series s = materialize(spec, pw);
    if (!seq) seq = make_sequence(s, k);
    const DippState st = window_distributions(s, *seq, n_max);
    DippResult r = dipp_sum(st, Complex(Real(w.re, pw), Real(w.im, pw)), tol);
    const Real scale = r.value.is_zero() ? Real(1L, pw) : abs(r.value);
    const Real allowed = tol * scale / 16L;
    const bool ok = r.diagnostics.rounding <= allowed;
    if (ok || pw.bits >= kMaxPrecisionBits) {
      if (!ok) {
        r.converged = false;
        r.diagnostics.note += (r.diagnostics.note.empty() ? "" : "; ");
        r.diagnostics.note += "rounding estimate above tolerance at the precision cap";
      }
      r.value.set_precision(p);
      return r;
    }
    const double need = std::log2((r.diagnostics.rounding / allowed).to_double()) + 16.0;
    const long bits = std::max(2 * pw.bits, pw.bits + static_cast<long>(std::ceil(need)));
    pw = Precision{std::min(kMaxPrecisionBits, bits)};
  }
}

}  // namespace irrsum
