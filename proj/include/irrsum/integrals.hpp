// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

#include "irrsum/polynomial.hpp"
#include "irrsum/real.hpp"

namespace irrsum {

/// Evaluation path for the monomial-exponential integrals.
enum class IntegralPath {
  automatic,   ///< series below |wh| < 1/4, otherwise the cheaper of the two
  recurrence,  ///< J_j = (h^j/j! e^{hw} − J_{j−1}) / w
  series,      ///< J_j = h^{j+1}/j! Σ_i (hw)^i / (i! (i+j+1))
};

/// Value of |w|·h below which the power series is always used.
inline constexpr double kSeriesSwitch = 0.25;

/// J_j = ∫_0^h v^j/j! e^{vw} dv for j = 0..m, at the precision of w.
/// h may be +inf when Re(w) < 0. Extra working bits are added internally
/// to cover the cancellation of the chosen path.
std::vector<Real> monomial_exp_integrals(const Real& w, const Real& h, int m,
                                         IntegralPath path = IntegralPath::automatic);
std::vector<Complex> monomial_exp_integrals(const Complex& w, const Real& h, int m,
                                            IntegralPath path = IntegralPath::automatic);

/// ∫_{t0}^{t1} q(t) e^{tw} dt in closed form. t1 may be +inf when Re(w) < 0.
Real poly_exp_integral(const Polynomial<Real>& q, const Real& w, const Real& t0, const Real& t1,
                       IntegralPath path = IntegralPath::automatic);
Complex poly_exp_integral(const Polynomial<Complex>& q, const Complex& w, const Real& t0,
                          const Real& t1, IntegralPath path = IntegralPath::automatic);

/// Points in (t0, t1) where q changes sign, ascending. Roots of even
/// multiplicity are skipped; unresolvable clusters are reported by one
/// representative point.
std::vector<Real> sign_change_points(const Polynomial<Real>& q, const Real& t0, const Real& t1);

/// ∫_{t0}^{t1} |q(t)| e^{rate·t} dt. Real pieces are split at their sign
/// changes and integrated exactly; complex pieces use adaptive
/// Gauss-Legendre quadrature of the modulus, with a closed-form majorant for
/// the far tail of an infinite interval.
Real abs_exp_integral(const Polynomial<Real>& q, const Real& rate, const Real& t0, const Real& t1);
Real abs_exp_integral(const Polynomial<Complex>& q, const Real& rate, const Real& t0,
                      const Real& t1);

/// ∫ |f| over the support of f. Throws std::domain_error when f has an
/// unbounded nonzero tail.
Real pw_l1_norm(const PiecewisePolynomial<Real>& f);
Real pw_l1_norm(const PiecewisePolynomial<Complex>& f);

/// ∫ |f(t)| e^{rate·t} dt over [lo, hi] ∩ support.
Real pw_abs_exp_integral(const PiecewisePolynomial<Real>& f, const Real& rate, const Real& lo,
                         const Real& hi);
Real pw_abs_exp_integral(const PiecewisePolynomial<Complex>& f, const Real& rate, const Real& lo,
                         const Real& hi);

}  // namespace irrsum
