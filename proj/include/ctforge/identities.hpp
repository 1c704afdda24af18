#pragma once

// The q-series identities the constant-term argument leans on, checked as
// exact (or consistently truncated) Laurent-polynomial equalities:
//
//   reflection   (x_i/x_j)_l (q x_j/x_i)_m
//                  = q^{C(m+1,2)} (-x_j/x_i)^m (x_i/x_j q^{-m})_{l+m}
//   finite       (u)_n = sum_k q^{C(k,2)} [n, k] (-u)^k
//   q-binomial   (az)_inf / (z)_inf = sum_k (a)_k / (q)_k z^k
//
// u and z are the small monomial x0/x1, so truncating at x_0-degree D cuts
// the series at u-degree D. The q-binomial theorem is checked at a = q^t;
// there (q^t z)_inf / (z)_inf telescopes to the finite product (q^t z)_{-t}
// and every z-coefficient is a polynomial in a of bounded degree, so the
// values t in [-4, 4] pin down the coefficients through degree 8.

#include <string>
#include <vector>

#include "ctforge/expansion.hpp"
#include "ctforge/qseries.hpp"

namespace ctforge {

struct IdentityCheck {
  std::string name;    // "reflection", "finite-q-binomial", "q-binomial"
  std::string params;  // e.g. "l=1 m=2 i=0 j=1"
  bool pass = false;
};

namespace detail {

inline long choose2(long k) { return k * (k - 1) / 2; }

inline LaurentPoly expand_exact(const FactoredForm& f) {
  if (f.has_denominator()) throw NotPolynomialError("expand_exact: denominator factors");
  LaurentPoly out = LaurentPoly::monomial(f.scalar(), f.monomial());
  for (const auto& fac : f.factors()) out = out * binomial(fac).pow(static_cast<unsigned>(fac.exponent));
  return out;
}

}  // namespace detail

/// (x_i/x_j)_l (q x_j/x_i)_m against its rewritten form.
inline bool reflection_identity_holds(long l, long m, VarIndex i, VarIndex j) {
  const ExpVec u = ExpVec::ratio(i, j);
  LaurentPoly lhs = detail::expand_exact(qpochhammer(u, 0, l) * qpochhammer(u.inverse(), 1, m));
  const QRat sign = (m % 2 == 0) ? QRat(1) : QRat(-1);
  FactoredForm rhs_form = qpochhammer(u, -m, l + m);
  rhs_form.multiply_scalar(sign * QRat::q_power(detail::choose2(m + 1)));
  rhs_form.multiply_monomial(u.inverse().pow(static_cast<int>(m)));
  return lhs == detail::expand_exact(rhs_form);
}

/// (u)_n against the finite sum, u = x0/x1, both cut at u-degree `degree`.
/// For n >= 0 the sum stops at k = n and the comparison is exact.
inline bool finite_qbinomial_holds(long n, long degree) {
  const ExpVec u = ExpVec::ratio(0, 1);
  const FactoredForm poch = qpochhammer(u, 0, n);
  LaurentPoly lhs = n >= 0 ? detail::expand_exact(poch) : expand_factored(poch, Truncation::in_var(0, degree));
  LaurentPoly rhs;
  const long top = n >= 0 ? n : degree;
  for (long k = 0; k <= top; ++k) {
    QRat c = QRat::q_power(detail::choose2(k)) * qbinomial(n, k);
    if (k % 2 != 0) c = -c;
    rhs += LaurentPoly::monomial(c, u.pow(static_cast<int>(k)));
  }
  return lhs == rhs;
}

/// (q^t z)_inf / (z)_inf against sum_k (q^t)_k / (q)_k z^k, z = x0/x1, cut
/// at z-degree `degree`.
inline bool qbinomial_theorem_holds(long t, long degree) {
  const ExpVec z = ExpVec::ratio(0, 1);
  LaurentPoly lhs = expand_factored(qpochhammer(z, t, -t), Truncation::in_var(0, degree));
  LaurentPoly rhs;
  for (long k = 0; k <= degree; ++k) {
    rhs += LaurentPoly::monomial(qpoch_q(t, k) / qpoch_q(1, k), z.pow(static_cast<int>(k)));
  }
  return lhs == rhs;
}

/// (z)_n (z q^n)_m = (z)_{n+m}, z = x0/x1, cut at z-degree `degree`.
inline bool pochhammer_additivity_holds(long n, long m, long degree) {
  const ExpVec z = ExpVec::ratio(0, 1);
  const Truncation t = Truncation::in_var(0, degree);
  return expand_factored(qpochhammer(z, 0, n) * qpochhammer(z, n, m), t) ==
         expand_factored(qpochhammer(z, 0, n + m), t);
}

/// The whole suite at the given truncation degree.
inline std::vector<IdentityCheck> run_identity_suite(long degree = 8) {
  std::vector<IdentityCheck> out;
  const std::pair<VarIndex, VarIndex> pairs[] = {{0, 1}, {1, 0}, {0, 2}, {2, 1}};
  for (long l = 0; l <= 3; ++l) {
    for (long m = 0; m <= 3; ++m) {
      for (auto [i, j] : pairs) {
        out.push_back({"reflection",
                       "l=" + std::to_string(l) + " m=" + std::to_string(m) + " i=" + std::to_string(i) +
                           " j=" + std::to_string(j),
                       reflection_identity_holds(l, m, i, j)});
      }
    }
  }
  for (long n = -4; n <= 4; ++n) {
    out.push_back({"finite-q-binomial", "n=" + std::to_string(n), finite_qbinomial_holds(n, degree)});
  }
  for (long t = -4; t <= 4; ++t) {
    out.push_back({"q-binomial", "a=q^" + std::to_string(t), qbinomial_theorem_holds(t, degree)});
  }
  return out;
}

}  // namespace ctforge
