#pragma once

// Constant-term operators.
//
// Brute force works on expanded Laurent polynomials. The partial-fraction
// route works on a factored rational function R of x_k that is proper
// (negative degree in x_k) with simple poles alpha_i = x_t q^s:
//
//   R = p(x_k) / (x_k^d prod_i (1 - x_k/alpha_i))
//   CT_{x_k} R = sum over small x_k/alpha_j of (R (1 - x_k/alpha_j))|_{x_k = alpha_j}
//
// The polynomial part p_0(x_k)/x_k^d of the decomposition has no constant
// term and is never built.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ctforge/expansion.hpp"
#include "ctforge/qseries.hpp"

namespace ctforge {

/// Sum of the terms of f free of x_v.
inline LaurentPoly ct_var_bruteforce(const LaurentPoly& f, VarIndex v) {
  return f.filtered([v](const ExpVec& m) { return m.exponent(v) == 0; });
}

/// Constant term in every variable of a Laurent polynomial.
inline QRat ct_all_bruteforce(const LaurentPoly& f) { return f.constant(); }

/// Constant term in every variable of a product with no denominator factors.
inline QRat ct_all_bruteforce(const FactoredForm& f, ExpansionStats* stats = nullptr) {
  if (f.has_denominator()) {
    throw NotPolynomialError("ct_all_bruteforce: factored form has denominator factors");
  }
  if (f.is_zero()) return {};
  std::vector<LaurentPoly> pieces;
  pieces.reserve(f.factors().size() + 1);
  pieces.push_back(LaurentPoly::monomial(f.scalar(), f.monomial()));
  for (const auto& fac : f.factors()) {
    pieces.push_back(detail::binomial(fac).pow(static_cast<unsigned>(fac.exponent)));
  }
  return constant_term_of_product(pieces, stats);
}

/// The monomial x_var q^qexp.
struct Alpha {
  VarIndex var;
  long qexp;
  friend bool operator==(const Alpha&, const Alpha&) = default;
  friend auto operator<=>(const Alpha&, const Alpha&) = default;
};

/// p(x_k) / (x_k^d prod (1 - x_k/alpha_i)) held as the cofactor
/// p(x_k)/x_k^d (a factored form with no denominator in x_k) and the poles.
class ProperRat {
 public:
  /// Validates the shape, distinctness of the poles and properness.
  ProperRat(VarIndex var, FactoredForm cofactor, std::vector<Alpha> poles)
      : var_(var), cofactor_(std::move(cofactor)), poles_(std::move(poles)) {
    for (const auto& fac : cofactor_.factors()) {
      if (fac.is_denominator() && fac.involves(var_)) {
        throw ShapeError("ProperRat: cofactor has a denominator factor in x" + std::to_string(var_));
      }
    }
    for (const auto& a : poles_) {
      if (a.var == var_) throw ShapeError("ProperRat: pole in the extraction variable");
    }
    auto sorted = poles_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw DistinctPolesError("ProperRat: repeated pole");
    }
    degree_ = checked_sub(degree_in_var(cofactor_, var_), static_cast<long>(poles_.size()));
    if (degree_ >= 0) {
      throw ProperError("ProperRat: degree " + std::to_string(degree_) + " in x" +
                            std::to_string(var_) + " is not negative",
                        degree_);
    }
  }

  /// Split a factored form into cofactor and poles with respect to x_k.
  ///   (1 - q^s x_k/x_t)^{-1}  ->  pole x_t q^{-s}
  ///   (1 - q^s x_t/x_k)^{-1}  =   -(x_k/(q^s x_t)) / (1 - x_k/(x_t q^s))  ->  pole x_t q^s
  static ProperRat from_factored(const FactoredForm& f, VarIndex k) {
    FactoredForm cofactor(f.scalar(), f.monomial(), {});
    std::vector<Alpha> poles;
    for (const auto& fac : f.factors()) {
      if (!fac.is_denominator() || !fac.involves(k)) {
        cofactor.multiply_factor(fac);
        continue;
      }
      if (fac.exponent != -1) {
        throw DistinctPolesError("ProperRat: repeated pole (denominator factor with power " +
                                 std::to_string(-fac.exponent) + ")");
      }
      if (fac.numvar == k) {
        poles.push_back(Alpha{fac.denvar, checked_sub(0L, fac.qexp)});
      } else {
        poles.push_back(Alpha{fac.numvar, fac.qexp});
        cofactor.multiply_scalar(-QRat::q_power(checked_sub(0L, fac.qexp)));
        cofactor.multiply_monomial(ExpVec::ratio(k, fac.numvar));
      }
    }
    return ProperRat(k, std::move(cofactor), std::move(poles));
  }

  VarIndex var() const noexcept { return var_; }
  const FactoredForm& cofactor() const noexcept { return cofactor_; }
  const std::vector<Alpha>& poles() const noexcept { return poles_; }
  long degree() const noexcept { return degree_; }

  /// d in p(x_k)/x_k^d: the order of the pole at x_k = 0.
  long dpow() const {
    long low = cofactor_.monomial().exponent(var_);
    for (const auto& fac : cofactor_.factors()) {
      if (fac.denvar == var_) low -= fac.exponent;
    }
    return std::max(0L, -low);
  }

  FactoredForm pole_factor(const Alpha& a) const {
    return FactoredForm(1, {}, {make_factor(checked_sub(0L, a.qexp), var_, a.var, -1)});
  }

  /// R itself.
  FactoredForm as_factored() const {
    FactoredForm out = cofactor_;
    for (const auto& a : poles_) out = out * pole_factor(a);
    return out;
  }

 private:
  VarIndex var_;
  FactoredForm cofactor_;
  std::vector<Alpha> poles_;
  long degree_ = 0;
};

/// One summand of the partial-fraction constant term.
struct Residue {
  Alpha pole;
  FactoredForm value;
};

/// Summands (R (1 - x_k/alpha_j))|_{x_k = alpha_j}, one per small pole, in
/// the order the poles were given. Large poles contribute nothing.
inline std::vector<Residue> partial_fraction_residues(const ProperRat& r) {
  std::vector<Residue> out;
  const VarIndex k = r.var();
  for (std::size_t j = 0; j < r.poles().size(); ++j) {
    const Alpha& alpha = r.poles()[j];
    if (k > alpha.var) continue;  // x_k/alpha_j large
    FactoredForm rest = r.cofactor();
    for (std::size_t i = 0; i < r.poles().size(); ++i) {
      if (i != j) rest = rest * r.pole_factor(r.poles()[i]);
    }
    Substitution at_pole;
    at_pole.set(k, VarImage{alpha.var, alpha.qexp});
    out.push_back(Residue{alpha, at_pole.apply(rest)});
  }
  return out;
}

inline std::vector<FactoredForm> ct_partial_fraction(const ProperRat& r) {
  std::vector<FactoredForm> out;
  for (auto& res : partial_fraction_residues(r)) out.push_back(std::move(res.value));
  return out;
}

inline std::vector<FactoredForm> ct_partial_fraction(const FactoredForm& f, VarIndex k) {
  return ct_partial_fraction(ProperRat::from_factored(f, k));
}

/// Constant term in x_0 of the x_0-series of f, all terms (in the remaining
/// variables) kept. Every denominator factor must involve x_0. The result is
/// exact for any bound >= 0; callers pass the numerator's x_0 depth a.
inline LaurentPoly ct_x0_truncated(const FactoredForm& f, long bound) {
  if (bound < 0) throw PreconditionError("ct_x0_truncated: negative bound");
  for (const auto& fac : f.factors()) {
    if (fac.is_denominator() && !fac.involves(0)) {
      throw ShapeError("ct_x0_truncated: denominator factor free of x0");
    }
  }
  return ct_var_bruteforce(expand_factored(f, Truncation::in_var(0, bound)), 0);
}

/// Constant term in all variables, expanding in x_0 first; the fused form of
/// ct_x0_truncated followed by a brute-force constant term.
inline QRat ct_all_x0_truncated(const FactoredForm& f, long bound, ExpansionStats* stats = nullptr) {
  if (bound < 0) throw PreconditionError("ct_all_x0_truncated: negative bound");
  return ct_all_series(f, Truncation::in_var(0, bound), stats);
}

}  // namespace ctforge
