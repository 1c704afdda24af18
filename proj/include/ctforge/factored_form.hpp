#pragma once

#include <algorithm>
#include <cstdlib>
#include <compare>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ctforge/expvec.hpp"
#include "ctforge/qrat.hpp"

namespace ctforge {

/// (1 - q^qexp * x_numvar / x_denvar)^exponent, numvar != denvar, exponent != 0.
struct Factor {
  long qexp = 0;
  VarIndex numvar = 0;
  VarIndex denvar = 1;
  int exponent = 1;

  bool is_denominator() const noexcept { return exponent < 0; }
  bool involves(VarIndex v) const noexcept { return numvar == v || denvar == v; }
  ExpVec ratio() const { return ExpVec::ratio(numvar, denvar); }

  /// Same binomial regardless of the power.
  bool same_base(const Factor& o) const noexcept {
    return qexp == o.qexp && numvar == o.numvar && denvar == o.denvar;
  }

  friend bool operator==(const Factor&, const Factor&) = default;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

inline Factor make_factor(long qexp, VarIndex numvar, VarIndex denvar, int exponent = 1) {
  if (numvar == denvar) throw ShapeError("Factor: numerator and denominator variable coincide");
  if (numvar < 0 || denvar < 0) throw ShapeError("Factor: negative variable index");
  if (exponent == 0) throw ShapeError("Factor: zero exponent");
  return Factor{qexp, numvar, denvar, exponent};
}

/// scalar * monomial * prod factor_i, kept symbolic. This is what the
/// constant-term recursion manipulates; expansion happens only at the edges.
///
/// A zero scalar means the whole form is zero; in that case the monomial and
/// factor list are cleared.
class FactoredForm {
 public:
  FactoredForm() = default;
  FactoredForm(const QRat& scalar) : scalar_(scalar) {}  // NOLINT(google-explicit-constructor)
  FactoredForm(long scalar) : scalar_(scalar) {}         // NOLINT(google-explicit-constructor)

  FactoredForm(QRat scalar, ExpVec monomial, std::vector<Factor> factors)
      : scalar_(std::move(scalar)), monomial_(std::move(monomial)), factors_(std::move(factors)) {
    for (const auto& f : factors_) make_factor(f.qexp, f.numvar, f.denvar, f.exponent);
    if (scalar_.is_zero()) clear_to_zero();
  }

  static FactoredForm zero() { return FactoredForm(QRat()); }

  const QRat& scalar() const noexcept { return scalar_; }
  const ExpVec& monomial() const noexcept { return monomial_; }
  const std::vector<Factor>& factors() const noexcept { return factors_; }

  bool is_zero() const noexcept { return scalar_.is_zero(); }

  bool has_denominator() const {
    return std::any_of(factors_.begin(), factors_.end(),
                       [](const Factor& f) { return f.is_denominator(); });
  }

  /// Largest variable index mentioned, or -1 when constant.
  VarIndex max_var() const {
    VarIndex m = monomial_.max_var();
    for (const auto& f : factors_) m = std::max({m, f.numvar, f.denvar});
    return m;
  }

  FactoredForm& multiply_factor(const Factor& f) {
    if (is_zero()) return *this;
    factors_.push_back(make_factor(f.qexp, f.numvar, f.denvar, f.exponent));
    return *this;
  }

  FactoredForm& multiply_scalar(const QRat& c) {
    scalar_ *= c;
    if (scalar_.is_zero()) clear_to_zero();
    return *this;
  }

  FactoredForm& multiply_monomial(const ExpVec& m) {
    if (!is_zero()) monomial_ = monomial_ * m;
    return *this;
  }

  friend FactoredForm operator*(FactoredForm a, const FactoredForm& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    a.scalar_ *= b.scalar_;
    a.monomial_ = a.monomial_ * b.monomial_;
    a.factors_.insert(a.factors_.end(), b.factors_.begin(), b.factors_.end());
    return a;
  }

  FactoredForm inverse() const {
    if (is_zero()) throw DomainError("FactoredForm: inverse of zero");
    FactoredForm out(*this);
    out.scalar_ = scalar_.inverse();
    out.monomial_ = monomial_.inverse();
    for (auto& f : out.factors_) f.exponent = checked_sub(0, f.exponent);
    return out;
  }

  FactoredForm pow(int k) const {
    if (k == 0) return FactoredForm(1);
    if (k < 0) return inverse().pow(-k);
    FactoredForm out(*this);
    out.scalar_ = ctforge::pow(scalar_, k);
    out.monomial_ = monomial_.pow(k);
    for (auto& f : out.factors_) f.exponent = checked_mul(f.exponent, k);
    return out;
  }

  /// Remove one occurrence of the binomial base of `f` with power f.exponent.
  /// Returns false when no factor with that base and sign is present.
  bool cancel_factor(const Factor& f) {
    for (auto it = factors_.begin(); it != factors_.end(); ++it) {
      if (!it->same_base(f)) continue;
      if ((it->exponent > 0) != (f.exponent > 0)) continue;
      if (std::abs(it->exponent) < std::abs(f.exponent)) continue;
      it->exponent -= f.exponent;
      if (it->exponent == 0) factors_.erase(it);
      return true;
    }
    return false;
  }

  /// Same value, with equal binomial bases merged and factors sorted. Two
  /// forms built from the same factors in any order have equal canonical forms.
  FactoredForm canonical() const {
    if (is_zero()) return zero();
    std::map<std::tuple<long, VarIndex, VarIndex>, int> merged;
    for (const auto& f : factors_) {
      auto& e = merged[{f.qexp, f.numvar, f.denvar}];
      e = checked_add(e, f.exponent);
    }
    FactoredForm out;
    out.scalar_ = scalar_;
    out.monomial_ = monomial_;
    for (const auto& [key, e] : merged) {
      if (e == 0) continue;
      const auto& [s, i, j] = key;
      out.factors_.push_back(Factor{s, i, j, e});
    }
    return out;
  }

  friend bool operator==(const FactoredForm&, const FactoredForm&) = default;

 private:
  void clear_to_zero() {
    scalar_ = QRat();
    monomial_ = ExpVec{};
    factors_.clear();
  }

  QRat scalar_{1};
  ExpVec monomial_;
  std::vector<Factor> factors_;
};

/// Representational equality after canonicalization.
inline bool same_value_representation(const FactoredForm& a, const FactoredForm& b) {
  return a.canonical() == b.canonical();
}

/// x_v -> x_target * q^qshift.
struct VarImage {
  VarIndex target;
  long qshift = 0;
  friend bool operator==(const VarImage&, const VarImage&) = default;
};

/// A simultaneous substitution of variables by q-shifted variables. Unmapped
/// variables are fixed.
class Substitution {
 public:
  Substitution() = default;

  Substitution& set(VarIndex v, VarImage img) {
    map_[v] = img;
    return *this;
  }

  VarImage image(VarIndex v) const {
    auto it = map_.find(v);
    return it == map_.end() ? VarImage{v, 0} : it->second;
  }

  const std::map<VarIndex, VarImage>& mapping() const noexcept { return map_; }

  /// `after` applied to the result of *this: (after o this)(x_v).
  Substitution then(const Substitution& after) const {
    Substitution out;
    for (const auto& [v, img] : map_) {
      VarImage second = after.image(img.target);
      out.map_[v] = VarImage{second.target, checked_add(img.qshift, second.qshift)};
    }
    for (const auto& [v, img] : after.map_) {
      if (!map_.contains(v)) out.map_[v] = img;
    }
    return out;
  }

  /// Apply to a factored form. Binomials whose two variables collapse onto
  /// the same variable become constants 1 - q^s and move into the scalar; a
  /// vanishing numerator binomial zeroes the form, a vanishing denominator
  /// binomial is an uncancelled pole.
  FactoredForm apply(const FactoredForm& f) const {
    if (f.is_zero()) return FactoredForm::zero();
    QRat scalar = f.scalar();
    ExpVec monomial;
    for (const auto& [v, e] : f.monomial()) {
      VarImage img = image(v);
      monomial = monomial * ExpVec::var(img.target, e);
      scalar = scalar.times_q_power(checked_mul<long>(img.qshift, e));
    }
    std::vector<Factor> factors;
    factors.reserve(f.factors().size());
    for (const auto& fac : f.factors()) {
      VarImage ni = image(fac.numvar);
      VarImage di = image(fac.denvar);
      long s = checked_add(fac.qexp, checked_sub(ni.qshift, di.qshift));
      if (ni.target != di.target) {
        factors.push_back(Factor{s, ni.target, di.target, fac.exponent});
        continue;
      }
      if (s == 0) {
        if (fac.exponent > 0) return FactoredForm::zero();
        throw UncancelledPoleError("substitution sends a denominator factor to zero");
      }
      scalar *= pow(QRat::one_minus_q_power(s), fac.exponent);
    }
    return FactoredForm(std::move(scalar), std::move(monomial), std::move(factors));
  }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<VarIndex, VarImage> map_;
};

}  // namespace ctforge
