#pragma once

// Dense univariate polynomials in q over the rationals.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ctforge/errors.hpp"

namespace ctforge {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// q-exponents above this are rejected; desk-scale inputs stay far below.
inline constexpr long kMaxQDegree = 1L << 22;

/// Polynomial c_0 + c_1 q + ... + c_d q^d with rational coefficients.
/// Stored densely by exponent; the last stored coefficient is never zero and
/// the zero polynomial has no coefficients.
class QPoly {
 public:
  QPoly() = default;

  QPoly(long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) coeffs_.emplace_back(c);
  }

  QPoly(const BigRat& c) {  // NOLINT(google-explicit-constructor)
    if (sgn(c) != 0) coeffs_.push_back(c);
  }

  explicit QPoly(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  /// c * q^e
  static QPoly monomial(const BigRat& c, long e) {
    if (e < 0) throw DomainError("QPoly::monomial: negative q-exponent");
    if (e > kMaxQDegree) throw OverflowError("QPoly::monomial: q-exponent too large");
    QPoly p;
    if (sgn(c) == 0) return p;
    p.coeffs_.assign(static_cast<std::size_t>(e) + 1, BigRat(0));
    p.coeffs_.back() = c;
    return p;
  }

  static QPoly q_power(long e) { return monomial(BigRat(1), e); }

  const std::vector<BigRat>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }

  bool is_constant() const noexcept { return coeffs_.size() <= 1; }

  bool is_one() const {
    return coeffs_.size() == 1 && coeffs_[0] == 1;
  }

  /// Coefficient of q^e (zero outside the stored range).
  BigRat coeff(long e) const {
    if (e < 0 || e > degree()) return BigRat(0);
    return coeffs_[static_cast<std::size_t>(e)];
  }

  const BigRat& leading() const {
    if (is_zero()) throw DomainError("QPoly::leading: zero polynomial");
    return coeffs_.back();
  }

  /// Smallest exponent with a nonzero coefficient; requires nonzero.
  long low_order() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (sgn(coeffs_[i]) != 0) return static_cast<long>(i);
    }
    throw DomainError("QPoly::low_order: zero polynomial");
  }

  /// True for c * q^e with c != 0.
  bool is_monomial() const {
    return !is_zero() && low_order() == degree();
  }

  QPoly operator-() const {
    QPoly out(*this);
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  QPoly& operator+=(const QPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  QPoly& operator-=(const QPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }

  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }

  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.degree() + b.degree() > kMaxQDegree) {
      throw OverflowError("QPoly: product degree too large");
    }
    std::vector<BigRat> out(a.coeffs_.size() + b.coeffs_.size() - 1, BigRat(0));
    BigRat tmp;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (sgn(a.coeffs_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (sgn(b.coeffs_[j]) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), a.coeffs_[i].get_mpq_t(), b.coeffs_[j].get_mpq_t());
        out[i + j] += tmp;
      }
    }
    return QPoly(std::move(out));
  }

  QPoly& operator*=(const QPoly& o) { return *this = *this * o; }

  QPoly scaled(const BigRat& c) const {
    if (sgn(c) == 0) return {};
    QPoly out(*this);
    for (auto& x : out.coeffs_) x *= c;
    return out;
  }

  /// Multiply by q^k (k >= 0).
  QPoly shifted(long k) const {
    if (k < 0) throw DomainError("QPoly::shifted: negative shift");
    if (is_zero() || k == 0) return *this;
    if (degree() + k > kMaxQDegree) throw OverflowError("QPoly: shift too large");
    QPoly out;
    out.coeffs_.reserve(coeffs_.size() + static_cast<std::size_t>(k));
    out.coeffs_.assign(static_cast<std::size_t>(k), BigRat(0));
    out.coeffs_.insert(out.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return out;
  }

  /// Divide by q^k; requires k <= low_order().
  QPoly unshifted(long k) const {
    if (k == 0 || is_zero()) return *this;
    if (k < 0 || k > low_order()) throw DomainError("QPoly::unshifted: not divisible");
    QPoly out;
    out.coeffs_.assign(coeffs_.begin() + k, coeffs_.end());
    return out;
  }

  /// Euclidean division: *this = quot * d + rem with deg rem < deg d.
  std::pair<QPoly, QPoly> divmod(const QPoly& d) const {
    if (d.is_zero()) throw DomainError("QPoly::divmod: division by zero polynomial");
    if (degree() < d.degree()) return {QPoly{}, *this};
    std::vector<BigRat> rem = coeffs_;
    std::vector<BigRat> quot(coeffs_.size() - d.coeffs_.size() + 1, BigRat(0));
    const BigRat& lead = d.coeffs_.back();
    const std::size_t dn = d.coeffs_.size();
    for (std::size_t i = quot.size(); i-- > 0;) {
      const BigRat& top = rem[i + dn - 1];
      if (sgn(top) == 0) continue;
      BigRat f = top / lead;
      for (std::size_t j = 0; j < dn; ++j) rem[i + j] -= f * d.coeffs_[j];
      quot[i] = std::move(f);
    }
    rem.resize(dn - 1);
    return {QPoly(std::move(quot)), QPoly(std::move(rem))};
  }

  /// Exact quotient; throws if d does not divide *this.
  QPoly divexact(const QPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw DomainError("QPoly::divexact: nonzero remainder");
    return q;
  }

  QPoly monic() const {
    if (is_zero()) return {};
    return scaled(BigRat(1) / leading());
  }

  BigRat evaluate(const BigRat& v) const {
    BigRat acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      acc *= v;
      acc += coeffs_[i];
    }
    return acc;
  }

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  }

  std::vector<BigRat> coeffs_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline QPoly gcd(QPoly a, QPoly b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  // Powers of q are the common case (Laurent behaviour in q).
  if (a.is_monomial() || b.is_monomial()) {
    return QPoly::q_power(std::min(a.low_order(), b.low_order()));
  }
  if (a.degree() < b.degree()) std::swap(a, b);
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    QPoly r = a.divmod(b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace ctforge
