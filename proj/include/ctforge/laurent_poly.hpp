#pragma once

#include <cstddef>
#include <map>
#include <utility>

#include "ctforge/expvec.hpp"
#include "ctforge/qrat.hpp"

namespace ctforge {

/// Sparse Laurent polynomial in x_0..x_n with QRat coefficients. No stored
/// coefficient is zero.
class LaurentPoly {
 public:
  using TermMap = std::map<ExpVec, QRat>;

  LaurentPoly() = default;
  LaurentPoly(const QRat& c) { add_term(ExpVec{}, c); }  // NOLINT(google-explicit-constructor)
  LaurentPoly(long c) : LaurentPoly(QRat(c)) {}          // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(const QRat& c, ExpVec m) {
    LaurentPoly p;
    p.add_term(std::move(m), c);
    return p;
  }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  auto begin() const noexcept { return terms_.begin(); }
  auto end() const noexcept { return terms_.end(); }

  QRat coefficient(const ExpVec& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? QRat() : it->second;
  }

  /// Constant coefficient (the coefficient of the monomial 1).
  QRat constant() const { return coefficient(ExpVec{}); }

  void add_term(ExpVec m, const QRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentPoly operator-() const {
    LaurentPoly out(*this);
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly scaled(const QRat& c) const {
    if (c.is_zero()) return {};
    LaurentPoly out(*this);
    for (auto& [m, v] : out.terms_) v *= c;
    return out;
  }

  LaurentPoly times_monomial(const ExpVec& m) const {
    LaurentPoly out;
    for (const auto& [k, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), k * m, c);
    return out;
  }

  LaurentPoly pow(unsigned k) const {
    LaurentPoly result(1);
    for (unsigned i = 0; i < k; ++i) result *= *this;
    return result;
  }

  /// Terms satisfying pred(monomial).
  template <class Pred>
  LaurentPoly filtered(Pred pred) const {
    LaurentPoly out;
    for (const auto& [m, c] : terms_) {
      if (pred(m)) out.terms_.emplace_hint(out.terms_.end(), m, c);
    }
    return out;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }

 private:
  TermMap terms_;
};

}  // namespace ctforge
