#pragma once

// q-Pochhammer symbols, q-binomial coefficients and the small/large
// classification of monomials q^k x_i / x_j.

#include <optional>
#include <utility>
#include <vector>

#include "ctforge/factored_form.hpp"

namespace ctforge {

namespace detail {

/// (i, j) when m = x_i / x_j, otherwise nullopt.
inline std::optional<std::pair<VarIndex, VarIndex>> as_ratio(const ExpVec& m) {
  if (m.size() != 2) return std::nullopt;
  const auto& e = m.entries();
  if (e[0].second == 1 && e[1].second == -1) return std::pair{e[0].first, e[1].first};
  if (e[0].second == -1 && e[1].second == 1) return std::pair{e[1].first, e[0].first};
  return std::nullopt;
}

}  // namespace detail

/// (z)_count for z = q^qshift with no variables.
///   count = p >= 0:  (1 - z)(1 - zq)...(1 - zq^{p-1})
///   count = -p < 0:  1 / ((1 - zq^{-1})...(1 - zq^{-p}))
inline QRat qpoch_q(long qshift, long count) {
  QRat out(1);
  if (count >= 0) {
    for (long m = 0; m < count; ++m) {
      out *= QRat::one_minus_q_power(checked_add(qshift, m));
      if (out.is_zero()) return out;
    }
    return out;
  }
  for (long m = 1; m <= -count; ++m) {
    long e = checked_sub(qshift, m);
    if (e == 0) throw DomainError("qpoch_q: factor 1 - q^0 in the denominator");
    out *= QRat::one_minus_q_power(e);
  }
  return out.inverse();
}

/// (z)_count for z = q^qshift * mono, where mono is 1 or x_i/x_j.
inline FactoredForm qpochhammer(const ExpVec& mono, long qshift, long count) {
  if (mono.is_one()) return FactoredForm(qpoch_q(qshift, count));
  auto r = detail::as_ratio(mono);
  if (!r) throw ShapeError("qpochhammer: base must be q^s or q^s * x_i/x_j");
  auto [i, j] = *r;
  FactoredForm out(1);
  if (count >= 0) {
    for (long m = 0; m < count; ++m) out.multiply_factor(make_factor(checked_add(qshift, m), i, j, 1));
  } else {
    for (long m = 1; m <= -count; ++m) out.multiply_factor(make_factor(checked_sub(qshift, m), i, j, -1));
  }
  return out;
}

/// [n, m] = (q^{n-m+1})_m / (q)_m for any integer n and m >= 0.
inline QRat qbinomial(long n, long m) {
  if (m < 0) throw DomainError("qbinomial: negative lower index");
  return qpoch_q(checked_add(checked_sub(n, m), 1L), m) / qpoch_q(1, m);
}

enum class MonomialClass { kSmall, kLarge };

/// q^k x_i/x_j is small when i < j and large when i > j.
inline MonomialClass monomial_class(const ExpVec& m) {
  auto r = detail::as_ratio(m);
  if (!r) throw ShapeError("monomial_class: expected x_i/x_j with i != j");
  return r->first < r->second ? MonomialClass::kSmall : MonomialClass::kLarge;
}

inline MonomialClass monomial_class(const Factor& f) {
  return f.numvar < f.denvar ? MonomialClass::kSmall : MonomialClass::kLarge;
}

}  // namespace ctforge
