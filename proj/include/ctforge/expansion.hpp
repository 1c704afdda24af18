#pragma once

// Expansion of factored forms in the field of iterated Laurent series.
//
// A binomial 1 - q^s x_i/x_j is expanded in powers of x_lo/x_hi where
// lo = min(i, j), hi = max(i, j):
//
//   i < j (small):  1/(1 - q^s x_i/x_j) =  sum_{l>=0} q^{sl} (x_i/x_j)^l
//   i > j (large):  1/(1 - q^s x_i/x_j) = -sum_{l>=0} q^{-s(l+1)} (x_j/x_i)^{l+1}
//
// Truncation uses an integer weight per variable. Every ratio x_lo/x_hi that
// drives a geometric series must have weight >= 1, so each series has finitely
// many terms below any weight bound. Truncating at weight W is exact for every
// monomial of weight <= W: each piece is cut at W minus the smallest weight
// the other pieces can contribute, and partial products are cut the same way.
//
//   in_var(v, D): weight 1 on x_v only. Valid when x_v is the lower variable
//                 of every denominator binomial (always true for v = 0).
//   graded(N, W): weight N - v on x_v. Decreasing weights make every small
//                 ratio positive, so any factored form can be expanded.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ctforge/factored_form.hpp"
#include "ctforge/laurent_poly.hpp"

namespace ctforge {

struct Truncation {
  std::vector<long> weights;  // indexed by variable; missing entries weigh 0
  long max_weight = 0;

  static Truncation in_var(VarIndex v, long max_degree) {
    Truncation t;
    t.weights.assign(static_cast<std::size_t>(v) + 1, 0);
    t.weights[static_cast<std::size_t>(v)] = 1;
    t.max_weight = max_degree;
    return t;
  }

  static Truncation graded(int nvars, long max_weight) {
    Truncation t;
    t.weights.resize(static_cast<std::size_t>(nvars));
    for (int v = 0; v < nvars; ++v) t.weights[static_cast<std::size_t>(v)] = nvars - v;
    t.max_weight = max_weight;
    return t;
  }

  long weight(VarIndex v) const {
    auto idx = static_cast<std::size_t>(v);
    return idx < weights.size() ? weights[idx] : 0;
  }

  long weight(const ExpVec& m) const {
    long w = 0;
    for (const auto& [v, e] : m) w = checked_add(w, checked_mul<long>(weight(v), e));
    return w;
  }
};

/// Degree of f as a rational function of x_v (numerator degree minus
/// denominator degree). 1 - c x_i/x_j = (x_j - c x_i)/x_j has degree 1 in x_i
/// and 0 in x_j.
inline long degree_in_var(const FactoredForm& f, VarIndex v) {
  long d = f.monomial().exponent(v);
  for (const auto& fac : f.factors()) {
    if (fac.numvar == v) d = checked_add<long>(d, fac.exponent);
  }
  return d;
}

/// Statistics gathered while multiplying expansion pieces.
struct ExpansionStats {
  std::size_t peak_terms = 0;
};

namespace detail {

inline LaurentPoly binomial(const Factor& f) {
  LaurentPoly b(1);
  b.add_term(f.ratio(), -QRat::q_power(f.qexp));
  return b;
}

inline LaurentPoly truncate_to(const LaurentPoly& p, const Truncation& t, long max_w) {
  return p.filtered([&](const ExpVec& m) { return t.weight(m) <= max_w; });
}

inline LaurentPoly multiply_truncated(const LaurentPoly& a, const LaurentPoly& b,
                                      const Truncation& t, long max_w) {
  LaurentPoly out;
  for (const auto& [ma, ca] : a) {
    long wa = t.weight(ma);
    for (const auto& [mb, cb] : b) {
      if (wa + t.weight(mb) > max_w) continue;
      out.add_term(ma * mb, ca * cb);
    }
  }
  return out;
}

/// One multiplicand of a factored form: the scalar times the monomial, a
/// numerator binomial power, or a denominator binomial power.
struct Piece {
  enum class Kind { kMonomial, kNumerator, kDenominator } kind;
  Factor factor{};
  long min_weight = 0;
};

/// For a denominator binomial: the ratio x_lo/x_hi driving its series, the
/// coefficient of each step, and the leading term.
struct GeometricSeries {
  ExpVec step;       // x_lo / x_hi
  QRat step_coeff;   // q^s (small) or q^{-s} (large)
  ExpVec lead;       // 1 (small) or x_lo/x_hi (large)
  QRat lead_coeff;   // 1 (small) or -q^{-s} (large)
};

inline GeometricSeries geometric_series(const Factor& f) {
  if (f.numvar < f.denvar) {
    return {ExpVec::ratio(f.numvar, f.denvar), QRat::q_power(f.qexp), ExpVec{}, QRat(1)};
  }
  ExpVec step = ExpVec::ratio(f.denvar, f.numvar);
  QRat c = QRat::q_power(checked_sub(0L, f.qexp));
  return {step, c, step, -c};
}

inline std::vector<Piece> pieces_of(const FactoredForm& f, const Truncation& t) {
  std::vector<Piece> pieces;
  pieces.push_back(Piece{Piece::Kind::kMonomial, {}, t.weight(f.monomial())});
  for (const auto& fac : f.factors()) {
    if (fac.exponent > 0) {
      long w = t.weight(fac.ratio());
      pieces.push_back(Piece{Piece::Kind::kNumerator, fac, fac.exponent * std::min(0L, w)});
      continue;
    }
    GeometricSeries g = geometric_series(fac);
    long ws = t.weight(g.step);
    if (ws < 1) {
      throw ShapeError("expansion: denominator factor (1 - q^" + std::to_string(fac.qexp) + "*x" +
                       std::to_string(fac.numvar) + "/x" + std::to_string(fac.denvar) +
                       ") does not expand in positive powers of the truncation weight");
    }
    pieces.push_back(Piece{Piece::Kind::kDenominator, fac, -fac.exponent * t.weight(g.lead)});
  }
  return pieces;
}

inline LaurentPoly expand_piece(const Piece& piece, const FactoredForm& f, const Truncation& t,
                                long max_w) {
  switch (piece.kind) {
    case Piece::Kind::kMonomial:
      return truncate_to(LaurentPoly::monomial(f.scalar(), f.monomial()), t, max_w);
    case Piece::Kind::kNumerator:
      return truncate_to(binomial(piece.factor).pow(static_cast<unsigned>(piece.factor.exponent)),
                         t, max_w);
    case Piece::Kind::kDenominator: {
      GeometricSeries g = geometric_series(piece.factor);
      const long power = -piece.factor.exponent;
      const long ws = t.weight(g.step);
      const long wl = t.weight(g.lead);
      // One copy of the series, long enough for the power.
      long single_max = max_w - (power - 1) * wl;
      LaurentPoly series;
      ExpVec m = g.lead;
      QRat c = g.lead_coeff;
      for (long w = wl; w <= single_max; w += ws) {
        series.add_term(m, c);
        m = m * g.step;
        c *= g.step_coeff;
      }
      LaurentPoly out = series;
      for (long p = 1; p < power; ++p) out = multiply_truncated(out, series, t, max_w);
      return out;
    }
  }
  return {};
}

inline long total_min_weight(const std::vector<Piece>& pieces) {
  long total = 0;
  for (const auto& p : pieces) total = checked_add(total, p.min_weight);
  return total;
}

/// Each piece expanded far enough that the product is exact up to `target`.
inline std::vector<LaurentPoly> expanded_pieces(const FactoredForm& f, const Truncation& t,
                                                long target) {
  auto pieces = pieces_of(f, t);
  const long total = total_min_weight(pieces);
  std::vector<LaurentPoly> out;
  out.reserve(pieces.size());
  for (const auto& p : pieces) {
    out.push_back(expand_piece(p, f, t, target - (total - p.min_weight)));
  }
  return out;
}

}  // namespace detail

/// The iterated Laurent series of f with every term of weight <= t.max_weight.
/// Numerator binomials are expanded exactly.
inline LaurentPoly expand_factored(const FactoredForm& f, const Truncation& t,
                                   ExpansionStats* stats = nullptr) {
  if (f.is_zero()) return {};
  auto pieces = detail::pieces_of(f, t);
  long remaining = detail::total_min_weight(pieces);
  auto expanded = detail::expanded_pieces(f, t, t.max_weight);
  LaurentPoly acc(1);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    remaining -= pieces[i].min_weight;
    acc = detail::multiply_truncated(acc, expanded[i], t, t.max_weight - remaining);
    if (stats) stats->peak_terms = std::max(stats->peak_terms, acc.size());
    if (acc.is_zero()) break;
  }
  return acc;
}

/// Constant coefficient of prod pieces, skipping partial products that can no
/// longer reach exponent zero in some variable.
inline QRat constant_term_of_product(const std::vector<LaurentPoly>& pieces,
                                     ExpansionStats* stats = nullptr) {
  VarIndex nvars = 0;
  for (const auto& p : pieces) {
    for (const auto& [m, c] : p) nvars = std::max(nvars, m.max_var() + 1);
  }
  const std::size_t nv = static_cast<std::size_t>(nvars);
  const std::size_t np = pieces.size();
  // suffix_lo[i][v] / suffix_hi[i][v]: exponent range of x_v over pieces i..end
  std::vector<std::vector<long>> suffix_lo(np + 1, std::vector<long>(nv, 0));
  std::vector<std::vector<long>> suffix_hi(np + 1, std::vector<long>(nv, 0));
  for (std::size_t i = np; i-- > 0;) {
    if (pieces[i].is_zero()) return QRat();
    std::vector<long> lo(nv, 0), hi(nv, 0);
    bool first = true;
    for (const auto& [m, c] : pieces[i]) {
      for (std::size_t v = 0; v < nv; ++v) {
        long e = m.exponent(static_cast<VarIndex>(v));
        if (first || e < lo[v]) lo[v] = e;
        if (first || e > hi[v]) hi[v] = e;
      }
      first = false;
    }
    for (std::size_t v = 0; v < nv; ++v) {
      suffix_lo[i][v] = suffix_lo[i + 1][v] + lo[v];
      suffix_hi[i][v] = suffix_hi[i + 1][v] + hi[v];
    }
  }
  auto reachable = [&](const ExpVec& m, std::size_t next) {
    std::size_t k = 0;
    const auto& entries = m.entries();
    for (std::size_t v = 0; v < nv; ++v) {
      long e = 0;
      if (k < entries.size() && entries[k].first == static_cast<VarIndex>(v)) e = entries[k++].second;
      if (e + suffix_lo[next][v] > 0 || e + suffix_hi[next][v] < 0) return false;
    }
    return true;
  };
  LaurentPoly acc(1);
  for (std::size_t i = 0; i < np; ++i) {
    LaurentPoly next;
    for (const auto& [ma, ca] : acc) {
      for (const auto& [mb, cb] : pieces[i]) {
        ExpVec m = ma * mb;
        if (!reachable(m, i + 1)) continue;
        next.add_term(std::move(m), ca * cb);
      }
    }
    acc = std::move(next);
    if (stats) stats->peak_terms = std::max(stats->peak_terms, acc.size());
    if (acc.is_zero()) return QRat();
  }
  return acc.constant();
}

/// Constant term in all variables of the series expansion of f under the
/// weights of t (only t.max_weight >= 0 matters: the monomial 1 weighs 0).
inline QRat ct_all_series(const FactoredForm& f, const Truncation& t,
                          ExpansionStats* stats = nullptr) {
  if (f.is_zero()) return {};
  if (t.max_weight < 0) throw PreconditionError("ct_all_series: truncation below weight 0");
  return constant_term_of_product(detail::expanded_pieces(f, t, 0), stats);
}

/// Graded weights sized to the variables of f.
inline QRat ct_all_series(const FactoredForm& f, ExpansionStats* stats = nullptr) {
  return ct_all_series(f, Truncation::graded(std::max<VarIndex>(f.max_var() + 1, 1), 0), stats);
}

}  // namespace ctforge
