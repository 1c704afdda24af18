#pragma once

// Lowering of expression trees to the engine's types.
//
// Products, quotients and powers of monomials, q-powers and binomials are
// kept as a FactoredForm. Sums are expanded into a LaurentPoly; a sum that is
// a single term or a binomial c*M*(1 - q^s*x_i/x_j) is recognized and turned
// back into a factor, so "1 - q*x0/x1", "x0/x1 - 1" and "x1 - x0" all become
// binomial factors and can be divided by. Any other divisor is rejected.

#include <optional>
#include <stdexcept>
#include <string>

#include "ctforge/expansion.hpp"
#include "ctforge/expr/ast.hpp"
#include "ctforge/qseries.hpp"

namespace ctforge::expr {

class LoweringError : public std::invalid_argument {
 public:
  LoweringError(const Span& span, const std::string& what)
      : std::invalid_argument("line " + std::to_string(span.line) + ", column " + std::to_string(span.column) +
                              ": " + what),
        span_(span) {}
  const Span& span() const noexcept { return span_; }

 private:
  Span span_;
};

/// Exactly one member is set: the canonical factored form when the value has
/// one, otherwise the expanded Laurent polynomial.
struct Lowered {
  std::optional<FactoredForm> factored;
  std::optional<LaurentPoly> polynomial;
};

namespace detail {

struct Value {
  std::optional<FactoredForm> ff;
  std::optional<LaurentPoly> lp;
};

/// c*M*(1 - q^s*x_i/x_j) or c*M from one or two terms.
inline std::optional<FactoredForm> recognize(const LaurentPoly& p) {
  if (p.is_zero()) return FactoredForm::zero();
  if (p.size() == 1) {
    const auto& [m, c] = *p.begin();
    return FactoredForm(c, m, {});
  }
  if (p.size() != 2) return std::nullopt;
  auto first = p.begin();
  auto second = std::next(first);
  for (int flip = 0; flip < 2; ++flip) {
    const auto& [ma, ca] = flip ? *second : *first;
    const auto& [mb, cb] = flip ? *first : *second;
    auto s = (-(cb / ca)).as_q_power();
    auto ij = ctforge::detail::as_ratio(mb * ma.inverse());
    if (s && ij) return FactoredForm(ca, ma, {make_factor(*s, ij->first, ij->second, 1)});
  }
  return std::nullopt;
}

inline std::optional<LaurentPoly> expand(const FactoredForm& f) {
  if (f.has_denominator()) return std::nullopt;
  LaurentPoly out = LaurentPoly::monomial(f.scalar(), f.monomial());
  for (const auto& fac : f.factors()) {
    out = out * ctforge::detail::binomial(fac).pow(static_cast<unsigned>(fac.exponent));
  }
  return out;
}

inline const LaurentPoly& need_poly(Value& v, const Span& span, const char* role) {
  if (!v.lp) {
    if (v.ff) v.lp = expand(*v.ff);
    if (!v.lp) throw LoweringError(span, std::string(role) + " has denominator factors and cannot be expanded");
  }
  return *v.lp;
}

inline Value scalar_value(const QRat& c) { return {FactoredForm(c), LaurentPoly::monomial(c, {})}; }

inline Value lower_node(const Expr& e) {
  return std::visit(
      [&](const auto& x) -> Value {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return scalar_value(QRat(BigRat(x.value)));
        } else if constexpr (std::is_same_v<T, QSym>) {
          return scalar_value(QRat::q_power(1));
        } else if constexpr (std::is_same_v<T, VarRef>) {
          const ExpVec m = ExpVec::var(x.index);
          return {FactoredForm(QRat(1), m, {}), LaurentPoly::monomial(QRat(1), m)};
        } else if constexpr (std::is_same_v<T, Power>) {
          Value base = lower_node(*x.base);
          if (x.exponent < -(1L << 20) || x.exponent > (1L << 20)) throw LoweringError(e.span, "exponent too large");
          const int k = static_cast<int>(x.exponent);
          Value out;
          if (base.ff) {
            if (k < 0 && base.ff->is_zero()) throw LoweringError(e.span, "negative power of zero");
            out.ff = base.ff->pow(k);
          } else if (k >= 0) {
            out.lp = base.lp->pow(static_cast<unsigned>(k));
          } else {
            throw LoweringError(e.span, "negative power of a sum that is not a binomial factor");
          }
          return out;
        } else if constexpr (std::is_same_v<T, QPochCall>) {
          Value base = lower_node(*x.base);
          if (!base.ff || !base.ff->factors().empty() || base.ff->is_zero()) {
            throw LoweringError(x.base->span, "qpoch base must be q^s or q^s*x_i/x_j");
          }
          auto s = base.ff->scalar().as_q_power();
          const ExpVec& m = base.ff->monomial();
          if (!s || (!m.is_one() && !ctforge::detail::as_ratio(m))) {
            throw LoweringError(x.base->span, "qpoch base must be q^s or q^s*x_i/x_j");
          }
          try {
            return {qpochhammer(m, *s, x.count), std::nullopt};
          } catch (const DomainError& err) {
            throw LoweringError(e.span, err.what());
          }
        } else {
          Value l = lower_node(*x.lhs);
          Value r = lower_node(*x.rhs);
          switch (x.op) {
            case BinOp::kMul:
              if (l.ff && r.ff) return {*l.ff * *r.ff, std::nullopt};
              {
                LaurentPoly p = need_poly(l, x.lhs->span, "factor") * need_poly(r, x.rhs->span, "factor");
                auto ff = recognize(p);
                return {ff, std::move(p)};
              }
            case BinOp::kDiv: {
              if (!r.ff) {
                throw LoweringError(x.rhs->span, "divisor is not a product of monomials and binomial factors");
              }
              if (r.ff->is_zero()) throw LoweringError(x.rhs->span, "division by zero");
              FactoredForm inv = r.ff->inverse();
              if (l.ff) return {*l.ff * inv, std::nullopt};
              if (!inv.factors().empty()) {
                throw LoweringError(e.span, "a sum divided by a binomial factor is not supported");
              }
              LaurentPoly p = l.lp->times_monomial(inv.monomial()).scaled(inv.scalar());
              return {recognize(p), std::move(p)};
            }
            case BinOp::kAdd:
            case BinOp::kSub: {
              const LaurentPoly& a = need_poly(l, x.lhs->span, "summand");
              const LaurentPoly& b = need_poly(r, x.rhs->span, "summand");
              LaurentPoly p = x.op == BinOp::kAdd ? a + b : a - b;
              return {recognize(p), std::move(p)};
            }
          }
          return {};
        }
      },
      e.node);
}

}  // namespace detail

inline Lowered lower(const Expr& e) {
  detail::Value v = detail::lower_node(e);
  Lowered out;
  if (v.ff) {
    out.factored = v.ff->canonical();
  } else {
    out.polynomial = std::move(v.lp);
  }
  return out;
}

/// The expanded value; nullopt when it has denominator factors.
inline std::optional<LaurentPoly> expanded(const Lowered& l) {
  if (l.polynomial) return l.polynomial;
  return detail::expand(*l.factored);
}

}  // namespace ctforge::expr
