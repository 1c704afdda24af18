#pragma once

// Expression trees for the input language:
//
//   expr := term (('+'|'-') term)*
//   term := pow (('*'|'/') pow)*
//   pow  := atom ('^' int)?
//   atom := int | 'q' | var | call | '(' expr ')'
//   var  := 'x' digits
//   call := 'qpoch' '(' expr ',' int ')'
//
// Literals in atom position are unsigned; the int after '^' and the qpoch
// count may carry a leading '-'. There is no unary minus.

#include <cstddef>
#include <memory>
#include <variant>

#include "ctforge/qpoly.hpp"

namespace ctforge::expr {

/// Half-open byte range plus the 1-based line/column of its first byte.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  int line = 1;
  int column = 1;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct IntLit {
  BigInt value;
};
struct QSym {};
struct VarRef {
  int index = 0;
};

enum class BinOp { kAdd, kSub, kMul, kDiv };

struct Binary {
  BinOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Power {
  ExprPtr base;
  long exponent = 1;
};
struct QPochCall {
  ExprPtr base;
  long count = 0;
};

using Node = std::variant<IntLit, QSym, VarRef, Binary, Power, QPochCall>;

struct Expr {
  Node node;
  Span span;
};

inline ExprPtr make(Node node, Span span = {}) {
  return std::make_shared<const Expr>(Expr{std::move(node), span});
}

inline ExprPtr integer(long v) { return make(IntLit{BigInt(v)}); }
inline ExprPtr q_symbol() { return make(QSym{}); }
inline ExprPtr var(int i) { return make(VarRef{i}); }
inline ExprPtr binary(BinOp op, ExprPtr a, ExprPtr b) { return make(Binary{op, std::move(a), std::move(b)}); }
inline ExprPtr power(ExprPtr base, long e) { return make(Power{std::move(base), e}); }
inline ExprPtr qpoch(ExprPtr base, long count) { return make(QPochCall{std::move(base), count}); }

/// Tree equality ignoring spans.
inline bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, IntLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, QSym>) {
          return true;
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return x.index == y.index;
        } else if constexpr (std::is_same_v<T, Binary>) {
          return x.op == y.op && structurally_equal(*x.lhs, *y.lhs) && structurally_equal(*x.rhs, *y.rhs);
        } else if constexpr (std::is_same_v<T, Power>) {
          return x.exponent == y.exponent && structurally_equal(*x.base, *y.base);
        } else {
          return x.count == y.count && structurally_equal(*x.base, *y.base);
        }
      },
      a.node);
}

}  // namespace ctforge::expr
