#pragma once

// Minimal-parenthesis printer: parse(print(e)) rebuilds e exactly.

#include <string>

#include "ctforge/expr/ast.hpp"

namespace ctforge::expr {

namespace detail {

// + - bind loosest, then * /, then ^; atoms are 4.
inline int precedence(const Expr& e) {
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    return (b->op == BinOp::kAdd || b->op == BinOp::kSub) ? 1 : 2;
  }
  if (std::holds_alternative<Power>(e.node)) return 3;
  return 4;
}

inline const char* op_text(BinOp op) {
  switch (op) {
    case BinOp::kAdd: return " + ";
    case BinOp::kSub: return " - ";
    case BinOp::kMul: return "*";
    case BinOp::kDiv: return "/";
  }
  return "?";
}

}  // namespace detail

inline std::string print(const Expr& e) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return x.value.get_str();
        } else if constexpr (std::is_same_v<T, QSym>) {
          return "q";
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return "x" + std::to_string(x.index);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const int p = detail::precedence(e);
          std::string l = print(*x.lhs);
          std::string r = print(*x.rhs);
          // Left-associative: an equal-precedence right operand needs parentheses.
          if (detail::precedence(*x.lhs) < p) l = "(" + l + ")";
          if (detail::precedence(*x.rhs) <= p) r = "(" + r + ")";
          return l + detail::op_text(x.op) + r;
        } else if constexpr (std::is_same_v<T, Power>) {
          std::string b = print(*x.base);
          if (detail::precedence(*x.base) < 4) b = "(" + b + ")";
          return b + "^" + std::to_string(x.exponent);
        } else {
          return "qpoch(" + print(*x.base) + ", " + std::to_string(x.count) + ")";
        }
      },
      e.node);
}

}  // namespace ctforge::expr
