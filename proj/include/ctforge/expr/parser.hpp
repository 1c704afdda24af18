#pragma once

// Recursive-descent parser for the grammar in ast.hpp. Errors carry the
// line, column and the set of tokens that would have been accepted.

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ctforge/expr/ast.hpp"

namespace ctforge::expr {

class ParseError : public std::invalid_argument {
 public:
  ParseError(int line, int column, std::vector<std::string> expected, std::string found)
      : std::invalid_argument(render(line, column, expected, found)),
        line_(line),
        column_(column),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  static std::string render(int line, int column, const std::vector<std::string>& expected,
                            const std::string& found) {
    std::string out = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": expected ";
    if (expected.size() > 1) out += "one of ";
    for (std::size_t i = 0; i < expected.size(); ++i) out += (i ? ", " : "") + expected[i];
    return out + "; found " + found;
  }

  int line_;
  int column_;
  std::vector<std::string> expected_;
  std::string found_;
};

namespace detail {

enum class Tok { kInt, kQ, kVar, kQpoch, kPlus, kMinus, kStar, kSlash, kCaret, kLParen, kRParen, kComma, kEnd, kBad };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  Span span;
};

inline std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::kEnd: return "end of input";
    case Tok::kInt: return "integer " + t.text;
    case Tok::kVar: return "variable " + t.text;
    default: return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.span = {pos_, pos_, line_, col_};
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t e = pos_;
      while (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) ++e;
      return take(t, Tok::kInt, e);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t e = pos_;
      while (e < src_.size() && std::isalpha(static_cast<unsigned char>(src_[e]))) ++e;
      std::size_t letters = e;
      while (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) ++e;
      std::string_view word = src_.substr(pos_, letters - pos_);
      const bool digits = e > letters;
      if (word == "q" && !digits) return take(t, Tok::kQ, e);
      if (word == "qpoch" && !digits) return take(t, Tok::kQpoch, e);
      if (word == "x" && digits && e - letters <= 6) return take(t, Tok::kVar, e);
      return take(t, Tok::kBad, e);
    }
    switch (c) {
      case '+': return take(t, Tok::kPlus, pos_ + 1);
      case '-': return take(t, Tok::kMinus, pos_ + 1);
      case '*': return take(t, Tok::kStar, pos_ + 1);
      case '/': return take(t, Tok::kSlash, pos_ + 1);
      case '^': return take(t, Tok::kCaret, pos_ + 1);
      case '(': return take(t, Tok::kLParen, pos_ + 1);
      case ')': return take(t, Tok::kRParen, pos_ + 1);
      case ',': return take(t, Tok::kComma, pos_ + 1);
      default: return take(t, Tok::kBad, pos_ + 1);
    }
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  Token take(Token t, Tok kind, std::size_t end) {
    t.kind = kind;
    t.text = std::string(src_.substr(pos_, end - pos_));
    t.span.end = end;
    col_ += static_cast<int>(end - pos_);
    pos_ = end;
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

  ExprPtr parse_all() {
    ExprPtr e = parse_expr();
    if (cur_.kind != Tok::kEnd) fail(continuation({"end of input"}));
    return e;
  }

 private:
  static constexpr const char* kAtomStart[] = {"integer", "'q'", "variable", "'qpoch'", "'('"};

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(cur_.span.line, cur_.span.column, std::move(expected), describe(cur_));
  }

  std::vector<std::string> continuation(std::vector<std::string> closers) const {
    std::vector<std::string> out{"'+'", "'-'", "'*'", "'/'"};
    if (last_pow_open_) out.insert(out.begin(), "'^'");
    out.insert(out.end(), closers.begin(), closers.end());
    return out;
  }

  Token advance() {
    Token t = cur_;
    cur_ = lex_.next();
    return t;
  }

  static Span join(const Span& a, const Span& b) { return {a.begin, b.end, a.line, a.column}; }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    while (cur_.kind == Tok::kPlus || cur_.kind == Tok::kMinus) {
      BinOp op = advance().kind == Tok::kPlus ? BinOp::kAdd : BinOp::kSub;
      ExprPtr rhs = parse_term();
      lhs = make(Binary{op, lhs, rhs}, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_pow();
    while (cur_.kind == Tok::kStar || cur_.kind == Tok::kSlash) {
      BinOp op = advance().kind == Tok::kStar ? BinOp::kMul : BinOp::kDiv;
      ExprPtr rhs = parse_pow();
      lhs = make(Binary{op, lhs, rhs}, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  ExprPtr parse_pow() {
    ExprPtr base = parse_atom();
    last_pow_open_ = true;
    if (cur_.kind != Tok::kCaret) return base;
    advance();
    Span end;
    long e = parse_signed_int(end);
    last_pow_open_ = false;
    return make(Power{base, e}, join(base->span, end));
  }

  long parse_signed_int(Span& span) {
    bool negative = false;
    Span start = cur_.span;
    if (cur_.kind == Tok::kMinus) {
      negative = true;
      advance();
    }
    if (cur_.kind != Tok::kInt) fail(negative ? std::vector<std::string>{"integer"}
                                              : std::vector<std::string>{"integer", "'-'"});
    Token t = advance();
    if (t.text.size() > 9) {
      throw ParseError(t.span.line, t.span.column, {"integer below 10^9"}, describe(t));
    }
    span = join(start, t.span);
    const long v = std::stol(t.text);
    return negative ? -v : v;
  }

  ExprPtr parse_atom() {
    const Span start = cur_.span;
    switch (cur_.kind) {
      case Tok::kInt: {
        Token t = advance();
        return make(IntLit{BigInt(t.text)}, t.span);
      }
      case Tok::kQ:
        return make(QSym{}, advance().span);
      case Tok::kVar: {
        Token t = advance();
        return make(VarRef{std::stoi(t.text.substr(1))}, t.span);
      }
      case Tok::kQpoch: {
        advance();
        if (cur_.kind != Tok::kLParen) fail({"'('"});
        advance();
        ExprPtr base = parse_expr();
        if (cur_.kind != Tok::kComma) fail(continuation({"','"}));
        advance();
        Span count_span;
        long count = parse_signed_int(count_span);
        if (cur_.kind != Tok::kRParen) fail({"')'"});
        Token close = advance();
        return make(QPochCall{base, count}, join(start, close.span));
      }
      case Tok::kLParen: {
        advance();
        ExprPtr inner = parse_expr();
        if (cur_.kind != Tok::kRParen) fail(continuation({"')'"}));
        advance();
        // Parentheses leave no node; the span still covers them.
        return inner;
      }
      default:
        fail(std::vector<std::string>(std::begin(kAtomStart), std::end(kAtomStart)));
    }
  }

  Lexer lex_;
  Token cur_;
  bool last_pow_open_ = false;
};

}  // namespace detail

inline ExprPtr parse_expression(std::string_view src) { return detail::Parser(src).parse_all(); }

}  // namespace ctforge::expr
