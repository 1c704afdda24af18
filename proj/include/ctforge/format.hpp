#pragma once

// Text forms of the algebraic types. Output is exact; apart from a leading
// minus sign it is also valid input for the expression parser.

#include <string>
#include <vector>

#include "ctforge/factored_form.hpp"
#include "ctforge/laurent_poly.hpp"

namespace ctforge {

namespace detail {

inline std::string q_pow_text(long e) {
  if (e == 0) return "1";
  if (e == 1) return "q";
  return "q^" + std::to_string(e);
}

/// c * q^e with the sign pulled out; `first` omits a leading '+'.
inline std::string signed_term(const BigRat& c, const std::string& tail, bool first) {
  std::string out;
  BigRat mag = abs(c);
  if (sgn(c) < 0) {
    out = "-";
  } else if (!first) {
    out = "+";
  }
  if (tail.empty()) return out + mag.get_str();
  if (mag == 1) return out + tail;
  return out + mag.get_str() + "*" + tail;
}

/// Sum of c_e q^{e + offset}, ascending.
inline std::string laurent_in_q(const QPoly& p, long offset) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (long e = 0; e <= p.degree(); ++e) {
    const BigRat& c = p.coeffs()[static_cast<std::size_t>(e)];
    if (c == 0) continue;
    const long d = e + offset;
    out += signed_term(c, d == 0 ? std::string() : q_pow_text(d), first);
    first = false;
  }
  return out;
}

inline bool is_single_token(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '+' || (s[i] == '-' && s[i - 1] != '^')) return false;
  }
  return true;
}

}  // namespace detail

inline std::string to_string(const QPoly& p) { return detail::laurent_in_q(p, 0); }

/// Polynomials and Laurent polynomials in q print as sums; anything else as
/// (num)/(den).
inline std::string to_string(const QRat& r) {
  if (r.is_polynomial()) return to_string(r.num());
  if (r.den().is_monomial()) return detail::laurent_in_q(r.num(), -r.den().degree());
  // Display with a positive lowest denominator coefficient: 1/(1-q), not -1/(-1+q).
  const bool flip = sgn(r.den().coeff(r.den().low_order())) < 0;
  std::string num = to_string(flip ? -r.num() : r.num());
  std::string den = to_string(flip ? -r.den() : r.den());
  if (!detail::is_single_token(num) || num.find('*') != std::string::npos) num = "(" + num + ")";
  return num + "/(" + den + ")";
}

/// x0^2*x2/(x1*x3); the empty monomial prints as "1".
inline std::string to_string(const ExpVec& m) {
  std::vector<std::string> up, down;
  for (const auto& [v, e] : m) {
    std::string base = "x" + std::to_string(v);
    const int a = e < 0 ? -e : e;
    if (a != 1) base += "^" + std::to_string(a);
    (e > 0 ? up : down).push_back(base);
  }
  auto join = [](const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "*" : "") + xs[i];
    return out;
  };
  std::string out = up.empty() ? "1" : join(up);
  if (down.size() == 1) out += "/" + down[0];
  if (down.size() > 1) out += "/(" + join(down) + ")";
  return out;
}

inline std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  // c*x0 but c/x0 rather than c*1/x0.
  auto attach = [](const std::string& mono) { return mono.starts_with("1/") ? mono.substr(1) : "*" + mono; };
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p) {
    std::string coef = to_string(c);
    std::string term;
    bool negative = false;
    if (m.is_one()) {
      term = coef;
      if (term[0] == '-' && detail::is_single_token(term)) {
        negative = true;
        term = term.substr(1);
      } else if (!detail::is_single_token(term)) {
        term = "(" + term + ")";
      }
    } else {
      std::string mono = to_string(m);
      if (coef == "1") {
        term = mono;
      } else if (coef == "-1") {
        negative = true;
        term = mono;
      } else if (detail::is_single_token(coef) && coef.find('/') == std::string::npos) {
        if (coef[0] == '-') {
          negative = true;
          coef = coef.substr(1);
        }
        term = coef + attach(mono);
      } else {
        term = "(" + coef + ")" + attach(mono);
      }
    }
    if (first) {
      out += negative ? "-" + term : term;
    } else {
      out += negative ? " - " + term : " + " + term;
    }
    first = false;
  }
  return out;
}

/// (1 - q^s*x_i/x_j), without the power.
inline std::string factor_base_text(const Factor& f) {
  std::string out = "(1 - ";
  if (f.qexp != 0) out += detail::q_pow_text(f.qexp) + "*";
  return out + "x" + std::to_string(f.numvar) + "/x" + std::to_string(f.denvar) + ")";
}

/// scalar*monomial*(numerator factors)/(denominator factors).
inline std::string to_string(const FactoredForm& f) {
  if (f.is_zero()) return "0";
  std::vector<std::string> up, down;
  bool negative = false;
  const QRat& c = f.scalar();
  if (!c.is_one()) {
    std::string s = to_string(c);
    if (s == "-1") {
      negative = true;
    } else if (detail::is_single_token(s) && s.find('/') == std::string::npos) {
      if (s[0] == '-') {
        negative = true;
        s = s.substr(1);
      }
      up.push_back(s);
    } else {
      up.push_back("(" + s + ")");
    }
  }
  for (const auto& [v, e] : f.monomial()) {
    std::string base = "x" + std::to_string(v);
    const int a = e < 0 ? -e : e;
    if (a != 1) base += "^" + std::to_string(a);
    (e > 0 ? up : down).push_back(base);
  }
  for (const auto& fac : f.factors()) {
    std::string base = factor_base_text(fac);
    const int a = fac.exponent < 0 ? -fac.exponent : fac.exponent;
    if (a != 1) base += "^" + std::to_string(a);
    (fac.exponent > 0 ? up : down).push_back(base);
  }
  auto join = [](const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "*" : "") + xs[i];
    return out;
  };
  std::string out = up.empty() ? "1" : join(up);
  if (down.size() == 1) out += "/" + down[0];
  if (down.size() > 1) out += "/(" + join(down) + ")";
  return negative ? "-" + out : out;
}

}  // namespace ctforge
