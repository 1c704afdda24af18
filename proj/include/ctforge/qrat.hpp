#pragma once

// Exact rational functions in q: the coefficient field of every series the
// engine manipulates. Complex coefficients are never needed, so the base
// field is the rationals.

#include <optional>
#include <utility>

#include "ctforge/qpoly.hpp"

namespace ctforge {

/// num/den in lowest terms with den monic. Zero is 0/1. Because the
/// representative is unique, operator== is equality of field elements.
class QRat {
 public:
  QRat() : den_(1) {}
  QRat(long c) : num_(c), den_(1) {}                // NOLINT(google-explicit-constructor)
  QRat(const BigRat& c) : num_(c), den_(1) {}       // NOLINT(google-explicit-constructor)
  QRat(QPoly p) : num_(std::move(p)), den_(1) {}    // NOLINT(google-explicit-constructor)

  /// Canonical representative of num/den.
  static QRat normalize(QPoly num, QPoly den) {
    if (den.is_zero()) throw DomainError("QRat: zero denominator");
    QRat r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.canonicalize();
    return r;
  }

  /// q^k for any integer k.
  static QRat q_power(long k) {
    QRat r;
    if (k >= 0) {
      r.num_ = QPoly::q_power(k);
    } else {
      r.num_ = QPoly(1);
      r.den_ = QPoly::q_power(-k);
    }
    return r;
  }

  /// 1 - q^k, the value of a binomial factor whose variables cancelled.
  static QRat one_minus_q_power(long k) { return QRat(1) - q_power(k); }

  const QPoly& num() const noexcept { return num_; }
  const QPoly& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  /// k when this equals q^k exactly (coefficient 1), otherwise nullopt.
  std::optional<long> as_q_power() const {
    if (!num_.is_monomial() || !den_.is_monomial()) return std::nullopt;
    if (num_.leading() != 1) return std::nullopt;
    // den is monic; canonical form never has q dividing both.
    return num_.degree() - den_.degree();
  }

  QRat operator-() const {
    QRat r(*this);
    r.num_ = -r.num_;
    return r;
  }

  friend QRat operator+(const QRat& a, const QRat& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
      return from_parts(a.num_ + b.num_, a.den_, !a.den_.is_one());
    }
    return normalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }

  friend QRat operator-(const QRat& a, const QRat& b) { return a + (-b); }

  friend QRat operator*(const QRat& a, const QRat& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_one() && b.den_.is_one()) return QRat(a.num_ * b.num_);
    // Cross-cancel first: gcd(a.num, a.den) = 1 already.
    QPoly g1 = gcd(a.num_, b.den_);
    QPoly g2 = gcd(b.num_, a.den_);
    QPoly n = a.num_.divexact(g1) * b.num_.divexact(g2);
    QPoly d = a.den_.divexact(g2) * b.den_.divexact(g1);
    return from_parts(std::move(n), std::move(d), false);
  }

  friend QRat operator/(const QRat& a, const QRat& b) { return a * b.inverse(); }

  QRat& operator+=(const QRat& o) { return *this = *this + o; }
  QRat& operator-=(const QRat& o) { return *this = *this - o; }
  QRat& operator*=(const QRat& o) { return *this = *this * o; }
  QRat& operator/=(const QRat& o) { return *this = *this / o; }

  QRat inverse() const {
    if (is_zero()) throw DomainError("QRat: division by zero");
    return from_parts(den_, num_, false);
  }

  /// Multiply by q^k without a gcd when possible.
  QRat times_q_power(long k) const {
    if (k == 0 || is_zero()) return *this;
    if (k > 0) {
      if (den_.is_one()) return QRat(num_.shifted(k));
      return *this * q_power(k);
    }
    return *this * q_power(k);
  }

  friend bool operator==(const QRat& a, const QRat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  // Build from a pair already known to be coprime unless `reduce`.
  static QRat from_parts(QPoly n, QPoly d, bool reduce) {
    QRat r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    if (reduce) {
      r.canonicalize();
    } else {
      r.make_den_monic();
    }
    return r;
  }

  void canonicalize() {
    if (num_.is_zero()) {
      den_ = QPoly(1);
      return;
    }
    if (!den_.is_constant()) {
      QPoly g = gcd(num_, den_);
      if (!g.is_one()) {
        num_ = num_.divexact(g);
        den_ = den_.divexact(g);
      }
    }
    make_den_monic();
  }

  void make_den_monic() {
    if (num_.is_zero()) {
      den_ = QPoly(1);
      return;
    }
    const BigRat lead = den_.leading();
    if (lead != 1) {
      BigRat inv = BigRat(1) / lead;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  QPoly num_;
  QPoly den_;
};

/// a^e for any integer e (negative needs a != 0).
inline QRat pow(const QRat& a, long e) {
  if (e < 0) return pow(a.inverse(), -e);
  QRat result(1);
  QRat base = a;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

/// Value at q = v of the canonical form. Throws PoleError only for a genuine
/// pole, since common factors are already cancelled.
inline BigRat specialize_q(const QRat& f, const BigRat& v) {
  BigRat d = f.den().evaluate(v);
  if (sgn(d) == 0) throw PoleError("specialize_q: pole at the requested value of q");
  return f.num().evaluate(v) / d;
}

}  // namespace ctforge
