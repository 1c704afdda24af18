#pragma once

// Identity verifiers: brute-force constant terms against the product formula,
// and a replay of the polynomial argument (base case, degree bound, roots,
// uniqueness of the interpolant).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctforge/certificate.hpp"

namespace ctforge {

/// Coefficients c_0..c_d (d = xs.size() - 1) of the polynomial through the
/// points (xs[i], ys[i]); Gaussian elimination on the Vandermonde system.
inline std::vector<QRat> interpolate(const std::vector<QRat>& xs, const std::vector<QRat>& ys) {
  const std::size_t m = xs.size();
  if (ys.size() != m) throw PreconditionError("interpolate: size mismatch");
  std::vector<std::vector<QRat>> rows(m, std::vector<QRat>(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    QRat p(1);
    for (std::size_t j = 0; j < m; ++j) {
      rows[i][j] = p;
      p *= xs[i];
    }
    rows[i][m] = ys[i];
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && rows[piv][col].is_zero()) ++piv;
    if (piv == m) throw DomainError("interpolate: repeated nodes");
    std::swap(rows[col], rows[piv]);
    const QRat inv = rows[col][col].inverse();
    for (std::size_t j = col; j <= m; ++j) rows[col][j] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == col || rows[i][col].is_zero()) continue;
      const QRat f = rows[i][col];
      for (std::size_t j = col; j <= m; ++j) rows[i][j] -= f * rows[col][j];
    }
  }
  std::vector<QRat> coeffs(m);
  for (std::size_t i = 0; i < m; ++i) coeffs[i] = rows[i][m];
  return coeffs;
}

inline QRat evaluate_poly(const std::vector<QRat>& coeffs, const QRat& x) {
  QRat acc;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

struct DegreeCheckReport {
  std::vector<QRat> values;        // Q_a(q^b) for b = 0..a+1
  std::vector<QRat> coefficients;  // fit in t = q^b through b = 0..a
  QRat predicted;                  // fit at t = q^{a+1}
  bool pass = false;
};

/// Q_a(q^b) is a polynomial of degree <= a in t = q^b: the fit through
/// b = 0..a must predict b = a + 1.
inline DegreeCheckReport interpolate_Qa_degree_check(const std::vector<long>& a) {
  DysonParams p(a);
  const long deg = p.asum();
  DegreeCheckReport rep;
  std::vector<QRat> xs;
  for (long b = 0; b <= deg + 1; ++b) rep.values.push_back(eval_Qa(a, b));
  for (long b = 0; b <= deg; ++b) xs.push_back(QRat::q_power(b));
  std::vector<QRat> ys(rep.values.begin(), rep.values.begin() + deg + 1);
  rep.coefficients = interpolate(xs, ys);
  rep.predicted = evaluate_poly(rep.coefficients, QRat::q_power(deg + 1));
  rep.pass = rep.predicted == rep.values.back();
  return rep;
}

/// CT (x_0/x_1)_l (q x_1/x_0)_m through the two-variable route: rewrite the
/// product as q^{C(m+1,2)} (-x_1/x_0)^m (x_0/x_1 q^{-m})_{l+m} and read the
/// x_0-free coefficient off the finite q-binomial theorem
/// (u)_N = sum_k q^{C(k,2)} [N, k] (-u)^k at k = m.
inline QRat two_variable_constant_term(long l, long m) {
  const long sign = (m % 2 == 0) ? 1 : -1;
  QRat term = QRat::q_power(m * (m + 1) / 2) * QRat(sign);         // q^{C(m+1,2)} (-1)^m
  term *= QRat::q_power(m * (m - 1) / 2) * qbinomial(l + m, m);     // q^{C(m,2)} [l+m, m]
  term *= QRat(sign) * QRat::q_power(-m * m);                       // (-1)^m (q^{-m})^m
  return term;
}

enum class VerifyMethod { kBrute, kReplay, kBoth };

inline const char* to_string(VerifyMethod m) {
  switch (m) {
    case VerifyMethod::kBrute: return "brute";
    case VerifyMethod::kReplay: return "replay";
    case VerifyMethod::kBoth: return "both";
  }
  return "?";
}

struct VerifyReport {
  long a0 = 0;
  std::vector<long> a;
  VerifyMethod method = VerifyMethod::kBrute;
  QRat rhs;
  std::optional<QRat> brute_lhs;
  std::optional<QRat> replay_lhs;
  bool holds = false;
  std::size_t peak_terms = 0;            // brute force
  std::size_t certificate_nodes = 0;     // replay
  std::vector<std::string> log;
};

namespace detail {

inline QRat replay_lhs(long a0, const std::vector<long>& a, VerifyReport& rep);

/// Value of the a0 = 0 instance: the identity on x_1..x_n.
inline QRat replay_base(const std::vector<long>& a, VerifyReport& rep) {
  if (a.size() == 1) return QRat(1);
  if (a.size() == 2) return two_variable_constant_term(a[0], a[1]);
  return replay_lhs(a[0], std::vector<long>(a.begin() + 1, a.end()), rep);
}

inline QRat replay_lhs(long a0, const std::vector<long>& a, VerifyReport& rep) {
  if (a.empty()) return QRat(1);
  DysonParams p(a);
  const long deg = p.asum();
  QRat base = replay_base(a, rep);
  if (base != eval_Pa(a, 0)) {
    throw CertificationError("replay: base case a0 = 0 disagrees with P_a(1)");
  }
  DegreeCheckReport dc = interpolate_Qa_degree_check(a);
  if (!dc.pass) throw CertificationError("replay: degree bound fails for Q_a");
  if (dc.values.front() != base) throw CertificationError("replay: Q_a(1) differs from the base value");
  for (long b = 1; b <= deg; ++b) {
    Certificate cert = certify_main_lemma(a, b);
    rep.certificate_nodes += certificate_stats(cert).nodes;
  }
  // The degree <= a polynomial with value `base` at t = 1 and zeros at
  // t = q^{-1}, ..., q^{-a}.
  std::vector<QRat> xs{QRat(1)}, ys{base};
  for (long b = 1; b <= deg; ++b) {
    xs.push_back(QRat::q_power(-b));
    ys.push_back(QRat());
  }
  QRat value = evaluate_poly(interpolate(xs, ys), QRat::q_power(a0));
  rep.log.push_back("replay n=" + std::to_string(a.size()) + ": base, degree <= " + std::to_string(deg) +
                    ", roots b=1.." + std::to_string(deg) + " certified");
  return value;
}

}  // namespace detail

/// Checks CT of the q-Dyson product against (q)_{a0+...+an} / prod (q)_{ai}.
inline VerifyReport verify_qdyson(long a0, const std::vector<long>& a, VerifyMethod method) {
  VerifyReport rep;
  rep.a0 = a0;
  rep.a = a;
  rep.method = method;
  rep.rhs = rhs_qdyson(a0, a);
  rep.holds = true;
  if (method != VerifyMethod::kReplay) {
    ExpansionStats st;
    rep.brute_lhs = ct_all_bruteforce(build_qdyson_lhs(a0, a), &st);
    rep.peak_terms = st.peak_terms;
    rep.holds = rep.holds && *rep.brute_lhs == rep.rhs;
  }
  if (method != VerifyMethod::kBrute) {
    rep.replay_lhs = detail::replay_lhs(a0, a, rep);
    rep.holds = rep.holds && *rep.replay_lhs == rep.rhs;
  }
  return rep;
}

inline BigInt multinomial(const std::vector<long>& parts) {
  BigInt num, den(1), f;
  unsigned long total = 0;
  for (long p : parts) {
    if (p < 0) throw PreconditionError("multinomial: negative part");
    total += static_cast<unsigned long>(p);
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(p));
    den *= f;
  }
  mpz_fac_ui(num.get_mpz_t(), total);
  return num / den;
}

/// prod_{i != j} (1 - x_i/x_j)^{a_j} over x_0..x_n.
inline FactoredForm build_dyson_product(long a0, const std::vector<long>& a) {
  detail::check_nonnegative(a0, a);
  std::vector<long> all{a0};
  all.insert(all.end(), a.begin(), a.end());
  FactoredForm f(1);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (i == j || all[j] == 0) continue;
      f.multiply_factor(make_factor(0, static_cast<VarIndex>(i), static_cast<VarIndex>(j),
                                    static_cast<int>(all[j])));
    }
  }
  return f;
}

struct DysonQ1Report {
  long a0 = 0;
  std::vector<long> a;
  BigRat lhs;
  BigInt multinomial;
  bool holds = false;
};

/// CT prod_{i != j} (1 - x_i/x_j)^{a_j} = (a0 + ... + an)! / (a0! ... an!).
inline DysonQ1Report verify_dyson_q1(long a0, const std::vector<long>& a) {
  DysonQ1Report rep;
  rep.a0 = a0;
  rep.a = a;
  QRat ct = ct_all_bruteforce(build_dyson_product(a0, a));
  rep.lhs = specialize_q(ct, BigRat(1));
  std::vector<long> all{a0};
  all.insert(all.end(), a.begin(), a.end());
  rep.multinomial = multinomial(all);
  rep.holds = ct.is_polynomial() && ct.num().is_constant() && rep.lhs == BigRat(rep.multinomial);
  return rep;
}

}  // namespace ctforge
