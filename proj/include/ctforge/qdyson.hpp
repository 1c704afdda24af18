#pragma once

// The q-Dyson product, the polynomials P_a(q^b) and Q_a(q^b), and the
// rational functions Q(b | r; k) of the constant-term recursion.
//
// Variables: x_0 is the distinguished variable, x_1..x_n carry a_1..a_n.
// Q(b) uses positive b with CT Q(b) = Q_a(q^{-b}).

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctforge/ct_engine.hpp"
#include "ctforge/tournament.hpp"

namespace ctforge {

struct DysonParams {
  std::vector<long> a;       // a_1..a_n
  std::optional<long> b;     // exponent of q^b (a_0 when nonnegative)

  DysonParams() = default;
  explicit DysonParams(std::vector<long> a_in, std::optional<long> b_in = std::nullopt)
      : a(std::move(a_in)), b(b_in) {
    for (long x : a) {
      if (x < 0) throw PreconditionError("DysonParams: negative parameter " + std::to_string(x));
    }
  }

  int n() const { return static_cast<int>(a.size()); }
  long asum() const { return std::accumulate(a.begin(), a.end(), 0L); }
  /// a_j for 1 <= j <= n.
  long at(int j) const { return a.at(static_cast<std::size_t>(j - 1)); }
};

/// Index sequences 0 < r_1 < ... < r_s <= n and 1 <= k_i <= b.
struct ProofPath {
  std::vector<int> r;
  std::vector<long> k;

  std::size_t size() const noexcept { return r.size(); }
  bool empty() const noexcept { return r.empty(); }
  /// x_{r_s}, or x_0 for the empty path.
  VarIndex last_var() const { return r.empty() ? 0 : r.back(); }
  long last_k() const { return k.empty() ? 0 : k.back(); }

  ProofPath extended(int r_next, long k_next) const {
    ProofPath out = *this;
    out.r.push_back(r_next);
    out.k.push_back(k_next);
    return out;
  }

  friend bool operator==(const ProofPath&, const ProofPath&) = default;
};

inline void validate_path(const ProofPath& path, int n, long b) {
  if (path.r.size() != path.k.size()) throw PreconditionError("ProofPath: r and k differ in length");
  int prev = 0;
  for (std::size_t i = 0; i < path.r.size(); ++i) {
    if (path.r[i] <= prev || path.r[i] > n) {
      throw PreconditionError("ProofPath: r must satisfy 0 < r_1 < ... < r_s <= n");
    }
    if (path.k[i] < 1 || path.k[i] > b) throw PreconditionError("ProofPath: k_i must lie in [1, b]");
    prev = path.r[i];
  }
}

namespace detail {

inline void check_nonnegative(long a0, const std::vector<long>& a) {
  if (a0 < 0) throw PreconditionError("negative parameter a0");
  for (long x : a) {
    if (x < 0) throw PreconditionError("negative parameter " + std::to_string(x));
  }
}

/// (x_i/x_j)_{a_i} (q x_j/x_i)_{a_j} for i < j.
inline void append_pair(FactoredForm& f, VarIndex i, VarIndex j, long ai, long aj) {
  f = f * qpochhammer(ExpVec::ratio(i, j), 0, ai);
  f = f * qpochhammer(ExpVec::ratio(j, i), 1, aj);
}

}  // namespace detail

/// prod_{0 <= i < j <= n} (x_i/x_j)_{a_i} (q x_j/x_i)_{a_j}, a = (a0, a_1..a_n).
inline FactoredForm build_qdyson_lhs(long a0, const std::vector<long>& a) {
  detail::check_nonnegative(a0, a);
  std::vector<long> all{a0};
  all.insert(all.end(), a.begin(), a.end());
  FactoredForm f(1);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      detail::append_pair(f, static_cast<VarIndex>(i), static_cast<VarIndex>(j), all[i], all[j]);
    }
  }
  return f;
}

/// (q)_{a0 + ... + an} / ((q)_{a0} ... (q)_{an})
inline QRat rhs_qdyson(long a0, const std::vector<long>& a) {
  detail::check_nonnegative(a0, a);
  long total = a0;
  QRat den = qpoch_q(1, a0);
  for (long x : a) {
    total = checked_add(total, x);
    den *= qpoch_q(1, x);
  }
  return qpoch_q(1, total) / den;
}

/// P_a(q^b) = (1 - q^{b+a}) ... (1 - q^{b+1}) / ((q)_{a_1} ... (q)_{a_n})
inline QRat eval_Pa(const std::vector<long>& a, long b) {
  DysonParams p(a);
  QRat num(1);
  for (long m = 1; m <= p.asum(); ++m) num *= QRat::one_minus_q_power(checked_add(b, m));
  QRat den(1);
  for (long x : a) den *= qpoch_q(1, x);
  return num / den;
}

/// prod_j (x_0/x_j)_b (x_j q/x_0)_{a_j} prod_{1 <= i < j <= n} (...)
/// For b < 0 the first Pochhammer is a reciprocal product.
inline FactoredForm qa_integrand(const std::vector<long>& a, long b) {
  DysonParams p(a);
  FactoredForm f(1);
  for (int j = 1; j <= p.n(); ++j) {
    f = f * qpochhammer(ExpVec::ratio(0, j), 0, b);
    f = f * qpochhammer(ExpVec::ratio(j, 0), 1, p.at(j));
  }
  for (int i = 1; i <= p.n(); ++i) {
    for (int j = i + 1; j <= p.n(); ++j) detail::append_pair(f, i, j, p.at(i), p.at(j));
  }
  return f;
}

/// Q_a(q^b). For b >= 0 a Laurent polynomial's constant term; for b < 0 the
/// integrand is read as a series in x_0 (truncated at x_0-degree a).
inline QRat eval_Qa(const std::vector<long>& a, long b, ExpansionStats* stats = nullptr) {
  FactoredForm f = qa_integrand(a, b);
  if (b >= 0) return ct_all_bruteforce(f, stats);
  return ct_all_x0_truncated(f, DysonParams(a).asum(), stats);
}

/// Q(b): prod_j (x_j q/x_0)_{a_j} / prod_{i=1..b} (1 - x_0/(x_j q^i)) times
/// the pair products over 1 <= i < j <= n.
inline FactoredForm build_Qcal(long b, const std::vector<long>& a) {
  if (b < 1) throw PreconditionError("build_Qcal: b must be positive");
  DysonParams p(a);
  FactoredForm f(1);
  for (int j = 1; j <= p.n(); ++j) {
    f = f * qpochhammer(ExpVec::ratio(j, 0), 1, p.at(j));
    for (long i = 1; i <= b; ++i) f.multiply_factor(make_factor(-i, 0, j, -1));
  }
  for (int i = 1; i <= p.n(); ++i) {
    for (int j = i + 1; j <= p.n(); ++j) detail::append_pair(f, i, j, p.at(i), p.at(j));
  }
  return f;
}

/// E_{r,k}: x_{r_i} -> x_{r_s} q^{k_s - k_i} for i = 0..s-1, with r_0 = k_0 = 0.
inline Substitution substitution_E(const ProofPath& path) {
  if (path.empty()) throw PreconditionError("substitution_E: empty path");
  const VarIndex rs = path.last_var();
  const long ks = path.last_k();
  Substitution e;
  e.set(0, VarImage{rs, ks});
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    e.set(path.r[i], VarImage{rs, checked_sub(ks, path.k[i])});
  }
  return e;
}

/// T_{j,k}: x_{r_s} -> x_j q^{k - k_s}.
inline Substitution substitution_T(VarIndex rs, VarIndex j, long k, long ks) {
  if (j == rs) throw PreconditionError("substitution_T: j equals r_s");
  Substitution t;
  t.set(rs, VarImage{j, checked_sub(k, ks)});
  return t;
}

inline FactoredForm substitute_E(const ProofPath& path, const FactoredForm& f) {
  return substitution_E(path).apply(f);
}

inline FactoredForm substitute_T(VarIndex rs, VarIndex j, long k, long ks, const FactoredForm& f) {
  return substitution_T(rs, j, k, ks).apply(f);
}

/// (T_{j,k} o E_{r,k})(x_{r_i}) = E_{(r,j),(k,k)}(x_{r_i}) for every generator
/// x_{r_0} = x_0, x_{r_1}, ..., x_{r_s}. The empty path has E = identity.
inline bool composition_law_holds(const ProofPath& path, VarIndex j, long k) {
  const Substitution e = path.empty() ? Substitution{} : substitution_E(path);
  const Substitution composed = e.then(substitution_T(path.last_var(), j, k, path.last_k()));
  const Substitution direct = substitution_E(path.extended(j, k));
  if (composed.image(0) != direct.image(0)) return false;
  for (int r : path.r) {
    if (composed.image(r) != direct.image(r)) return false;
  }
  return true;
}

/// Q(b | r; k) = E_{r,k}[Q(b) prod_i (1 - x_0/(x_{r_i} q^{k_i}))]. The
/// cancelling factors are removed before substituting, so no denominator is
/// sent to zero.
inline FactoredForm build_Qbrk(long b, const std::vector<long>& a, const ProofPath& path) {
  DysonParams p(a);
  validate_path(path, p.n(), b);
  FactoredForm f = build_Qcal(b, a);
  if (path.empty()) return f;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!f.cancel_factor(make_factor(-path.k[i], 0, path.r[i], -1))) {
      throw UncancelledPoleError("build_Qbrk: cancelling factor for (r=" + std::to_string(path.r[i]) +
                                 ", k=" + std::to_string(path.k[i]) + ") not found");
    }
  }
  return substitute_E(path, f);
}

/// Zero test for Q(b | r; k): a witness that one of its numerator factors is
/// (q^0 - 1) = 0 after substitution. Single witness i: (q^{1-k_i})_{a_{r_i}};
/// pair witness (i, j): (q^{k_j - k_i - a_{r_j}})_{a_{r_i} + a_{r_j}}.
inline std::optional<Witness> zero_test_case_i(const std::vector<long>& a, const ProofPath& path) {
  TournamentInstance inst;
  for (std::size_t i = 0; i < path.size(); ++i) {
    inst.A.push_back(a.at(static_cast<std::size_t>(path.r[i] - 1)));
    inst.k.push_back(path.k[i]);
  }
  return find_witness(inst);
}

/// (n - s)(a_{r_1} + ... + a_{r_s} - b)
inline long expected_degree(const std::vector<long>& a, const ProofPath& path, long b) {
  long sum = 0;
  for (int r : path.r) sum += a.at(static_cast<std::size_t>(r - 1));
  return (static_cast<long>(a.size()) - static_cast<long>(path.size())) * (sum - b);
}

/// One application of the partial-fraction step at x_{r_s}.
struct RecursionStep {
  VarIndex var = 0;
  long degree = 0;
  std::vector<ProofPath> children;
  /// Residues of the partial-fraction step, aligned with `children`.
  std::vector<FactoredForm> residues;
};

/// CT_{x_{r_s}} Q(b | r; k) = sum over r_s < r' <= n, 1 <= k' <= b of
/// Q(b | r, r'; k, k'). Checks properness against the degree formula, that the
/// small poles are exactly the pairs (r', k'), and that every residue equals
/// the directly built child (the composition law T o E = E').
inline RecursionStep recurse_case_ii(long b, const std::vector<long>& a, const ProofPath& path) {
  DysonParams p(a);
  const int n = p.n();
  const long s = static_cast<long>(path.size());
  if (s >= n) throw PreconditionError("recurse_case_ii: path already has length n");
  if (!path.empty()) {
    if (zero_test_case_i(a, path)) throw PreconditionError("recurse_case_ii: a zero witness applies");
    long sum = 0;
    for (int r : path.r) sum += p.at(r);
    bool some_large = false;
    for (long k : path.k) some_large = some_large || k > sum;
    if (!some_large) {
      throw LemmaViolation("recurse_case_ii: no witness although every k_i <= a_{r_1}+...+a_{r_s}");
    }
  }
  FactoredForm f = build_Qbrk(b, a, path);
  RecursionStep step;
  step.var = path.last_var();
  step.degree = degree_in_var(f, step.var);
  const long expected = expected_degree(a, path, b);
  if (step.degree != expected || step.degree >= 0) {
    throw ProofInvariantError("recurse_case_ii: degree " + std::to_string(step.degree) + " in x" +
                              std::to_string(step.var) + ", expected negative " +
                              std::to_string(expected));
  }
  ProperRat proper = ProperRat::from_factored(f, step.var);
  auto residues = partial_fraction_residues(proper);
  for (auto& res : residues) {
    // pole x_j q^{k' - k_s}
    const long k_next = checked_add(res.pole.qexp, path.last_k());
    step.children.push_back(path.extended(res.pole.var, k_next));
    step.residues.push_back(std::move(res.value));
  }
  // The small poles must be exactly (r_s, n] x [1, b].
  std::vector<ProofPath> expected_children;
  for (int r_next = path.last_var() + 1; r_next <= n; ++r_next) {
    for (long k_next = 1; k_next <= b; ++k_next) expected_children.push_back(path.extended(r_next, k_next));
  }
  auto by_key = [](const ProofPath& x, const ProofPath& y) {
    return std::pair(x.r.back(), x.k.back()) < std::pair(y.r.back(), y.k.back());
  };
  std::vector<std::size_t> idx(step.children.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return by_key(step.children[x], step.children[y]);
  });
  RecursionStep sorted{step.var, step.degree, {}, {}};
  for (std::size_t i : idx) {
    sorted.children.push_back(step.children[i]);
    sorted.residues.push_back(step.residues[i]);
  }
  if (sorted.children != expected_children) {
    throw ProofInvariantError("recurse_case_ii: small poles do not match (r_s, n] x [1, b]");
  }
  for (std::size_t i = 0; i < sorted.children.size(); ++i) {
    FactoredForm direct = build_Qbrk(b, a, sorted.children[i]);
    if (!same_value_representation(direct, sorted.residues[i])) {
      throw ProofInvariantError("recurse_case_ii: residue differs from Q(b | r'; k')");
    }
  }
  return sorted;
}

}  // namespace ctforge
