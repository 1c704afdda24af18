#pragma once

// The witness lemma behind the zero test of the constant-term recursion:
//
//   For A_1..A_s >= 0 and 1 <= k_i <= A_1 + ... + A_s for all i, either
//   1 <= k_i <= A_i for some i, or -A_j <= k_i - k_j <= A_i - 1 for some i < j.
//
// Its proof builds a tournament on 1..s from a hypothetical counterexample:
// for i < j, k_i - k_j >= A_i draws j -> i labelled A_i, and
// k_i - k_j <= -1 - A_j draws i -> j labelled A_j + 1. The tournament has no
// cycles, and the resulting total order forces some k above A_1 + ... + A_s.
//
// Indices in witnesses and arcs are 1-based, as in the lemma.

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ctforge/errors.hpp"

namespace ctforge {

struct Witness {
  enum class Case { kSingle = 1, kPair = 2 };
  Case kind = Case::kSingle;
  int i = 0;
  int j = 0;  // 0 for kSingle

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct TournamentInstance {
  std::vector<long> A;
  std::vector<long> k;

  long total() const { return std::accumulate(A.begin(), A.end(), 0L); }

  /// 1 <= k_i <= A_1 + ... + A_s for all i, A_i >= 0.
  bool satisfies_hypothesis() const {
    if (A.size() != k.size()) return false;
    const long sum = total();
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (A[i] < 0 || k[i] < 1 || k[i] > sum) return false;
    }
    return true;
  }
};

inline bool single_condition(const TournamentInstance& t, int i) {
  const auto ii = static_cast<std::size_t>(i - 1);
  return 1 <= t.k[ii] && t.k[ii] <= t.A[ii];
}

inline bool pair_condition(const TournamentInstance& t, int i, int j) {
  const auto ii = static_cast<std::size_t>(i - 1);
  const auto jj = static_cast<std::size_t>(j - 1);
  const long d = t.k[ii] - t.k[jj];
  return -t.A[jj] <= d && d <= t.A[ii] - 1;
}

/// Re-check a witness against its defining inequalities.
inline bool witness_holds(const TournamentInstance& t, const Witness& w) {
  const int s = static_cast<int>(t.A.size());
  if (w.kind == Witness::Case::kSingle) return w.i >= 1 && w.i <= s && single_condition(t, w.i);
  return w.i >= 1 && w.i < w.j && w.j <= s && pair_condition(t, w.i, w.j);
}

/// First witness in scan order: single conditions by ascending i, then pair
/// conditions by lexicographic (i, j). No hypothesis is assumed.
inline std::optional<Witness> find_witness(const TournamentInstance& t) {
  if (t.A.size() != t.k.size()) throw PreconditionError("find_witness: A and k differ in length");
  const int s = static_cast<int>(t.A.size());
  for (int i = 1; i <= s; ++i) {
    if (single_condition(t, i)) return Witness{Witness::Case::kSingle, i, 0};
  }
  for (int i = 1; i <= s; ++i) {
    for (int j = i + 1; j <= s; ++j) {
      if (pair_condition(t, i, j)) return Witness{Witness::Case::kPair, i, j};
    }
  }
  return std::nullopt;
}

/// Witness for an instance satisfying the hypothesis; the lemma says one
/// always exists.
inline Witness lemma_witness(const TournamentInstance& t) {
  if (!t.satisfies_hypothesis()) {
    throw PreconditionError("lemma_witness: instance violates 1 <= k_i <= A_1 + ... + A_s");
  }
  auto w = find_witness(t);
  if (!w) throw LemmaViolation("lemma_witness: no witness for an admissible instance");
  return *w;
}

struct Arc {
  int from;
  int to;
  long label;
  friend bool operator==(const Arc&, const Arc&) = default;
};

struct TournamentReport {
  std::vector<Arc> arcs;
  /// Set when the arcs contain a cycle.
  std::optional<std::vector<int>> cycle;
  /// The total order i_1 -> ... -> i_s when the tournament is transitive.
  std::optional<std::vector<int>> order;
  /// Every arc u -> v has label <= k_v - k_u.
  bool labels_bounded = true;
  /// Every ascending arc (u < v) has a positive label.
  bool ascending_positive = true;
  /// k_{i_s} - k_{i_1} >= A_{i_2} + ... + A_{i_s} along the order.
  bool order_sum_holds = false;
  /// The order forces k_{i_s} > A_1 + ... + A_s: the contradiction with the
  /// lemma's hypothesis.
  bool exceeds_total = false;
};

/// Cycle / total-order analysis of an arbitrary arc set on 1..s.
inline TournamentReport analyze_tournament(std::vector<Arc> arcs, const TournamentInstance& t) {
  const int s = static_cast<int>(t.A.size());
  TournamentReport rep;
  rep.arcs = std::move(arcs);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(s + 1));
  for (const auto& a : rep.arcs) {
    out[static_cast<std::size_t>(a.from)].push_back(a.to);
    const long gap = t.k[static_cast<std::size_t>(a.to - 1)] - t.k[static_cast<std::size_t>(a.from - 1)];
    if (a.label > gap) rep.labels_bounded = false;
    if (a.from < a.to && a.label <= 0) rep.ascending_positive = false;
  }
  // Depth-first search for a cycle; the finish order reversed is a
  // topological order otherwise.
  std::vector<int> color(static_cast<std::size_t>(s + 1), 0), parent(static_cast<std::size_t>(s + 1), 0);
  std::vector<int> finish;
  std::optional<std::vector<int>> cycle;
  auto dfs = [&](auto&& self, int u) -> void {
    color[static_cast<std::size_t>(u)] = 1;
    for (int v : out[static_cast<std::size_t>(u)]) {
      if (cycle) return;
      if (color[static_cast<std::size_t>(v)] == 0) {
        parent[static_cast<std::size_t>(v)] = u;
        self(self, v);
      } else if (color[static_cast<std::size_t>(v)] == 1) {
        std::vector<int> c{v};
        for (int w = u; w != v; w = parent[static_cast<std::size_t>(w)]) c.insert(c.begin() + 1, w);
        cycle = std::move(c);
      }
    }
    color[static_cast<std::size_t>(u)] = 2;
    finish.push_back(u);
  };
  for (int u = 1; u <= s && !cycle; ++u) {
    if (color[static_cast<std::size_t>(u)] == 0) dfs(dfs, u);
  }
  if (cycle) {
    rep.cycle = std::move(cycle);
    return rep;
  }
  std::vector<int> order(finish.rbegin(), finish.rend());
  rep.order = order;
  if (!order.empty()) {
    long sum = 0;
    for (std::size_t p = 1; p < order.size(); ++p) sum += t.A[static_cast<std::size_t>(order[p] - 1)];
    const long span = t.k[static_cast<std::size_t>(order.back() - 1)] -
                      t.k[static_cast<std::size_t>(order.front() - 1)];
    rep.order_sum_holds = span >= sum;
    rep.exceeds_total = t.k[static_cast<std::size_t>(order.back() - 1)] > t.total();
  }
  return rep;
}

/// The tournament of the lemma's proof. Requires that no pair condition
/// holds (otherwise some pair has no arc); single conditions and the upper
/// bound on k are not required, so relaxed instances can be inspected.
inline TournamentReport build_tournament(const TournamentInstance& t) {
  if (t.A.size() != t.k.size()) throw PreconditionError("build_tournament: A and k differ in length");
  const int s = static_cast<int>(t.A.size());
  std::vector<Arc> arcs;
  for (int i = 1; i <= s; ++i) {
    for (int j = i + 1; j <= s; ++j) {
      if (pair_condition(t, i, j)) {
        throw PreconditionError("build_tournament: pair (" + std::to_string(i) + "," +
                                std::to_string(j) + ") is a witness");
      }
      const long d = t.k[static_cast<std::size_t>(i - 1)] - t.k[static_cast<std::size_t>(j - 1)];
      if (d >= t.A[static_cast<std::size_t>(i - 1)]) {
        arcs.push_back(Arc{j, i, t.A[static_cast<std::size_t>(i - 1)]});
      } else {
        arcs.push_back(Arc{i, j, t.A[static_cast<std::size_t>(j - 1)] + 1});
      }
    }
  }
  return analyze_tournament(std::move(arcs), t);
}

struct LemmaCheckReport {
  std::size_t vectors = 0;    // A-vectors enumerated
  std::size_t instances = 0;  // (A, k) pairs checked
  std::size_t single_witnesses = 0;
  std::size_t pair_witnesses = 0;
  std::size_t counterexamples = 0;
};

/// Every A with 1 <= s <= s_max, 0 <= A_i <= a_max, and every admissible k.
/// Each witness is re-verified by witness_holds.
inline LemmaCheckReport exhaustive_lemma_check(int s_max, long a_max) {
  LemmaCheckReport rep;
  for (int s = 1; s <= s_max; ++s) {
    std::vector<long> A(static_cast<std::size_t>(s), 0);
    while (true) {
      ++rep.vectors;
      TournamentInstance inst{A, std::vector<long>(static_cast<std::size_t>(s), 1)};
      const long total = inst.total();
      if (total >= 1) {
        while (true) {
          ++rep.instances;
          auto w = find_witness(inst);
          if (!w || !witness_holds(inst, *w)) {
            ++rep.counterexamples;
          } else if (w->kind == Witness::Case::kSingle) {
            ++rep.single_witnesses;
          } else {
            ++rep.pair_witnesses;
          }
          std::size_t p = 0;
          while (p < inst.k.size() && inst.k[p] == total) inst.k[p++] = 1;
          if (p == inst.k.size()) break;
          ++inst.k[p];
        }
      }
      std::size_t p = 0;
      while (p < A.size() && A[p] == a_max) A[p++] = 0;
      if (p == A.size()) break;
      ++A[p];
    }
  }
  return rep;
}

}  // namespace ctforge
