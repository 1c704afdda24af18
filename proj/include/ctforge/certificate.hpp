#pragma once

// Machine-checkable replay of the vanishing of CT Q(b) for 1 <= b <= a.
//
// The tree starts at Q(b) (empty path) and follows the partial-fraction
// recursion: a node either carries a zero witness for Q(b | r; k), or is
// proper in x_{r_s} and splits into the children (r, r'; k, k') for
// r_s < r' <= n, 1 <= k' <= b. Every leaf is a certified zero, so the
// constant term of the root vanishes.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ctforge/qdyson.hpp"

namespace ctforge {

enum class NodeStatus { kZeroCase1, kZeroCase2, kRecursed, kBaseFullDepth };

inline const char* to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::kZeroCase1: return "zero_case1";
    case NodeStatus::kZeroCase2: return "zero_case2";
    case NodeStatus::kRecursed: return "recursed";
    case NodeStatus::kBaseFullDepth: return "base_full_depth";
  }
  return "?";
}

inline std::optional<NodeStatus> parse_status(const std::string& s) {
  if (s == "zero_case1") return NodeStatus::kZeroCase1;
  if (s == "zero_case2") return NodeStatus::kZeroCase2;
  if (s == "recursed") return NodeStatus::kRecursed;
  if (s == "base_full_depth") return NodeStatus::kBaseFullDepth;
  return std::nullopt;
}

struct CertificateNode {
  ProofPath path;
  NodeStatus status = NodeStatus::kRecursed;
  std::optional<Witness> witness;  // zero_case1 / zero_case2
  VarIndex var = 0;                // recursed: extraction variable x_{r_s}
  long degree = 0;                 // recursed: degree in x_{r_s}
  bool oracle_checked = false;     // constant term confirmed zero by series expansion
  std::vector<CertificateNode> children;
};

struct Certificate {
  std::vector<long> a;
  long b = 0;
  CertificateNode root;

  int n() const { return static_cast<int>(a.size()); }
};

struct CertifyOptions {
  /// Recursed nodes whose constant term is re-derived by series expansion.
  /// Non-root nodes are sampled first; the root is used when none exist.
  std::size_t oracle_nodes = 0;
};

struct CertificateStats {
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  std::size_t zero_case1 = 0;
  std::size_t zero_case2 = 0;
  std::size_t recursed = 0;
  std::size_t base_full_depth = 0;
  std::size_t oracle_checked = 0;
  std::size_t max_depth = 0;
};

inline void visit(const CertificateNode& node, const std::function<void(const CertificateNode&)>& fn) {
  fn(node);
  for (const auto& c : node.children) visit(c, fn);
}

inline CertificateStats certificate_stats(const Certificate& cert) {
  CertificateStats st;
  visit(cert.root, [&](const CertificateNode& nd) {
    ++st.nodes;
    st.max_depth = std::max(st.max_depth, nd.path.size());
    if (nd.oracle_checked) ++st.oracle_checked;
    switch (nd.status) {
      case NodeStatus::kZeroCase1: ++st.zero_case1; break;
      case NodeStatus::kZeroCase2: ++st.zero_case2; break;
      case NodeStatus::kRecursed: ++st.recursed; break;
      case NodeStatus::kBaseFullDepth: ++st.base_full_depth; break;
    }
    if (nd.children.empty()) ++st.leaves;
  });
  return st;
}

inline std::string describe(const ProofPath& p) {
  std::string out = "(r=[";
  for (std::size_t i = 0; i < p.r.size(); ++i) out += (i ? "," : "") + std::to_string(p.r[i]);
  out += "]; k=[";
  for (std::size_t i = 0; i < p.k.size(); ++i) out += (i ? "," : "") + std::to_string(p.k[i]);
  return out + "])";
}

namespace detail {

inline CertificateNode certify_node(long b, const std::vector<long>& a, const ProofPath& path) {
  CertificateNode node;
  node.path = path;
  const int n = static_cast<int>(a.size());
  if (!path.empty()) {
    if (auto w = zero_test_case_i(a, path)) {
      node.status = w->kind == Witness::Case::kSingle ? NodeStatus::kZeroCase1 : NodeStatus::kZeroCase2;
      node.witness = w;
      if (!build_Qbrk(b, a, path).is_zero()) {
        throw CertificationError("witness does not annihilate Q(b | r; k) at " + describe(path));
      }
      return node;
    }
    if (static_cast<int>(path.size()) == n) {
      if (!build_Qbrk(b, a, path).is_zero()) {
        throw CertificationError("full-depth node without a witness is nonzero at " + describe(path));
      }
      node.status = NodeStatus::kBaseFullDepth;
      return node;
    }
  }
  RecursionStep step = recurse_case_ii(b, a, path);
  node.status = NodeStatus::kRecursed;
  node.var = step.var;
  node.degree = step.degree;
  for (const auto& child : step.children) node.children.push_back(certify_node(b, a, child));
  return node;
}

inline void collect_recursed(CertificateNode& node, std::vector<CertificateNode*>& out) {
  if (node.status == NodeStatus::kRecursed) out.push_back(&node);
  for (auto& c : node.children) collect_recursed(c, out);
}

}  // namespace detail

/// Constant term of Q(b | r; k) over all variables by series expansion.
inline QRat oracle_constant_term(long b, const std::vector<long>& a, const ProofPath& path) {
  if (path.empty()) return ct_all_x0_truncated(build_Qcal(b, a), DysonParams(a).asum());
  return ct_all_series(build_Qbrk(b, a, path));
}

/// Replays the vanishing of CT Q(b) for 1 <= b <= a_1 + ... + a_n.
inline Certificate certify_main_lemma(const std::vector<long>& a, long b, CertifyOptions opts = {}) {
  DysonParams p(a);
  if (b < 1 || b > p.asum()) {
    throw PreconditionError("certify_main_lemma: b = " + std::to_string(b) + " outside [1, " +
                            std::to_string(p.asum()) + "]");
  }
  Certificate cert;
  cert.a = a;
  cert.b = b;
  cert.root = detail::certify_node(b, a, ProofPath{});
  if (opts.oracle_nodes > 0) {
    std::vector<CertificateNode*> recursed;
    detail::collect_recursed(cert.root, recursed);
    std::vector<CertificateNode*> sample;
    for (auto* nd : recursed) {
      if (!nd->path.empty() && sample.size() < opts.oracle_nodes) sample.push_back(nd);
    }
    if (sample.empty()) sample.push_back(&cert.root);
    for (auto* nd : sample) {
      if (!oracle_constant_term(b, a, nd->path).is_zero()) {
        throw CertificationError("series oracle finds a nonzero constant term at " + describe(nd->path));
      }
      nd->oracle_checked = true;
    }
  }
  return cert;
}

/// Re-derive every claim in a certificate: path validity, child enumeration,
/// degrees, witnesses, that each zero leaf's Q(b | r; k) vanishes, and the
/// series oracle on nodes marked oracle_checked. Returns an empty string on
/// success, otherwise the first problem found.
inline std::string recheck_certificate(const Certificate& cert) {
  try {
    DysonParams p(cert.a);
    const int n = p.n();
    if (cert.b < 1 || cert.b > p.asum()) return "b outside [1, a]";
    if (!cert.root.path.empty()) return "root path must be empty";
    std::string problem;
    std::function<void(const CertificateNode&)> check = [&](const CertificateNode& nd) {
      if (!problem.empty()) return;
      validate_path(nd.path, n, cert.b);
      const std::string where = describe(nd.path);
      if (nd.oracle_checked && !oracle_constant_term(cert.b, cert.a, nd.path).is_zero()) {
        problem = "series oracle finds a nonzero constant term at " + where;
        return;
      }
      switch (nd.status) {
        case NodeStatus::kZeroCase1:
        case NodeStatus::kZeroCase2: {
          if (!nd.children.empty()) { problem = "zero leaf with children at " + where; return; }
          if (!nd.witness) { problem = "missing witness at " + where; return; }
          const bool single = nd.status == NodeStatus::kZeroCase1;
          if ((nd.witness->kind == Witness::Case::kSingle) != single) {
            problem = "witness case does not match status at " + where;
            return;
          }
          TournamentInstance inst;
          for (std::size_t i = 0; i < nd.path.size(); ++i) {
            inst.A.push_back(p.at(nd.path.r[i]));
            inst.k.push_back(nd.path.k[i]);
          }
          if (!witness_holds(inst, *nd.witness)) { problem = "witness inequalities fail at " + where; return; }
          if (!build_Qbrk(cert.b, cert.a, nd.path).is_zero()) { problem = "leaf is not zero at " + where; return; }
          return;
        }
        case NodeStatus::kBaseFullDepth:
          if (!nd.children.empty() || static_cast<int>(nd.path.size()) != n) {
            problem = "malformed full-depth leaf at " + where;
            return;
          }
          if (!build_Qbrk(cert.b, cert.a, nd.path).is_zero()) { problem = "leaf is not zero at " + where; return; }
          return;
        case NodeStatus::kRecursed: {
          RecursionStep step = recurse_case_ii(cert.b, cert.a, nd.path);
          if (step.var != nd.var || step.degree != nd.degree) {
            problem = "recorded degree or variable is wrong at " + where;
            return;
          }
          if (step.children.size() != nd.children.size()) { problem = "child count mismatch at " + where; return; }
          for (std::size_t i = 0; i < step.children.size(); ++i) {
            if (step.children[i] != nd.children[i].path) { problem = "child order mismatch at " + where; return; }
            check(nd.children[i]);
          }
          return;
        }
      }
    };
    check(cert.root);
    return problem;
  } catch (const std::exception& e) {
    return e.what();
  }
}

}  // namespace ctforge
