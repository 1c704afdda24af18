// A short walk through the library: the q-Dyson constant term for a small
// parameter, the rational function whose constant term vanishes, and the
// certificate tree that shows why.

#include <iostream>
#include <string>

#include "ctforge/certificate.hpp"
#include "ctforge/format.hpp"
#include "ctforge/verify.hpp"

using namespace ctforge;

namespace {

void print_tree(const CertificateNode& nd, int depth) {
  std::cout << std::string(static_cast<std::size_t>(2 * depth), ' ') << describe(nd.path) << " "
            << to_string(nd.status);
  if (nd.witness) {
    std::cout << " i=" << nd.witness->i;
    if (nd.witness->kind == Witness::Case::kPair) std::cout << " j=" << nd.witness->j;
  }
  if (nd.status == NodeStatus::kRecursed) std::cout << " (degree " << nd.degree << " in x" << nd.var << ")";
  std::cout << "\n";
  for (const auto& c : nd.children) print_tree(c, depth + 1);
}

}  // namespace

int main() {
  const std::vector<long> a{1, 1};

  FactoredForm lhs = build_qdyson_lhs(2, a);
  std::cout << "product:  " << to_string(lhs) << "\n";
  std::cout << "CT:       " << to_string(ct_all_bruteforce(lhs)) << "\n";
  std::cout << "formula:  " << to_string(rhs_qdyson(2, a)) << "\n\n";

  const long b = 2;
  FactoredForm qb = build_Qcal(b, a);
  std::cout << "Q(" << b << ") = " << to_string(qb) << "\n";
  std::cout << "degree in x0: " << degree_in_var(qb, 0) << "\n";
  std::cout << "CT by series: " << to_string(ct_all_x0_truncated(qb, 2)) << "\n\n";

  Certificate cert = certify_main_lemma(a, b, CertifyOptions{1});
  print_tree(cert.root, 0);
  std::cout << "recheck: " << (recheck_certificate(cert).empty() ? "ok" : "failed") << "\n";
}
