#include <gtest/gtest.h>

#include <random>

#include "ctforge/certificate.hpp"
#include "ctforge/certificate_json.hpp"
#include "ctforge/format.hpp"
#include "ctforge/parallel.hpp"
#include "ctforge/verify.hpp"
#include "oracles.hpp"
#include "random_inputs.hpp"

using namespace ctforge;

namespace {

QRat qp(long k) { return QRat::q_power(k); }

QRat from_oracle(const oracle::Poly& p) {
  std::vector<BigRat> c;
  for (const auto& x : p) c.emplace_back(x);
  return QRat(QPoly(std::move(c)));
}

ProofPath path_of(std::vector<int> r, std::vector<long> k) { return ProofPath{std::move(r), std::move(k)}; }

// Lagrange form, independent of the elimination used by the library.
QRat lagrange_at(const std::vector<QRat>& xs, const std::vector<QRat>& ys, const QRat& x) {
  QRat out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    QRat term = ys[i];
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j != i) term *= (x - xs[j]) / (xs[i] - xs[j]);
    }
    out += term;
  }
  return out;
}

}  // namespace

TEST(QDysonBuild, ProductAndRhs) {
  EXPECT_EQ(build_qdyson_lhs(1, {1}).canonical(),
            FactoredForm(QRat(1), {}, {make_factor(0, 0, 1), make_factor(1, 1, 0)}).canonical());
  EXPECT_TRUE(build_qdyson_lhs(0, {0, 0}).factors().empty());
  EXPECT_EQ(rhs_qdyson(1, {1}), QRat(1) + qp(1));
  EXPECT_EQ(rhs_qdyson(1, {1, 1}), (QRat(1) + qp(1)) * (QRat(1) + qp(1) + qp(2)));
  EXPECT_EQ(rhs_qdyson(0, {0, 4, 0}), QRat(1));
  EXPECT_EQ(rhs_qdyson(2, {1}), QRat(1) + qp(1) + qp(2));
  EXPECT_THROW(rhs_qdyson(-1, {1}), PreconditionError);
  for (auto all : std::vector<std::vector<long>>{{3, 2, 1}, {2, 2, 2, 2}, {0, 3, 3}}) {
    std::vector<long> a(all.begin() + 1, all.end());
    EXPECT_EQ(rhs_qdyson(all[0], a), from_oracle(oracle::qdyson_rhs(all)));
  }
}

TEST(QDysonBuild, PaAndQa) {
  EXPECT_EQ(eval_Pa({1}, 0), QRat(1));
  EXPECT_TRUE(eval_Pa({1}, -1).is_zero());
  EXPECT_EQ(eval_Pa({1, 1}, 1), (QRat(1) + qp(1) + qp(2)) * (QRat(1) + qp(1)));
  EXPECT_EQ(eval_Qa({1}, 1), QRat(1) + qp(1));
  EXPECT_EQ(eval_Qa({1}, 0), QRat(1));
  EXPECT_TRUE(eval_Qa({1}, -1).is_zero());
}

TEST(QDysonBuild, Qcal) {
  FactoredForm q1 = build_Qcal(1, {1});
  EXPECT_EQ(q1.canonical(), FactoredForm(QRat(1), {}, {make_factor(1, 1, 0), make_factor(-1, 0, 1, -1)}).canonical());
  EXPECT_EQ(degree_in_var(build_Qcal(2, {1, 1}), 0), -4);
  EXPECT_THROW(build_Qcal(0, {1}), PreconditionError);
}

TEST(Substitution, EandT) {
  Substitution e1 = substitution_E(path_of({2}, {3}));
  EXPECT_EQ(e1.image(0), (VarImage{2, 3}));
  EXPECT_EQ(e1.image(1), (VarImage{1, 0}));
  EXPECT_EQ(e1.image(2), (VarImage{2, 0}));

  Substitution e2 = substitution_E(path_of({1, 2}, {1, 1}));
  EXPECT_EQ(e2.image(0), (VarImage{2, 1}));
  EXPECT_EQ(e2.image(1), (VarImage{2, 0}));
  EXPECT_EQ(e2.image(3), (VarImage{3, 0}));

  Substitution t = substitution_T(1, 2, 2, 1);
  EXPECT_EQ(t.image(1), (VarImage{2, 1}));
  FactoredForm untouched(QRat(1), {}, {make_factor(0, 0, 2)});
  EXPECT_EQ(t.apply(untouched), untouched);
  EXPECT_THROW(substitution_T(1, 1, 1, 1), PreconditionError);
  EXPECT_THROW(substitution_E(ProofPath{}), PreconditionError);
}

TEST(Substitution, CollapsingFactors) {
  Substitution s;
  s.set(0, VarImage{1, 1});
  // 1 - q^{-1} x0/x1 -> 1 - 1 = 0
  EXPECT_TRUE(s.apply(FactoredForm(QRat(1), {}, {make_factor(-1, 0, 1)})).is_zero());
  EXPECT_THROW(s.apply(FactoredForm(QRat(1), {}, {make_factor(-1, 0, 1, -1)})), UncancelledPoleError);
  // 1 - q x0/x1 -> 1 - q^2
  FactoredForm c = s.apply(FactoredForm(QRat(1), ExpVec::var(0), {make_factor(1, 0, 1)}));
  EXPECT_EQ(c, FactoredForm((QRat(1) - qp(2)) * qp(1), ExpVec::var(1), {}));
}

TEST(Substitution, CompositionLawRandomPaths) {
  std::mt19937_64 rng(5150);
  for (int iter = 0; iter < 50; ++iter) {
    auto rp = testgen::random_path(rng);
    ASSERT_TRUE(composition_law_holds(rp.path, rp.next, rp.next_k)) << describe(rp.path);
    // x_{r_i} -> x_{r_{s+1}} q^{k_{s+1} - k_i} with r_0 = k_0 = 0
    ProofPath ext = rp.path.extended(rp.next, rp.next_k);
    Substitution direct = substitution_E(ext);
    EXPECT_EQ(direct.image(0), (VarImage{rp.next, rp.next_k}));
    for (std::size_t i = 0; i < rp.path.size(); ++i) {
      EXPECT_EQ(direct.image(rp.path.r[i]), (VarImage{rp.next, rp.next_k - rp.path.k[i]}));
    }
  }
}

TEST(Qbrk, ZeroByCaseOne) {
  EXPECT_TRUE(build_Qbrk(1, {1}, path_of({1}, {1})).is_zero());
  EXPECT_EQ(build_Qbrk(2, {1, 1}, ProofPath{}), build_Qcal(2, {1, 1}));
  EXPECT_THROW(build_Qbrk(1, {1}, path_of({1}, {2})), PreconditionError);
}

TEST(Qbrk, Witnesses) {
  auto w1 = zero_test_case_i({1}, path_of({1}, {1}));
  ASSERT_TRUE(w1);
  EXPECT_EQ(w1->kind, Witness::Case::kSingle);
  EXPECT_EQ(w1->i, 1);

  // case 1 fires first in scan order here, and the pair (1,2) also holds
  auto w2 = zero_test_case_i({1, 1}, path_of({1, 2}, {1, 1}));
  ASSERT_TRUE(w2);
  EXPECT_EQ(w2->kind, Witness::Case::kSingle);
  EXPECT_TRUE(pair_condition(TournamentInstance{{1, 1}, {1, 1}}, 1, 2));

  EXPECT_FALSE(zero_test_case_i({1, 1}, path_of({1}, {2})));
}

TEST(Qbrk, RecursionStep) {
  RecursionStep st = recurse_case_ii(2, {1, 1}, path_of({1}, {2}));
  EXPECT_EQ(st.var, 1);
  EXPECT_EQ(st.degree, -1);
  ASSERT_EQ(st.children.size(), 2u);
  EXPECT_EQ(st.children[0], path_of({1, 2}, {2, 1}));
  EXPECT_EQ(st.children[1], path_of({1, 2}, {2, 2}));
  EXPECT_EQ(expected_degree({1, 1}, path_of({1}, {2}), 2), -1);
  EXPECT_THROW(recurse_case_ii(1, {1}, path_of({1}, {1})), PreconditionError);
}

TEST(Certificate, SmallTrees) {
  Certificate c1 = certify_main_lemma({1}, 1);
  EXPECT_EQ(c1.root.status, NodeStatus::kRecursed);
  ASSERT_EQ(c1.root.children.size(), 1u);
  EXPECT_EQ(c1.root.children[0].status, NodeStatus::kZeroCase1);
  EXPECT_EQ(c1.root.children[0].path, path_of({1}, {1}));

  Certificate c2 = certify_main_lemma({2}, 2);
  ASSERT_EQ(c2.root.children.size(), 2u);
  for (const auto& ch : c2.root.children) EXPECT_EQ(ch.status, NodeStatus::kZeroCase1);

  Certificate c3 = certify_main_lemma({1, 1}, 2, CertifyOptions{1});
  auto st = certificate_stats(c3);
  EXPECT_LE(st.max_depth, 2u);
  EXPECT_GT(st.recursed, 1u);
  EXPECT_GT(st.zero_case1 + st.zero_case2, 0u);
  EXPECT_EQ(st.oracle_checked, 1u);
  EXPECT_EQ(recheck_certificate(c3), "");

  EXPECT_THROW(certify_main_lemma({1}, 2), PreconditionError);
}

TEST(Certificate, LeavesAreZeroAcrossGrid) {
  for (auto a : std::vector<std::vector<long>>{{2, 1}, {1, 1, 1}, {0, 2}, {2, 0, 1}}) {
    long asum = 0;
    for (long x : a) asum += x;
    for (long b = 1; b <= asum; ++b) {
      Certificate c = certify_main_lemma(a, b);
      std::function<void(const CertificateNode&)> walk = [&](const CertificateNode& nd) {
        if (nd.children.empty()) {
          if (nd.status == NodeStatus::kRecursed) {
            // no small pole: an empty sum, never at the root
            EXPECT_FALSE(nd.path.empty());
            EXPECT_TRUE(ct_all_series(build_Qbrk(b, a, nd.path)).is_zero()) << describe(nd.path);
          } else {
            EXPECT_TRUE(build_Qbrk(b, a, nd.path).is_zero()) << describe(nd.path);
          }
        }
        for (const auto& ch : nd.children) walk(ch);
      };
      walk(c.root);
      EXPECT_TRUE(eval_Qa(a, -b).is_zero());
    }
  }
}

TEST(CertificateJson, RoundTripAndTamper) {
  Certificate c = certify_main_lemma({1, 1}, 2, CertifyOptions{1});
  nlohmann::json j = certificate_to_json(c);
  EXPECT_EQ(j["format"], kCertificateFormat);
  EXPECT_EQ(validate_certificate_json(j), "");
  Certificate back = certificate_from_json(j);
  EXPECT_EQ(certificate_to_json(back), j);

  nlohmann::json extra = j;
  extra["root"]["note"] = "x";
  EXPECT_NE(validate_certificate_json(extra).find("schema"), std::string::npos);

  nlohmann::json missing = j;
  missing["params"].erase("b");
  EXPECT_NE(validate_certificate_json(missing).find("schema"), std::string::npos);

  // flip the first zero leaf into a recursed node with no children
  nlohmann::json wrong = j;
  std::function<bool(nlohmann::json&)> flip = [&](nlohmann::json& nd) {
    if (nd["status"] == "zero_case1") {
      nd["status"] = "zero_case2";
      nd["witness"] = {{"case", 2}, {"i", 1}, {"j", 2}};
      return true;
    }
    for (auto& ch : nd["children"]) {
      if (flip(ch)) return true;
    }
    return false;
  };
  ASSERT_TRUE(flip(wrong["root"]));
  EXPECT_NE(validate_certificate_json(wrong), "");

  nlohmann::json bad_b = j;
  bad_b["params"]["b"] = 1;
  EXPECT_NE(validate_certificate_json(bad_b), "");
}

TEST(Verify, Interpolation) {
  DegreeCheckReport r1 = interpolate_Qa_degree_check({1});
  ASSERT_EQ(r1.values.size(), 3u);
  EXPECT_EQ(r1.values[0], QRat(1));
  EXPECT_EQ(r1.values[1], QRat(1) + qp(1));
  EXPECT_EQ(r1.predicted, QRat(1) + qp(1) + qp(2));
  EXPECT_TRUE(r1.pass);
  // fit (1 - q t)/(1 - q)
  ASSERT_EQ(r1.coefficients.size(), 2u);
  EXPECT_EQ(r1.coefficients[0], QRat(1) / (QRat(1) - qp(1)));
  EXPECT_EQ(r1.coefficients[1], -qp(1) / (QRat(1) - qp(1)));

  DegreeCheckReport r0 = interpolate_Qa_degree_check({});
  EXPECT_TRUE(r0.pass);
  EXPECT_EQ(r0.values[0], QRat(1));

  DegreeCheckReport r2 = interpolate_Qa_degree_check({1, 1});
  EXPECT_TRUE(r2.pass);
  std::vector<QRat> xs{QRat(1), qp(1), qp(2)};
  std::vector<QRat> ys(r2.values.begin(), r2.values.begin() + 3);
  EXPECT_EQ(lagrange_at(xs, ys, qp(3)), r2.values[3]);
}

TEST(Verify, TwoVariableConstantTerm) {
  for (long l = 0; l <= 3; ++l) {
    for (long m = 0; m <= 3; ++m) {
      FactoredForm f = qpochhammer(ExpVec::ratio(0, 1), 0, l) * qpochhammer(ExpVec::ratio(1, 0), 1, m);
      EXPECT_EQ(two_variable_constant_term(l, m), ct_all_bruteforce(f)) << l << "," << m;
    }
  }
}

TEST(Verify, QDysonMethods) {
  auto r = verify_qdyson(1, {1}, VerifyMethod::kBoth);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(*r.brute_lhs, QRat(1) + qp(1));
  EXPECT_EQ(*r.replay_lhs, QRat(1) + qp(1));
  EXPECT_EQ(verify_qdyson(2, {1}, VerifyMethod::kBrute).rhs, QRat(1) + qp(1) + qp(2));
  EXPECT_TRUE(verify_qdyson(0, {0, 0, 0}, VerifyMethod::kBoth).holds);
  for (auto all : std::vector<std::vector<long>>{{2, 1, 1}, {1, 2, 0}, {0, 1, 2}, {3, 1}}) {
    std::vector<long> a(all.begin() + 1, all.end());
    auto rep = verify_qdyson(all[0], a, VerifyMethod::kReplay);
    EXPECT_TRUE(rep.holds);
    EXPECT_EQ(*rep.replay_lhs, from_oracle(oracle::qdyson_lhs(all)));
  }
}

TEST(Verify, ClassicalDyson) {
  auto r = verify_dyson_q1(1, {1, 1});
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.multinomial, 6);
  EXPECT_EQ(verify_dyson_q1(2, {1}).multinomial, 3);
  EXPECT_TRUE(verify_dyson_q1(2, {1}).holds);
  EXPECT_EQ(verify_dyson_q1(0, {0, 0}).multinomial, 1);
  EXPECT_EQ(multinomial({2, 2, 1}), oracle::multinomial({2, 2, 1}));
}

TEST(Parallel, OrderedResultsAndErrors) {
  auto squares = parallel_map(50, [](std::size_t i) { return static_cast<long>(i * i); }, 4);
  ASSERT_EQ(squares.size(), 50u);
  for (std::size_t i = 0; i < squares.size(); ++i) EXPECT_EQ(squares[i], static_cast<long>(i * i));
  EXPECT_THROW(parallel_map(
                   10,
                   [](std::size_t i) -> int {
                     if (i == 7) throw std::runtime_error("seven");
                     return 0;
                   },
                   3),
               std::runtime_error);
  EXPECT_GE(worker_count(), 1u);
}
