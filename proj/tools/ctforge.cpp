// ctforge: command-line driver for the constant-term engine.
//
// Exit status: 0 success, 1 an identity or certificate check failed,
// 2 usage or parse error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctforge/certificate_json.hpp"
#include "ctforge/expr/lower.hpp"
#include "ctforge/expr/parser.hpp"
#include "ctforge/format.hpp"
#include "ctforge/identities.hpp"
#include "ctforge/parallel.hpp"
#include "ctforge/verify.hpp"

namespace {

using namespace ctforge;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<long> parse_list(const std::string& text, const char* flag, bool allow_negative = false) {
  std::vector<long> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not an integer");
    }
    if (used != item.size()) throw UsageError(std::string(flag) + ": '" + item + "' is not an integer");
    if (v < 0 && !allow_negative) throw UsageError(std::string(flag) + ": negative parameter " + item);
    if (v > 64 || v < -64) throw UsageError(std::string(flag) + ": " + item + " is out of range");
    out.push_back(v);
  }
  return out;
}

std::string join(const std::vector<long>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + std::to_string(xs[i]);
  return out;
}

/// All tuples (a_0, ..., a_n) with 1 <= n + 1 <= max_vars and entries <= max_entry.
std::vector<std::vector<long>> tuple_grid(int max_vars, long max_entry) {
  std::vector<std::vector<long>> out;
  for (int v = 1; v <= max_vars; ++v) {
    std::vector<long> t(static_cast<std::size_t>(v), 0);
    while (true) {
      out.push_back(t);
      std::size_t p = 0;
      while (p < t.size() && t[p] == max_entry) t[p++] = 0;
      if (p == t.size()) break;
      ++t[p];
    }
  }
  return out;
}

// ---- verify ----

struct VerifyArgs {
  long a0 = 0;
  std::string a;
  std::string method = "brute";
  bool q1 = false;
  bool json = false;
  int max_vars = 0;
  long max_entry = 0;
};

json verify_one(long a0, const std::vector<long>& a, const VerifyArgs& args, bool& holds, std::string& line) {
  json j{{"a0", a0}, {"a", a}};
  if (args.q1) {
    DysonQ1Report rep = verify_dyson_q1(a0, a);
    holds = rep.holds;
    j["specialization"] = "q=1";
    j["lhs"] = rep.lhs.get_str();
    j["rhs"] = rep.multinomial.get_str();
    j["holds"] = holds;
    line = holds ? "CT = multinomial = " + rep.multinomial.get_str()
                 : "MISMATCH: CT = " + rep.lhs.get_str() + ", multinomial = " + rep.multinomial.get_str();
    return j;
  }
  VerifyMethod m = args.method == "replay" ? VerifyMethod::kReplay
                   : args.method == "both" ? VerifyMethod::kBoth
                                           : VerifyMethod::kBrute;
  VerifyReport rep;
  try {
    rep = verify_qdyson(a0, a, m);
  } catch (const ProofInvariantError& e) {
    holds = false;
    j["holds"] = false;
    j["error"] = e.what();
    line = std::string("FAILED: ") + e.what();
    return j;
  }
  holds = rep.holds;
  j["method"] = to_string(m);
  j["rhs"] = to_string(rep.rhs);
  if (rep.brute_lhs) j["brute_lhs"] = to_string(*rep.brute_lhs);
  if (rep.replay_lhs) j["replay_lhs"] = to_string(*rep.replay_lhs);
  j["holds"] = holds;
  if (holds) {
    line = "LHS = RHS = " + to_string(rep.rhs);
  } else {
    line = "MISMATCH: RHS = " + to_string(rep.rhs);
    if (rep.brute_lhs) line += ", brute LHS = " + to_string(*rep.brute_lhs);
    if (rep.replay_lhs) line += ", replay LHS = " + to_string(*rep.replay_lhs);
  }
  return j;
}

int run_verify(const VerifyArgs& args, bool a_given) {
  if (args.max_vars > 0) {
    if (args.max_entry < 0) throw UsageError("--max-entry must be nonnegative");
    auto grid = tuple_grid(args.max_vars, args.max_entry);
    struct Cell {
      json j;
      bool holds;
      std::string line;
    };
    auto cells = parallel_map(grid.size(), [&](std::size_t i) {
      Cell c;
      const auto& t = grid[i];
      c.j = verify_one(t[0], std::vector<long>(t.begin() + 1, t.end()), args, c.holds, c.line);
      return c;
    });
    std::size_t failures = 0;
    json all = json::array();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!cells[i].holds) {
        ++failures;
        if (!args.json) std::cout << "(" << join(grid[i], ",") << "): " << cells[i].line << "\n";
      }
      all.push_back(cells[i].j);
    }
    if (args.json) {
      std::cout << all.dump(2) << "\n";
    } else {
      std::cout << "verified " << grid.size() << " tuples (up to " << args.max_vars << " variables, entries <= "
                << args.max_entry << (args.q1 ? ", q = 1" : "") << "): " << failures << " failures\n";
    }
    return failures == 0 ? kOk : kFailed;
  }
  if (!a_given) throw UsageError("verify: --a is required unless a grid is requested");
  if (args.a0 < 0) throw UsageError("--a0: negative parameter");
  const std::vector<long> a = parse_list(args.a, "--a");
  bool holds = false;
  std::string line;
  json j = verify_one(args.a0, a, args, holds, line);
  if (args.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << line << "\n";
  }
  return holds ? kOk : kFailed;
}

// ---- certify ----

struct CertifyArgs {
  std::string a;
  long b = 0;
  bool all_b = false;
  std::string json_out;
  bool oracle = false;
  std::string validate;
};

std::string per_b_path(const std::string& path, long b, bool many) {
  if (!many) return path;
  std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + "-b" + std::to_string(b) + p.extension().string())).string();
}

int run_validate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    std::cout << "INVALID " << path << ": not JSON (" << e.what() << ")\n";
    return kFailed;
  }
  std::string problem = validate_certificate_json(j);
  if (!problem.empty()) {
    std::cout << "INVALID " << path << ": " << problem << "\n";
    return kFailed;
  }
  Certificate cert = certificate_from_json(j);
  CertificateStats st = certificate_stats(cert);
  std::cout << "VALID " << path << ": a=(" << join(cert.a, ",") << ") b=" << cert.b << ", " << st.nodes
            << " nodes, " << st.leaves << " leaves re-verified\n";
  return kOk;
}

int run_certify(const CertifyArgs& args, bool b_given) {
  if (!args.validate.empty()) return run_validate(args.validate);
  const std::vector<long> a = parse_list(args.a, "--a");
  DysonParams p(a);
  if (b_given == args.all_b) throw UsageError("certify: give exactly one of --b and --all-b");
  std::vector<long> bs;
  if (args.all_b) {
    for (long b = 1; b <= p.asum(); ++b) bs.push_back(b);
  } else {
    if (args.b < 1 || args.b > p.asum()) {
      throw UsageError("--b " + std::to_string(args.b) + " is out of range [1, " + std::to_string(p.asum()) + "]");
    }
    bs.push_back(args.b);
  }
  int status = kOk;
  for (long b : bs) {
    Certificate cert;
    try {
      cert = certify_main_lemma(a, b, CertifyOptions{args.oracle ? 2u : 0u});
      if (args.oracle && !eval_Qa(a, -b).is_zero()) {
        throw CertificationError("series oracle: CT Q(b) is not zero");
      }
    } catch (const ProofInvariantError& e) {
      std::cout << "b=" << b << ": CERTIFICATION FAILED: " << e.what() << "\n";
      return kFailed;
    }
    CertificateStats st = certificate_stats(cert);
    std::cout << "b=" << b << ": " << st.nodes << " nodes, " << st.leaves << " leaves (zero_case1 " << st.zero_case1
              << ", zero_case2 " << st.zero_case2 << ", base_full_depth " << st.base_full_depth << "), recursed "
              << st.recursed << ", depth " << st.max_depth;
    if (args.oracle) std::cout << ", oracle-checked " << st.oracle_checked << " + root";
    std::cout << "\n";
    if (!args.json_out.empty()) {
      const std::string path = per_b_path(args.json_out, b, args.all_b);
      std::ofstream out(path);
      if (!out) throw UsageError("cannot write " + path);
      out << certificate_to_json(cert).dump(2) << "\n";
      std::cout << "  wrote " << path << "\n";
    }
  }
  return status;
}

// ---- ct ----

struct CtArgs {
  std::string expr;
  std::string var;
  bool all_vars = false;
  long truncation = 8;
  std::string method = "series";
};

VarIndex parse_var(const std::string& s) {
  std::string digits = (!s.empty() && s[0] == 'x') ? s.substr(1) : s;
  if (digits.empty() || digits.size() > 6 || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("--var: expected x<index>, got '" + s + "'");
  }
  return std::stoi(digits);
}

LaurentPoly series_ct_var(const FactoredForm& f, VarIndex v, long weight) {
  const int nvars = std::max<int>(f.max_var(), v) + 1;
  LaurentPoly e = expand_factored(f, Truncation::graded(nvars, weight));
  return ct_var_bruteforce(e, v);
}

int run_ct(const CtArgs& args, bool var_given) {
  if (var_given == args.all_vars) throw UsageError("ct: give exactly one of --var and --all-vars");
  if (args.truncation < 0) throw UsageError("--truncation must be nonnegative");
  auto ast = expr::parse_expression(args.expr);
  expr::Lowered low = expr::lower(*ast);
  const bool series = args.method != "pfrac";
  const bool pfrac = args.method != "series";
  if (pfrac && !low.factored) throw UsageError("ct: --method pfrac needs a product of monomials and binomial factors");

  if (args.all_vars) {
    std::optional<QRat> by_series, by_pfrac;
    if (series) {
      if (low.polynomial) {
        by_series = low.polynomial->constant();
      } else if (!low.factored->has_denominator()) {
        by_series = ct_all_bruteforce(*low.factored);
      } else {
        by_series = ct_all_series(*low.factored);
      }
      std::cout << "CT = " << to_string(*by_series) << "\n";
    }
    if (pfrac) {
      // Partial fractions in x_0, then the exact series constant term of each summand.
      QRat sum;
      for (const auto& r : ct_partial_fraction(*low.factored, 0)) sum += ct_all_series(r);
      by_pfrac = sum;
      std::cout << "CT (partial fractions in x0) = " << to_string(sum) << "\n";
    }
    if (by_series && by_pfrac && *by_series != *by_pfrac) {
      std::cout << "MISMATCH between series and partial fractions\n";
      return kFailed;
    }
    return kOk;
  }

  const VarIndex v = parse_var(args.var);
  const std::string name = "CT_x" + std::to_string(v);
  std::optional<LaurentPoly> by_series;
  bool truncated = false;
  if (series) {
    if (auto poly = expr::expanded(low)) {
      by_series = ct_var_bruteforce(*poly, v);
    } else {
      by_series = series_ct_var(*low.factored, v, args.truncation);
      truncated = true;
    }
    std::cout << name << " = " << to_string(*by_series) << "\n";
    if (truncated) {
      std::cout << "  (series exact through weight " << args.truncation << ", x_v weighted N - v)\n";
    }
  }
  if (pfrac) {
    std::vector<FactoredForm> parts = ct_partial_fraction(*low.factored, v);
    if (parts.empty()) {
      std::cout << name << " (partial fractions) = 0\n";
    } else if (parts.size() == 1) {
      std::cout << name << " (partial fractions) = " << to_string(parts[0]) << "\n";
    } else {
      std::cout << name << " (partial fractions) = sum of " << parts.size() << " terms\n";
      for (const auto& p : parts) std::cout << "  + " << to_string(p) << "\n";
    }
    if (by_series) {
      LaurentPoly sum;
      for (const auto& p : parts) sum += series_ct_var(p, v, args.truncation);
      LaurentPoly reference = truncated ? *by_series : series_ct_var(*low.factored, v, args.truncation);
      if (sum != reference) {
        std::cout << "MISMATCH between series and partial fractions\n";
        return kFailed;
      }
      std::cout << "series and partial fractions agree\n";
    }
  }
  return kOk;
}

// ---- tournament ----

struct TournamentArgs {
  int s_max = 0;
  long a_max = 0;
  std::string A;
  std::string k;
};

int run_tournament(const TournamentArgs& args, bool instance_given) {
  if (instance_given) {
    TournamentInstance inst{parse_list(args.A, "--A"), parse_list(args.k, "--k", true)};
    if (inst.A.size() != inst.k.size() || inst.A.empty()) throw UsageError("--A and --k must have the same nonzero length");
    auto w = find_witness(inst);
    if (w) {
      if (w->kind == Witness::Case::kSingle) {
        std::cout << "witness: case 1, i=" << w->i << " (1 <= k_i <= A_i)\n";
      } else {
        std::cout << "witness: case 2, i=" << w->i << " j=" << w->j << " (-A_j <= k_i - k_j <= A_i - 1)\n";
      }
    }
    bool pair_witness = false;
    for (int i = 1; i <= static_cast<int>(inst.A.size()); ++i) {
      for (int j = i + 1; j <= static_cast<int>(inst.A.size()); ++j) {
        pair_witness = pair_witness || pair_condition(inst, i, j);
      }
    }
    // The tournament is defined whenever no pair condition holds.
    if (!pair_witness) {
      TournamentReport rep = build_tournament(inst);
      std::cout << (w ? "tournament arcs:" : "no witness; tournament arcs:");
      for (const auto& a : rep.arcs) std::cout << " " << a.from << "->" << a.to << "[" << a.label << "]";
      std::cout << "\n";
      if (rep.cycle) {
        std::cout << "cycle: " << join(std::vector<long>(rep.cycle->begin(), rep.cycle->end()), "->") << "\n";
      } else {
        std::cout << "order: " << join(std::vector<long>(rep.order->begin(), rep.order->end()), "->")
                  << ", span bound " << (rep.order_sum_holds ? "holds" : "fails") << ", k exceeds A_1+...+A_s: "
                  << (rep.exceeds_total ? "yes" : "no") << "\n";
      }
    }
    if (!w) {
      if (inst.satisfies_hypothesis()) {
        std::cout << "LEMMA VIOLATION: admissible instance without a witness\n";
        return kFailed;
      }
      std::cout << "instance is outside the hypothesis 1 <= k_i <= A_1+...+A_s\n";
    }
    return kOk;
  }
  if (args.s_max < 1 || args.a_max < 0) throw UsageError("tournament: need --s-max >= 1 and --a-max >= 0");
  LemmaCheckReport rep = exhaustive_lemma_check(args.s_max, args.a_max);
  std::cout << "s <= " << args.s_max << ", A_i <= " << args.a_max << ": " << rep.vectors << " A-vectors, "
            << rep.instances << " instances, " << rep.single_witnesses << " case-1 witnesses, " << rep.pair_witnesses
            << " case-2 witnesses, " << rep.counterexamples << " counterexamples\n";
  return rep.counterexamples == 0 ? kOk : kFailed;
}

// ---- identities ----

int run_identities(long degree) {
  if (degree < 0 || degree > 40) throw UsageError("--degree must lie in [0, 40]");
  auto checks = run_identity_suite(degree);
  std::size_t failures = 0;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " " << c.params << "\n";
    if (!c.pass) ++failures;
  }
  std::cout << checks.size() - failures << "/" << checks.size() << " identities hold (truncation degree " << degree
            << ")\n";
  return failures == 0 ? kOk : kFailed;
}

// ---- bench ----

int run_bench(int max_n, long max_a, const std::string& out_path) {
  if (max_n < 0 || max_a < 0) throw UsageError("bench: bounds must be nonnegative");
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw UsageError("cannot write " + out_path);
    out = &file;
  }
  *out << "n,a,method,millis,terms\n";
  if (max_n == 0) return kOk;
  for (const auto& t : tuple_grid(max_n + 1, max_a)) {
    if (t.size() < 2) continue;
    const long n = static_cast<long>(t.size()) - 1;
    const std::vector<long> a(t.begin() + 1, t.end());
    for (VerifyMethod m : {VerifyMethod::kBrute, VerifyMethod::kReplay}) {
      auto start = std::chrono::steady_clock::now();
      VerifyReport rep = verify_qdyson(t[0], a, m);
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      std::size_t terms = m == VerifyMethod::kBrute ? rep.peak_terms : rep.certificate_nodes;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", ms);
      *out << n << "," << join(t, "-") << "," << to_string(m) << "," << buf << "," << terms << "\n";
      if (!rep.holds) return kFailed;
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ctforge: exact constant terms, q-Dyson verification and proof certificates"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check the q-Dyson identity for given parameters");
  verify->add_option("--a0", va.a0, "exponent a_0 (default 0)");
  auto* verify_a = verify->add_option("--a", va.a, "comma-separated a_1,...,a_n");
  verify->add_option("--method", va.method, "brute | replay | both")
      ->check(CLI::IsMember({"brute", "replay", "both"}));
  verify->add_flag("--q1", va.q1, "check the q = 1 specialization against the multinomial coefficient");
  verify->add_flag("--json", va.json, "machine-readable output");
  verify->add_option("--max-vars", va.max_vars, "grid: all tuples (a_0..a_n) with n + 1 <= this");
  verify->add_option("--max-entry", va.max_entry, "grid: largest entry");

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "build proof certificates for CT Q(b) = 0");
  certify->add_option("--a", ca.a, "comma-separated a_1,...,a_n");
  auto* certify_b = certify->add_option("--b", ca.b, "single b in [1, a_1+...+a_n]");
  certify->add_flag("--all-b", ca.all_b, "every b in [1, a_1+...+a_n]");
  certify->add_option("--json-out", ca.json_out, "write certificate JSON (with --all-b: NAME-b<b>.EXT)");
  certify->add_flag("--oracle", ca.oracle, "cross-check sampled nodes and the root by series expansion");
  certify->add_option("--validate", ca.validate, "re-validate a certificate JSON file and exit");

  CtArgs cta;
  auto* ct = app.add_subcommand("ct", "constant term of an expression");
  ct->add_option("--expr", cta.expr, "expression, e.g. \"1/(1 - q*x0/x1)\"")->required();
  auto* ct_var = ct->add_option("--var", cta.var, "extraction variable, e.g. x0");
  ct->add_flag("--all-vars", cta.all_vars, "constant term in every variable");
  ct->add_option("--truncation", cta.truncation, "series weight bound for single-variable CT (default 8)");
  ct->add_option("--method", cta.method, "series | pfrac | both")->check(CLI::IsMember({"series", "pfrac", "both"}));

  TournamentArgs ta;
  auto* tour = app.add_subcommand("tournament", "the witness lemma: exhaustive check or a single instance");
  tour->add_option("--s-max", ta.s_max, "largest s");
  tour->add_option("--a-max", ta.a_max, "largest A_i");
  auto* tour_A = tour->add_option("--A", ta.A, "comma-separated A_1..A_s");
  auto* tour_k = tour->add_option("--k", ta.k, "comma-separated k_1..k_s");
  tour_A->needs(tour_k);
  tour_k->needs(tour_A);

  long degree = 8;
  auto* ids = app.add_subcommand("identities", "check the q-series identity suite");
  ids->add_option("--degree", degree, "truncation degree (default 8)");

  int bench_n = 2;
  long bench_a = 2;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "time brute force and proof replay on a grid (CSV)");
  bench->add_option("--max-n", bench_n, "largest n");
  bench->add_option("--max-a", bench_a, "largest entry");
  bench->add_option("--out", bench_out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (verify->parsed()) return run_verify(va, verify_a->count() > 0);
    if (certify->parsed()) return run_certify(ca, certify_b->count() > 0);
    if (ct->parsed()) return run_ct(cta, ct_var->count() > 0);
    if (tour->parsed()) return run_tournament(ta, tour_A->count() > 0);
    if (ids->parsed()) return run_identities(degree);
    if (bench->parsed()) return run_bench(bench_n, bench_a, bench_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const expr::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const expr::LoweringError& e) {
    std::cerr << "lowering error: " << e.what() << "\n";
    return kUsage;
  } catch (const ProperError& e) {
    std::cerr << "not proper: " << e.what() << " (degree " << e.degree() << ")\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ShapeError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const ProofInvariantError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
