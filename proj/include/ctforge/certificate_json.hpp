#pragma once

// JSON form of certificates (schema in docs/certificate-schema.md). Loading
// is strict: unknown keys, missing keys and wrong types are all rejected
// before any mathematical re-check runs.

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctforge/certificate.hpp"

namespace ctforge {

inline constexpr const char* kCertificateFormat = "ctforge-certificate/1";

class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

using nlohmann::json;

inline json node_to_json(const CertificateNode& nd) {
  json j;
  j["path"] = {{"r", nd.path.r}, {"k", nd.path.k}};
  j["status"] = to_string(nd.status);
  switch (nd.status) {
    case NodeStatus::kZeroCase1:
      j["witness"] = {{"case", 1}, {"i", nd.witness->i}};
      break;
    case NodeStatus::kZeroCase2:
      j["witness"] = {{"case", 2}, {"i", nd.witness->i}, {"j", nd.witness->j}};
      break;
    case NodeStatus::kRecursed:
      j["witness"] = {{"var", nd.var}, {"degree", nd.degree}};
      break;
    case NodeStatus::kBaseFullDepth:
      j["witness"] = {{"value", "0"}};
      break;
  }
  j["oracle_checked"] = nd.oracle_checked;
  j["children"] = json::array();
  for (const auto& c : nd.children) j["children"].push_back(node_to_json(c));
  return j;
}

inline void require_keys(const json& j, const std::set<std::string>& keys, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& k : keys) {
    if (!j.contains(k)) throw SchemaError(where + ": missing key \"" + k + "\"");
  }
  for (const auto& [k, v] : j.items()) {
    if (!keys.contains(k)) throw SchemaError(where + ": unexpected key \"" + k + "\"");
  }
}

inline long require_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
  return j.get<long>();
}

inline std::vector<long> require_int_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
  std::vector<long> out;
  for (const auto& e : j) out.push_back(require_int(e, where));
  return out;
}

inline CertificateNode node_from_json(const json& j, const std::string& where) {
  require_keys(j, {"path", "status", "witness", "oracle_checked", "children"}, where);
  CertificateNode nd;
  require_keys(j["path"], {"r", "k"}, where + ".path");
  for (long r : require_int_array(j["path"]["r"], where + ".path.r")) nd.path.r.push_back(static_cast<int>(r));
  nd.path.k = require_int_array(j["path"]["k"], where + ".path.k");
  if (nd.path.r.size() != nd.path.k.size()) throw SchemaError(where + ".path: r and k differ in length");
  if (!j["status"].is_string()) throw SchemaError(where + ".status: expected a string");
  auto status = parse_status(j["status"].get<std::string>());
  if (!status) throw SchemaError(where + ".status: unknown status");
  nd.status = *status;
  const json& w = j["witness"];
  const std::string ww = where + ".witness";
  switch (nd.status) {
    case NodeStatus::kZeroCase1:
      require_keys(w, {"case", "i"}, ww);
      if (require_int(w["case"], ww + ".case") != 1) throw SchemaError(ww + ".case: expected 1");
      nd.witness = Witness{Witness::Case::kSingle, static_cast<int>(require_int(w["i"], ww + ".i")), 0};
      break;
    case NodeStatus::kZeroCase2:
      require_keys(w, {"case", "i", "j"}, ww);
      if (require_int(w["case"], ww + ".case") != 2) throw SchemaError(ww + ".case: expected 2");
      nd.witness = Witness{Witness::Case::kPair, static_cast<int>(require_int(w["i"], ww + ".i")),
                           static_cast<int>(require_int(w["j"], ww + ".j"))};
      break;
    case NodeStatus::kRecursed:
      require_keys(w, {"var", "degree"}, ww);
      nd.var = static_cast<VarIndex>(require_int(w["var"], ww + ".var"));
      nd.degree = require_int(w["degree"], ww + ".degree");
      break;
    case NodeStatus::kBaseFullDepth:
      require_keys(w, {"value"}, ww);
      if (w["value"] != "0") throw SchemaError(ww + ".value: expected \"0\"");
      break;
  }
  if (!j["oracle_checked"].is_boolean()) throw SchemaError(where + ".oracle_checked: expected a boolean");
  nd.oracle_checked = j["oracle_checked"].get<bool>();
  if (!j["children"].is_array()) throw SchemaError(where + ".children: expected an array");
  std::size_t idx = 0;
  for (const auto& c : j["children"]) {
    nd.children.push_back(node_from_json(c, where + ".children[" + std::to_string(idx++) + "]"));
  }
  return nd;
}

}  // namespace detail

inline nlohmann::json certificate_to_json(const Certificate& cert) {
  DysonParams p(cert.a);
  return {{"format", kCertificateFormat},
          {"params", {{"n", p.n()}, {"a", cert.a}, {"asum", p.asum()}, {"b", cert.b}}},
          {"root", detail::node_to_json(cert.root)}};
}

/// Schema check only; throws SchemaError.
inline Certificate certificate_from_json(const nlohmann::json& j) {
  detail::require_keys(j, {"format", "params", "root"}, "certificate");
  if (j["format"] != kCertificateFormat) throw SchemaError("certificate.format: unsupported format");
  detail::require_keys(j["params"], {"n", "a", "asum", "b"}, "certificate.params");
  Certificate cert;
  cert.a = detail::require_int_array(j["params"]["a"], "certificate.params.a");
  cert.b = detail::require_int(j["params"]["b"], "certificate.params.b");
  const long n = detail::require_int(j["params"]["n"], "certificate.params.n");
  const long asum = detail::require_int(j["params"]["asum"], "certificate.params.asum");
  if (n != static_cast<long>(cert.a.size())) throw SchemaError("certificate.params.n: does not match a");
  long sum = 0;
  for (long x : cert.a) {
    if (x < 0) throw SchemaError("certificate.params.a: negative entry");
    sum += x;
  }
  if (asum != sum) throw SchemaError("certificate.params.asum: does not match a");
  cert.root = detail::node_from_json(j["root"], "certificate.root");
  return cert;
}

/// Schema check followed by recheck_certificate. Empty string when valid.
inline std::string validate_certificate_json(const nlohmann::json& j) {
  try {
    return recheck_certificate(certificate_from_json(j));
  } catch (const SchemaError& e) {
    return std::string("schema: ") + e.what();
  }
}

}  // namespace ctforge
