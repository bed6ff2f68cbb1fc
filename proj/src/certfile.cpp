// SPDX-License-Identifier: Apache-2.0
#include "mirrorvf/certfile.hpp"

#include <json.hpp>

namespace mirrorvf::cli {

using nlohmann::json;
using symex::SymexStep;
using symex::SymexTree;
using symex::TreeP;

namespace {

json tree_to_json(const TreeP& t) {
  if (!t) throw CertFormatError("internal: null tree node");
  switch (t->kind) {
  case SymexTree::Kind::Success:
    return json{{"success", true}};
  case SymexTree::Kind::Branch:
    return json{{"branch", json{{"then", tree_to_json(t->then_child)},
                                {"else", tree_to_json(t->else_child)}}}};
  case SymexTree::Kind::Step:
    switch (t->step.kind) {
    case SymexStep::Kind::Done:
      return json{{"step", "done"}};
    case SymexStep::Kind::ConsumeChunk:
      return json{{"step", "consume"},
                  {"k", t->step.index},
                  {"next", tree_to_json(t->next)}};
    case SymexStep::Kind::AutoOpenPointsTo:
      return json{{"step", "auto_open"},
                  {"k", t->step.index},
                  {"next", tree_to_json(t->next)}};
    }
  }
  throw CertFormatError("internal: bad tree node");
}

[[noreturn]] void bad(const std::string& what) {
  throw CertFormatError("malformed certificate: " + what);
}

TreeP tree_from_json(const json& j) {
  if (!j.is_object()) bad("tree node is not an object");
  if (j.contains("success")) {
    if (j.size() != 1 || j["success"] != true) bad("bad success node");
    return symex::mk_success();
  }
  if (j.contains("branch")) {
    if (j.size() != 1) bad("branch node has extra fields");
    const json& b = j["branch"];
    if (!b.is_object() || b.size() != 2 || !b.contains("then") ||
        !b.contains("else"))
      bad("branch node needs exactly then and else");
    return symex::mk_branch(tree_from_json(b["then"]),
                            tree_from_json(b["else"]));
  }
  if (!j.contains("step")) bad("tree node has no step/branch/success tag");
  const json& step = j["step"];
  if (step == "done") {
    if (j.size() != 1) bad("done step carries no other fields");
    return symex::mk_done();
  }
  if (step != "consume" && step != "auto_open")
    bad("unknown step kind: " + step.dump());
  if (j.size() != 3 || !j.contains("k") || !j.contains("next"))
    bad("step node needs exactly step, k, next");
  if (!j["k"].is_number_unsigned()) bad("k must be a natural number");
  std::size_t k = j["k"].get<std::size_t>();
  TreeP next = tree_from_json(j["next"]);
  if (step == "consume") return symex::mk_step(SymexStep::consume(k), next);
  return symex::mk_step(SymexStep::auto_open(k), next);
}

} // namespace

std::string certificate_to_json(const symex::Certificate& cert) {
  json functions = json::array();
  for (const auto& [name, tree] : cert.trees)
    functions.push_back(json{{"name", name}, {"tree", tree_to_json(tree)}});
  json root{{"version", cert.format_version},
            {"digest", to_hex(cert.program_digest)},
            {"functions", functions}};
  return root.dump(2) + "\n";
}

symex::Certificate certificate_from_json(const std::string& text) {
  json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) bad("not valid JSON");
  if (!root.is_object() || !root.contains("version") ||
      !root.contains("digest") || !root.contains("functions"))
    bad("top level needs version, digest, functions");
  if (!root["version"].is_number_unsigned()) bad("version must be a natural");

  symex::Certificate cert;
  cert.format_version = root["version"].get<std::uint32_t>();
  if (cert.format_version != 1)
    bad("unsupported version " + std::to_string(cert.format_version));
  if (!root["digest"].is_string() ||
      !from_hex(root["digest"].get<std::string>(), cert.program_digest))
    bad("digest must be 64 hex characters");
  if (!root["functions"].is_array()) bad("functions must be an array");
  for (const json& f : root["functions"]) {
    if (!f.is_object() || !f.contains("name") || !f.contains("tree") ||
        !f["name"].is_string())
      bad("function entry needs name and tree");
    cert.trees.emplace_back(f["name"].get<std::string>(),
                            tree_from_json(f["tree"]));
  }
  return cert;
}

} // namespace mirrorvf::cli
