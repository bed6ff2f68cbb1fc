// SPDX-License-Identifier: Apache-2.0
#include "mirrorvf/pretty.hpp"

namespace mirrorvf::lang {

std::string to_string(const Expr& e) {
  switch (e.kind) {
  case Expr::Kind::Var: return e.name;
  case Expr::Kind::Null: return "0";
  case Expr::Kind::AddrOf: return "&raw mut " + e.name;
  }
  return "?";
}

std::string to_string(const Pat& p) {
  if (p.is_binder) return "?" + p.binder;
  return to_string(p.term);
}

std::string to_string(const Assertion& a) {
  if (std::holds_alternative<TrueA>(a.node)) return "true";
  if (const auto* p = std::get_if<PointsToA>(&a.node))
    return "*(" + to_string(p->target) + ") |-> " + to_string(p->pat);
  if (const auto* p = std::get_if<PredAppA>(&a.node)) {
    std::string out = p->name + "(";
    for (std::size_t i = 0; i < p->args.size(); ++i) {
      if (i) out += ", ";
      out += to_string(p->args[i]);
    }
    return out + ")";
  }
  if (const auto* p = std::get_if<SepConjA>(&a.node))
    return to_string(*p->left) + " &*& " + to_string(*p->right);
  const auto& c = std::get<CondA>(a.node);
  return "if " + to_string(c.lhs) + " == " + to_string(c.rhs) + " { " +
         to_string(*c.then_branch) + " } else { " + to_string(*c.else_branch) +
         " }";
}

namespace {

std::string args_list(const std::vector<Expr>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += to_string(args[i]);
  }
  return out;
}

struct StmtPrinter {
  std::string operator()(const LetValueS& s) const {
    if (!s.init) return "let mut " + s.name + ";";
    return "let " + s.name + " = " + to_string(*s.init) + ";";
  }
  std::string operator()(const LetAddressedS& s) const {
    if (!s.init) return "let mut " + s.name + ";";
    return "let mut " + s.name + " = " + to_string(*s.init) + ";";
  }
  std::string operator()(const LetDerefS& s) const {
    return "let " + s.name + " = *(" + to_string(s.target) + ");";
  }
  std::string operator()(const WriteDerefS& s) const {
    return "*(" + to_string(s.target) + ") = " + to_string(s.value) + ";";
  }
  std::string operator()(const IfNullS& s) const {
    std::string out = "if " + to_string(s.scrutinee) + ".is_null() { ... }";
    if (!s.else_body.empty()) out += " else { ... }";
    return out;
  }
  std::string operator()(const CallS& s) const {
    std::string call = s.callee + "(" + args_list(s.args) + ")";
    if (s.tail_sugar) return call;
    if (s.bind) return "let " + *s.bind + " = " + call + ";";
    return call + ";";
  }
  std::string operator()(const ReturnS& s) const {
    return "return " + to_string(s.value) + ";";
  }
  std::string operator()(const AbortS&) const {
    return "std::process::abort();";
  }
  std::string operator()(const GhostOpenS& s) const {
    return "//@ open " + s.pred + "(" + args_list(s.args) + ");";
  }
  std::string operator()(const GhostCloseS& s) const {
    return "//@ close " + s.pred + "(" + args_list(s.args) + ");";
  }
};

} // namespace

std::string to_string(const Stmt& s) {
  return std::visit(StmtPrinter{}, s.node);
}

namespace {

void print_block(std::string& out, const std::vector<Stmt>& body, int indent);

void print_stmt(std::string& out, const std::vector<Stmt>& body,
                std::size_t& i, int indent) {
  const Stmt& s = body[i];
  std::string pad(static_cast<std::size_t>(indent) * 4, ' ');

  if (const auto* ifs = std::get_if<IfNullS>(&s.node)) {
    out += pad + "if " + to_string(ifs->scrutinee) + ".is_null() {\n";
    print_block(out, ifs->then_body, indent + 1);
    out += pad + "}";
    if (!ifs->else_body.empty()) {
      out += " else {\n";
      print_block(out, ifs->else_body, indent + 1);
      out += pad + "}";
    }
    out += "\n";
    return;
  }
  if (const auto* call = std::get_if<CallS>(&s.node)) {
    // A tail-sugar call prints back as the trailing expression it came
    // from, re-absorbing the hidden return that follows it.
    if (call->tail_sugar && i + 1 < body.size()) {
      const auto* ret = std::get_if<ReturnS>(&body[i + 1].node);
      if (ret && ret->value.kind == Expr::Kind::Var &&
          ret->value.name == kTailBind) {
        out += pad + call->callee + "(" + args_list(call->args) + ")\n";
        ++i;
        return;
      }
    }
  }
  out += pad + to_string(s) + "\n";
}

void print_block(std::string& out, const std::vector<Stmt>& body, int indent) {
  for (std::size_t i = 0; i < body.size(); ++i)
    print_stmt(out, body, i, indent);
}

} // namespace

std::string pretty_print(const Program& p) {
  std::string out;
  if (!p.predicates.empty()) {
    out += "/*@\n";
    for (const auto& pred : p.predicates) {
      out += "pred " + pred.name + "(";
      for (std::size_t i = 0; i < pred.params.size(); ++i) {
        if (i) out += ", ";
        out += pred.params[i];
      }
      out += ") = " + to_string(*pred.body) + ";\n";
    }
    out += "@*/\n\n";
  }
  for (const auto& fn : p.functions) {
    out += "fn " + fn.name + "(";
    for (std::size_t i = 0; i < fn.params.size(); ++i) {
      if (i) out += ", ";
      out += fn.params[i];
    }
    out += ")\n";
    out += "//@ req " + to_string(*fn.pre) + ";\n";
    out += "//@ ens " + to_string(*fn.post) + ";\n";
    out += "{\n";
    print_block(out, fn.body, 1);
    out += "}\n\n";
  }
  return out;
}

} // namespace mirrorvf::lang
