// SPDX-License-Identifier: Apache-2.0
#include "mirrorvf/canon.hpp"

namespace mirrorvf::lang {

namespace {

void enc_expr(std::string& out, const Expr& e) {
  switch (e.kind) {
  case Expr::Kind::Var: out += "(v " + e.name + ")"; return;
  case Expr::Kind::Null: out += "null"; return;
  case Expr::Kind::AddrOf: out += "(addr " + e.name + ")"; return;
  }
}

void enc_pat(std::string& out, const Pat& p) {
  if (p.is_binder) {
    out += "(bind " + p.binder + ")";
  } else {
    enc_expr(out, p.term);
  }
}

void enc_exprs(std::string& out, const std::vector<Expr>& es) {
  for (const Expr& e : es) enc_expr(out, e);
}

void enc_assert(std::string& out, const Assertion& a) {
  if (std::holds_alternative<TrueA>(a.node)) {
    out += "true";
    return;
  }
  if (const auto* p = std::get_if<PointsToA>(&a.node)) {
    out += "(pt ";
    enc_expr(out, p->target);
    enc_pat(out, p->pat);
    out += ")";
    return;
  }
  if (const auto* p = std::get_if<PredAppA>(&a.node)) {
    out += "(app " + p->name;
    enc_exprs(out, p->args);
    out += ")";
    return;
  }
  if (const auto* p = std::get_if<SepConjA>(&a.node)) {
    out += "(sep ";
    enc_assert(out, *p->left);
    enc_assert(out, *p->right);
    out += ")";
    return;
  }
  const auto& c = std::get<CondA>(a.node);
  out += "(cond ";
  enc_expr(out, c.lhs);
  enc_expr(out, c.rhs);
  enc_assert(out, *c.then_branch);
  enc_assert(out, *c.else_branch);
  out += ")";
}

void enc_block(std::string& out, const std::vector<Stmt>& body);

void enc_stmt(std::string& out, const Stmt& s) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, LetValueS>) {
          out += "(letv " + node.name;
          if (node.init) enc_expr(out, *node.init);
          out += ")";
        } else if constexpr (std::is_same_v<T, LetAddressedS>) {
          out += "(leta " + node.name;
          if (node.init) enc_expr(out, *node.init);
          out += ")";
        } else if constexpr (std::is_same_v<T, LetDerefS>) {
          out += "(letd " + node.name;
          enc_expr(out, node.target);
          out += ")";
        } else if constexpr (std::is_same_v<T, WriteDerefS>) {
          out += "(write ";
          enc_expr(out, node.target);
          enc_expr(out, node.value);
          out += ")";
        } else if constexpr (std::is_same_v<T, IfNullS>) {
          out += "(ifnull ";
          enc_expr(out, node.scrutinee);
          enc_block(out, node.then_body);
          enc_block(out, node.else_body);
          out += ")";
        } else if constexpr (std::is_same_v<T, CallS>) {
          out += "(call ";
          out += node.bind ? *node.bind : std::string("_");
          out += " " + node.callee;
          enc_exprs(out, node.args);
          out += ")";
        } else if constexpr (std::is_same_v<T, ReturnS>) {
          out += "(ret ";
          enc_expr(out, node.value);
          out += ")";
        } else if constexpr (std::is_same_v<T, AbortS>) {
          out += "abort";
        } else if constexpr (std::is_same_v<T, GhostOpenS>) {
          out += "(open " + node.pred;
          enc_exprs(out, node.args);
          out += ")";
        } else {
          static_assert(std::is_same_v<T, GhostCloseS>);
          out += "(close " + node.pred;
          enc_exprs(out, node.args);
          out += ")";
        }
      },
      s.node);
}

void enc_block(std::string& out, const std::vector<Stmt>& body) {
  out += "(";
  for (const Stmt& s : body) enc_stmt(out, s);
  out += ")";
}

void enc_names(std::string& out, const std::vector<std::string>& names) {
  out += "(";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += " ";
    out += names[i];
  }
  out += ")";
}

} // namespace

std::string canonical_encoding(const Program& p) {
  std::string out = "(program";
  for (const auto& pred : p.predicates) {
    out += "(pred " + pred.name;
    enc_names(out, pred.params);
    enc_assert(out, *pred.body);
    out += ")";
  }
  for (const auto& fn : p.functions) {
    out += "(fn " + fn.name;
    enc_names(out, fn.params);
    out += "(req ";
    enc_assert(out, *fn.pre);
    out += ")(ens ";
    enc_assert(out, *fn.post);
    out += ")";
    enc_block(out, fn.body);
    out += ")";
  }
  return out + ")";
}

std::string canonical_encoding(const ResolvedProgram& rp) {
  return canonical_encoding(rp.program);
}

bool ast_equal(const Program& a, const Program& b) {
  return canonical_encoding(a) == canonical_encoding(b);
}

} // namespace mirrorvf::lang
