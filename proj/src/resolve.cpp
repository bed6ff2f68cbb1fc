// SPDX-License-Identifier: Apache-2.0
//
// Name resolution and local classification. Two expression contexts exist:
//  - store context (statement operands, ghost-command arguments): variables
//    name by-value locals; address-of names an address-taken local. Reading
//    an address-taken local by name is an error — its value lives in a heap
//    chunk, not in the store.
//  - assertion context (spec bodies, predicate bodies): variables name
//    parameters and earlier `?` binders; address-of has no meaning there.

#include "mirrorvf/resolve.hpp"

#include <set>

namespace mirrorvf::lang {

namespace {

class Resolver {
public:
  explicit Resolver(const Program& p) : in_(p) {}

  ResolvedProgram run() {
    collect_toplevel();
    for (const auto& pred : in_.predicates) check_predicate(pred);

    ResolvedProgram out;
    out.program.predicates = in_.predicates;
    for (const auto& fn : in_.functions)
      out.program.functions.push_back(check_function(fn, out));
    return out;
  }

private:
  const Program& in_;
  std::set<std::string> pred_names_, fn_names_;

  [[noreturn]] static void fail(SrcLoc loc, const std::string& msg) {
    throw ResolveError(loc, msg);
  }

  void collect_toplevel() {
    for (const auto& p : in_.predicates)
      if (!pred_names_.insert(p.name).second)
        fail(p.loc, "duplicate predicate '" + p.name + "'");
    for (const auto& f : in_.functions) {
      if (!fn_names_.insert(f.name).second)
        fail(f.loc, "duplicate function '" + f.name + "'");
      if (pred_names_.count(f.name))
        fail(f.loc, "'" + f.name + "' is both a predicate and a function");
    }
  }

  // ---- assertions ----

  /// Scope-threading walk: binders join the scope for the remainder of the
  /// enclosing assertion; conditional branches keep their binders local.
  void check_assertion(const Assertion& a, std::set<std::string>& scope) {
    if (std::holds_alternative<TrueA>(a.node)) return;
    if (const auto* p = std::get_if<PointsToA>(&a.node)) {
      check_assert_expr(p->target, scope);
      if (p->pat.is_binder) {
        if (!scope.insert(p->pat.binder).second)
          fail(a.loc, "binder '?" + p->pat.binder +
                          "' rebinds a name already in scope");
      } else {
        check_assert_expr(p->pat.term, scope);
      }
      return;
    }
    if (const auto* p = std::get_if<PredAppA>(&a.node)) {
      const PredicateDef* def = in_.find_predicate(p->name);
      if (!def) fail(a.loc, "unknown predicate '" + p->name + "'");
      if (def->params.size() != p->args.size())
        fail(a.loc, "predicate '" + p->name + "' expects " +
                        std::to_string(def->params.size()) + " arguments");
      for (const Expr& e : p->args) check_assert_expr(e, scope);
      return;
    }
    if (const auto* p = std::get_if<SepConjA>(&a.node)) {
      check_assertion(*p->left, scope);
      check_assertion(*p->right, scope);
      return;
    }
    const auto& c = std::get<CondA>(a.node);
    check_assert_expr(c.lhs, scope);
    check_assert_expr(c.rhs, scope);
    std::set<std::string> then_scope = scope, else_scope = scope;
    check_assertion(*c.then_branch, then_scope);
    check_assertion(*c.else_branch, else_scope);
  }

  void check_assert_expr(const Expr& e, const std::set<std::string>& scope) {
    switch (e.kind) {
    case Expr::Kind::Null: return;
    case Expr::Kind::AddrOf:
      fail(e.loc, "address-of is not allowed inside assertions");
    case Expr::Kind::Var:
      if (!scope.count(e.name))
        fail(e.loc, "unknown assertion variable '" + e.name + "'");
      return;
    }
  }

  void check_predicate(const PredicateDef& pred) {
    std::set<std::string> scope;
    for (const auto& p : pred.params)
      if (!scope.insert(p).second)
        fail(pred.loc, "duplicate parameter '" + p + "'");
    check_assertion(*pred.body, scope);
  }

  // ---- functions ----

  struct FnCtx {
    std::set<std::string> addr_taken; // locals targeted by address-of
    std::set<std::string> declared;   // params + all locals, function-wide
  };

  FunctionDef check_function(const FunctionDef& fn, ResolvedProgram& out) {
    FnCtx ctx;
    for (const auto& p : fn.params) {
      if (p == "result") fail(fn.loc, "'result' is reserved");
      if (!ctx.declared.insert(p).second)
        fail(fn.loc, "duplicate parameter '" + p + "'");
    }

    std::set<std::string> spec_scope(fn.params.begin(), fn.params.end());
    check_assertion(*fn.pre, spec_scope);
    std::set<std::string> post_scope(fn.params.begin(), fn.params.end());
    post_scope.insert("result");
    check_assertion(*fn.post, post_scope);

    collect_addr_taken(fn.body, fn, ctx);

    std::set<std::string> scope(fn.params.begin(), fn.params.end());
    FunctionDef resolved = fn;
    resolved.body = check_block(fn.body, ctx, scope);

    auto& classes = out.locals[fn.name];
    for (const auto& name : ctx.declared)
      classes[name] = ctx.addr_taken.count(name) ? LocalClass::Addressed
                                                 : LocalClass::ByValue;
    return resolved;
  }

  /// Classification pre-pass: one walk over every store-context expression
  /// in the function. Any address-of anywhere makes the local Addressed,
  /// including uses after its declaration statement.
  void collect_addr_taken(const std::vector<Stmt>& body,
                          const FunctionDef& fn, FnCtx& ctx) {
    auto mark = [&](const Expr& e) {
      if (e.kind != Expr::Kind::AddrOf) return;
      for (const auto& p : fn.params)
        if (p == e.name)
          fail(e.loc, "cannot take the address of parameter '" + e.name + "'");
      ctx.addr_taken.insert(e.name);
    };
    for (const Stmt& s : body) {
      std::visit(
          [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, LetValueS> ||
                          std::is_same_v<T, LetAddressedS>) {
              if (node.init) mark(*node.init);
            } else if constexpr (std::is_same_v<T, LetDerefS>) {
              mark(node.target);
            } else if constexpr (std::is_same_v<T, WriteDerefS>) {
              mark(node.target);
              mark(node.value);
            } else if constexpr (std::is_same_v<T, IfNullS>) {
              mark(node.scrutinee);
              collect_addr_taken(node.then_body, fn, ctx);
              collect_addr_taken(node.else_body, fn, ctx);
            } else if constexpr (std::is_same_v<T, CallS>) {
              for (const Expr& e : node.args) mark(e);
            } else if constexpr (std::is_same_v<T, ReturnS>) {
              mark(node.value);
            } else if constexpr (std::is_same_v<T, GhostOpenS> ||
                                 std::is_same_v<T, GhostCloseS>) {
              for (const Expr& e : node.args) mark(e);
            }
          },
          s.node);
    }
  }

  void check_store_expr(const Expr& e, const FnCtx& ctx,
                        const std::set<std::string>& scope) {
    switch (e.kind) {
    case Expr::Kind::Null:
      return;
    case Expr::Kind::Var:
      if (!scope.count(e.name))
        fail(e.loc, "unknown variable '" + e.name + "'");
      if (ctx.addr_taken.count(e.name))
        fail(e.loc, "address-taken local '" + e.name +
                        "' cannot be read by name; dereference its address");
      return;
    case Expr::Kind::AddrOf:
      if (!scope.count(e.name))
        fail(e.loc, "unknown variable '" + e.name + "'");
      return;
    }
  }

  void declare_local(const std::string& name, SrcLoc loc, FnCtx& ctx,
                     std::set<std::string>& scope) {
    if (name == "result") fail(loc, "'result' is reserved");
    if (!ctx.declared.insert(name).second)
      fail(loc, "duplicate local '" + name + "'");
    scope.insert(name);
  }

  std::vector<Stmt> check_block(const std::vector<Stmt>& body, FnCtx& ctx,
                                std::set<std::string>& scope) {
    std::vector<Stmt> out;
    out.reserve(body.size());
    for (const Stmt& s : body) out.push_back(check_stmt(s, ctx, scope));
    return out;
  }

  Stmt check_stmt(const Stmt& s, FnCtx& ctx, std::set<std::string>& scope) {
    SrcLoc loc = s.loc;
    if (const auto* let = std::get_if<LetValueS>(&s.node)) {
      if (let->init) check_store_expr(*let->init, ctx, scope);
      declare_local(let->name, loc, ctx, scope);
      bool addressed = ctx.addr_taken.count(let->name) > 0;
      if (!let->init && !addressed)
        fail(loc, "uninitialized local '" + let->name +
                      "' is never address-taken and can never be read");
      if (addressed) return {LetAddressedS{let->name, let->init}, loc};
      return s;
    }
    if (const auto* let = std::get_if<LetDerefS>(&s.node)) {
      check_store_expr(let->target, ctx, scope);
      declare_local(let->name, loc, ctx, scope);
      if (ctx.addr_taken.count(let->name))
        fail(loc, "address-taken local '" + let->name +
                      "' must be declared by a plain let");
      return s;
    }
    if (const auto* w = std::get_if<WriteDerefS>(&s.node)) {
      check_store_expr(w->target, ctx, scope);
      check_store_expr(w->value, ctx, scope);
      return s;
    }
    if (const auto* ifs = std::get_if<IfNullS>(&s.node)) {
      check_store_expr(ifs->scrutinee, ctx, scope);
      // Branch-local declarations do not escape their branch.
      std::set<std::string> then_scope = scope, else_scope = scope;
      IfNullS resolved{ifs->scrutinee,
                       check_block(ifs->then_body, ctx, then_scope),
                       check_block(ifs->else_body, ctx, else_scope)};
      return {std::move(resolved), loc};
    }
    if (const auto* call = std::get_if<CallS>(&s.node)) {
      const FunctionDef* callee = in_.find_function(call->callee);
      if (!callee) fail(loc, "unknown function '" + call->callee + "'");
      if (callee->params.size() != call->args.size())
        fail(loc, "function '" + call->callee + "' expects " +
                      std::to_string(callee->params.size()) + " arguments");
      for (const Expr& e : call->args) check_store_expr(e, ctx, scope);
      if (call->bind) {
        declare_local(*call->bind, loc, ctx, scope);
        if (ctx.addr_taken.count(*call->bind))
          fail(loc, "address-taken local '" + *call->bind +
                        "' must be declared by a plain let");
      }
      return s;
    }
    if (const auto* ret = std::get_if<ReturnS>(&s.node)) {
      check_store_expr(ret->value, ctx, scope);
      return s;
    }
    if (std::holds_alternative<AbortS>(s.node)) return s;
    if (const auto* g = std::get_if<GhostOpenS>(&s.node)) {
      check_ghost_args(g->pred, g->args, loc, ctx, scope);
      return s;
    }
    const auto& g = std::get<GhostCloseS>(s.node);
    check_ghost_args(g.pred, g.args, loc, ctx, scope);
    return s;
  }

  void check_ghost_args(const std::string& pred, const std::vector<Expr>& args,
                        SrcLoc loc, const FnCtx& ctx,
                        const std::set<std::string>& scope) {
    const PredicateDef* def = in_.find_predicate(pred);
    if (!def) fail(loc, "unknown predicate '" + pred + "'");
    if (def->params.size() != args.size())
      fail(loc, "predicate '" + pred + "' expects " +
                    std::to_string(def->params.size()) + " arguments");
    for (const Expr& e : args) check_store_expr(e, ctx, scope);
  }
};

} // namespace

ResolvedProgram resolve_program(const Program& p) {
  return Resolver(p).run();
}

} // namespace mirrorvf::lang
