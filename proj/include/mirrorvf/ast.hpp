// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/diag.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mirrorvf::lang {

/// Program expression. Casts and type ascriptions are erased at parse time;
/// the null literal covers both `0` and `std::ptr::null_mut()`.
struct Expr {
  enum class Kind { Var, Null, AddrOf };
  Kind kind = Kind::Null;
  std::string name; // Var / AddrOf
  SrcLoc loc;

  static Expr var(std::string n, SrcLoc l = {}) {
    return {Kind::Var, std::move(n), l};
  }
  static Expr null_lit(SrcLoc l = {}) { return {Kind::Null, {}, l}; }
  static Expr addr_of(std::string n, SrcLoc l = {}) {
    return {Kind::AddrOf, std::move(n), l};
  }
};

/// Right-hand side of a points-to assertion: a term or a `?x` binder whose
/// scope extends to the end of the enclosing assertion.
struct Pat {
  bool is_binder = false;
  Expr term;          // !is_binder
  std::string binder; // is_binder

  static Pat of_expr(Expr e) { return {false, std::move(e), {}}; }
  static Pat of_binder(std::string n) { return {true, {}, std::move(n)}; }
};

struct Assertion;
using AssertP = std::shared_ptr<const Assertion>;

struct TrueA {};
struct PointsToA {
  Expr target;
  Pat pat;
};
struct PredAppA {
  std::string name;
  std::vector<Expr> args;
};
struct SepConjA {
  AssertP left, right;
};
struct CondA {
  Expr lhs, rhs;
  AssertP then_branch, else_branch;
};

struct Assertion {
  std::variant<TrueA, PointsToA, PredAppA, SepConjA, CondA> node;
  SrcLoc loc;
};

AssertP mk_true(SrcLoc loc = {});
AssertP mk_points_to(Expr target, Pat pat, SrcLoc loc = {});
AssertP mk_pred_app(std::string name, std::vector<Expr> args, SrcLoc loc = {});
AssertP mk_sep_conj(AssertP l, AssertP r, SrcLoc loc = {});
AssertP mk_cond(Expr lhs, Expr rhs, AssertP t, AssertP e, SrcLoc loc = {});

struct Stmt;

// The parser emits LetValueS for every plain `let`; the resolver rewrites
// the ones whose address is taken into LetAddressedS.
struct LetValueS {
  std::string name;
  std::optional<Expr> init;
};
struct LetAddressedS {
  std::string name;
  std::optional<Expr> init; // absent: cell stays uninitialized
};
struct LetDerefS {
  std::string name;
  Expr target; // *target
};
struct WriteDerefS {
  Expr target;
  Expr value;
};
struct IfNullS {
  Expr scrutinee;
  std::vector<Stmt> then_body, else_body;
};
struct CallS {
  std::optional<std::string> bind;
  std::string callee;
  std::vector<Expr> args;
  bool tail_sugar = false; // came from a trailing call expression
};
struct ReturnS {
  Expr value;
};
struct AbortS {};
struct GhostOpenS {
  std::string pred;
  std::vector<Expr> args;
};
struct GhostCloseS {
  std::string pred;
  std::vector<Expr> args;
};

struct Stmt {
  std::variant<LetValueS, LetAddressedS, LetDerefS, WriteDerefS, IfNullS,
               CallS, ReturnS, AbortS, GhostOpenS, GhostCloseS>
      node;
  SrcLoc loc;
};

struct PredicateDef {
  std::string name;
  std::vector<std::string> params;
  AssertP body;
  SrcLoc loc;
};

struct FunctionDef {
  std::string name;
  std::vector<std::string> params;
  AssertP pre, post;
  std::vector<Stmt> body;
  SrcLoc loc;
};

struct Program {
  std::vector<PredicateDef> predicates;
  std::vector<FunctionDef> functions;

  const PredicateDef* find_predicate(const std::string& name) const;
  const FunctionDef* find_function(const std::string& name) const;
};

/// Name used for the hidden binding of a trailing call expression; not
/// lexable as a user identifier.
inline const std::string kTailBind = "$tail";

/// How a local is stored during verification and execution.
enum class LocalClass { ByValue, Addressed };

/// Program with names resolved, arities checked, and every local classified.
/// The statement lists below are the rewritten ones (LetAddressedS applied).
struct ResolvedProgram {
  Program program;
  // function name -> local name -> classification (params included, always
  // ByValue)
  std::map<std::string, std::map<std::string, LocalClass>> locals;

  const PredicateDef* find_predicate(const std::string& name) const {
    return program.find_predicate(name);
  }
  const FunctionDef* find_function(const std::string& name) const {
    return program.find_function(name);
  }
  LocalClass local_class(const std::string& fn, const std::string& local) const;
};

} // namespace mirrorvf::lang
