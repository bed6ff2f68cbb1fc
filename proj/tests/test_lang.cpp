// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mirrorvf/canon.hpp"
#include "mirrorvf/parser.hpp"
#include "mirrorvf/pretty.hpp"
#include "mirrorvf/resolve.hpp"
#include "support/testutil.hpp"

#include <set>

using namespace mirrorvf;
using namespace mirrorvf::lang;
using testsupport::fig1_source;

TEST_CASE("the linked-list example parses to one predicate and three functions") {
  Program p = parse_program(fig1_source());
  REQUIRE(p.predicates.size() == 1);
  CHECK(p.predicates[0].name == "llist");
  CHECK(p.predicates[0].params == std::vector<std::string>{"head"});
  REQUIRE(p.functions.size() == 3);
  CHECK(p.functions[0].name == "reverse_iter");
  CHECK(p.functions[0].params == std::vector<std::string>{"original", "reversed"});
  CHECK(p.functions[1].name == "reverse");
  CHECK(p.functions[2].name == "main");
  CHECK(p.functions[2].params.empty());

  // llist body: if head == 0 { true } else { *(head) |-> ?next &*& llist(next) }
  const auto& cond = std::get<CondA>(p.predicates[0].body->node);
  CHECK(cond.lhs.kind == Expr::Kind::Var);
  CHECK(cond.rhs.kind == Expr::Kind::Null);
  CHECK(std::holds_alternative<TrueA>(cond.then_branch->node));
  const auto& sep = std::get<SepConjA>(cond.else_branch->node);
  const auto& pt = std::get<PointsToA>(sep.left->node);
  CHECK(pt.pat.is_binder);
  CHECK(pt.pat.binder == "next");
  const auto& app = std::get<PredAppA>(sep.right->node);
  CHECK(app.name == "llist");

  // reverse's body ends in a tail call, desugared to a hidden bind + return.
  const auto& rev = p.functions[1];
  REQUIRE(rev.body.size() == 3);
  const auto& call = std::get<CallS>(rev.body[1].node);
  CHECK(call.tail_sugar);
  CHECK(call.callee == "reverse_iter");
  CHECK(call.args.size() == 2);
  CHECK(call.args[1].kind == Expr::Kind::Null);
  CHECK(std::holds_alternative<ReturnS>(rev.body[2].node));
}

TEST_CASE("empty source parses to the empty program") {
  Program p = parse_program("");
  CHECK(p.predicates.empty());
  CHECK(p.functions.empty());
}

TEST_CASE("missing ens annotation is a parse error") {
  try {
    parse_program("fn f() //@ req true;\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.message().find("ens") != std::string::npos);
  }
}

TEST_CASE("hand-minimized bad inputs are rejected with positions") {
  auto rejects = [](const char* src) {
    CHECK_THROWS_AS(parse_program(src), ParseError);
  };
  rejects("fn f()\n//@ ens true;\n{ return 0; }"); // missing req
  rejects("fn f() //@ req true;\n//@ ens true;\n{ return 7; }"); // nonzero literal
  rejects("fn f(x) //@ req true;\n//@ ens true;\n{ if x == x { } return 0; }");
  rejects("fn f() //@ req true;\n//@ ens true;\n{ return 0; let y = 0; }");
  rejects("fn f() //@ req true;\n//@ ens true;\n{ let x = std::mem::zeroed(); }");
  rejects("pred p(x) = true;"); // spec construct outside an annotation
  rejects("/*@ pred p(x) = true;"); // unterminated annotation
  rejects("fn f() //@ req true;\n//@ ens true;\n{ @ }");
}

TEST_CASE("resolution classifies exactly the address-taken locals") {
  ResolvedProgram rp = resolve_program(parse_program(fig1_source()));
  CHECK(rp.local_class("main", "node1") == LocalClass::Addressed);
  CHECK(rp.local_class("main", "node2") == LocalClass::Addressed);
  CHECK(rp.local_class("main", "node3") == LocalClass::Addressed);
  CHECK(rp.local_class("main", "reversed") == LocalClass::ByValue);
  CHECK(rp.local_class("reverse_iter", "original") == LocalClass::ByValue);
  CHECK(rp.local_class("reverse_iter", "reversed") == LocalClass::ByValue);
  CHECK(rp.local_class("reverse_iter", "next") == LocalClass::ByValue);
  CHECK(rp.local_class("reverse", "list") == LocalClass::ByValue);

  // The affected lets were rewritten.
  const auto* main_fn = rp.find_function("main");
  REQUIRE(main_fn);
  int addressed_lets = 0;
  for (const auto& s : main_fn->body)
    if (std::holds_alternative<LetAddressedS>(s.node)) ++addressed_lets;
  CHECK(addressed_lets == 3);
}

TEST_CASE("a program without address-of has only by-value locals") {
  ResolvedProgram rp = resolve_program(parse_program(
      "fn f() //@ req true;\n//@ ens true;\n{ let a = 0; let b = a; return b; }"));
  for (const auto& [name, cls] : rp.locals.at("f"))
    CHECK(cls == LocalClass::ByValue);
}

TEST_CASE("resolve errors: unknown names, arity, binder discipline") {
  auto rejects = [](const char* src, const char* needle) {
    try {
      resolve_program(parse_program(src));
      FAIL_CHECK("expected ResolveError for: " << src);
    } catch (const ResolveError& e) {
      CHECK_MESSAGE(e.message().find(needle) != std::string::npos,
                    e.message());
    }
  };
  rejects("fn f() //@ req true;\n//@ ens true;\n{ foo(); return 0; }",
          "unknown function");
  rejects("fn f() //@ req p(0);\n//@ ens true;\n{ return 0; }",
          "unknown predicate");
  rejects("/*@ pred p(x) = true; @*/\n"
          "fn f() //@ req p(0, 0);\n//@ ens true;\n{ return 0; }",
          "expects 1 argument");
  rejects("/*@ pred p(x) = *(x) |-> ?v &*& *(x) |-> ?v; @*/", "rebinds");
  rejects("/*@ pred p(x) = q(y); @*/", "unknown");
  rejects("fn f() //@ req true; //@ ens true;\n"
          "{ let mut a = 0; let b = a; let c = &raw mut a; return b; }",
          "read by name");
  rejects("fn f(x) //@ req true;\n//@ ens true;\n{ let y = &raw mut x; return 0; }",
          "parameter");
  rejects("fn f() //@ req true;\n//@ ens true;\n{ let x; return 0; }",
          "never address-taken");
  rejects("fn f() //@ req true;\n//@ ens true;\n{ let a = 0; let a = 0; return a; }",
          "duplicate local");
  rejects("fn f() //@ req true;\n//@ ens true;\n{ let result = 0; return result; }",
          "reserved");
  rejects("fn f() //@ req *(0) |-> ?v &*& q(&raw mut v);\n//@ ens true;\n{ return 0; }",
          "unknown");
}

TEST_CASE("pretty-print round trip is a fixpoint on ASTs") {
  auto sources = {
      fig1_source(),
      std::string("fn f() //@ req true;\n//@ ens true;\n{ return 0; }"),
      std::string("/*@ pred cell(p, v) = *(p) |-> v; @*/\n"
                  "fn g(p) //@ req cell(p, 0); //@ ens cell(p, result);\n"
                  "{ let x = *(p); *(p) = x; return x; }"),
      std::string("fn h(a) //@ req true; //@ ens true;\n"
                  "{ if a.is_null() { return 0; } else { return a; } }"),
      std::string("fn k() //@ req true; //@ ens true;\n"
                  "{ let mut u; *(&raw mut u) = 0; std::process::abort(); }"),
  };
  for (const auto& src : sources) {
    Program p1 = parse_program(src);
    std::string printed = pretty_print(p1);
    Program p2 = parse_program(printed);
    CHECK_MESSAGE(ast_equal(p1, p2), printed);
    // And printing again is stable.
    CHECK(pretty_print(p2) == printed);
  }
}

TEST_CASE("classification matches an independent AST walk") {
  // Independent oracle: collect address-of targets by walking the parse AST
  // with a local lambda, then compare with the resolver's classes.
  std::string src = fig1_source();
  Program p = parse_program(src);
  ResolvedProgram rp = resolve_program(p);
  for (const auto& fn : p.functions) {
    std::set<std::string> addr;
    auto scan_expr = [&](const Expr& e) {
      if (e.kind == Expr::Kind::AddrOf) addr.insert(e.name);
    };
    auto scan = [&](const auto& self, const std::vector<Stmt>& body) -> void {
      for (const auto& s : body) {
        std::visit(
            [&](const auto& node) {
              using T = std::decay_t<decltype(node)>;
              if constexpr (std::is_same_v<T, LetValueS> ||
                            std::is_same_v<T, LetAddressedS>) {
                if (node.init) scan_expr(*node.init);
              } else if constexpr (std::is_same_v<T, LetDerefS>) {
                scan_expr(node.target);
              } else if constexpr (std::is_same_v<T, WriteDerefS>) {
                scan_expr(node.target);
                scan_expr(node.value);
              } else if constexpr (std::is_same_v<T, IfNullS>) {
                scan_expr(node.scrutinee);
                self(self, node.then_body);
                self(self, node.else_body);
              } else if constexpr (std::is_same_v<T, CallS> ||
                                   std::is_same_v<T, GhostOpenS> ||
                                   std::is_same_v<T, GhostCloseS>) {
                for (const Expr& e : node.args) scan_expr(e);
              } else if constexpr (std::is_same_v<T, ReturnS>) {
                scan_expr(node.value);
              }
            },
            s.node);
      }
    };
    scan(scan, fn.body);
    for (const auto& [local, cls] : rp.locals.at(fn.name))
      CHECK((cls == LocalClass::Addressed) == (addr.count(local) > 0));
  }
}

TEST_CASE("canonical encoding separates semantic edits, merges formatting") {
  std::string src = fig1_source();
  std::string reformatted = src;
  // Inject comments and whitespace; semantics unchanged.
  reformatted.insert(0, "// a comment\n\n");
  Program a = parse_program(src);
  Program b = parse_program(reformatted);
  CHECK(canonical_encoding(a) == canonical_encoding(b));

  std::string edited = src;
  auto pos = edited.find("//@ close llist(0);");
  REQUIRE(pos != std::string::npos);
  edited.erase(pos, std::string("//@ close llist(0);").size());
  Program c = parse_program(edited);
  CHECK(canonical_encoding(a) != canonical_encoding(c));
}
