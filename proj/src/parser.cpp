// SPDX-License-Identifier: Apache-2.0
//
// Recursive-descent parser for the annotated pointer mini-language. The
// token stream carries a ghost flag per token; specification constructs
// (pred, req, ens, open, close) must come from annotations and executable
// code must not, which is what expect()'s ghost parameter enforces.
//
// Surface sugar handled here: `x.is_null()` becomes a null comparison,
// `std::ptr::null_mut()` and the literal 0 become the null expression,
// `std::process::abort()` becomes the abort statement, a trailing call
// expression becomes a hidden let + return, and `unsafe { ... }` blocks
// splice into the surrounding statement list.

#include "mirrorvf/parser.hpp"
#include "mirrorvf/lexer.hpp"

namespace mirrorvf::lang {

namespace {

constexpr const char* kNullPath = "std::ptr::null_mut";
constexpr const char* kAbortPath = "std::process::abort";

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program run() {
    Program prog;
    while (!at(Tok::Eof)) {
      const Token& t = peek();
      if (t.ghost && t.kind == Tok::Ident && t.text == "pred") {
        prog.predicates.push_back(parse_predicate());
      } else if (!t.ghost && t.kind == Tok::Ident &&
                 (t.text == "fn" || t.text == "unsafe")) {
        prog.functions.push_back(parse_function());
      } else {
        throw ParseError(t.loc, "expected 'pred', 'fn', or end of input");
      }
    }
    return prog;
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_kw(const char* text, bool ghost) const {
    const Token& t = peek();
    return t.kind == Tok::Ident && t.text == text && t.ghost == ghost;
  }
  const Token& advance() {
    const Token& t = peek();
    if (t.kind != Tok::Eof) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(peek().loc, "expected " + expected);
  }

  const Token& expect(Tok kind, bool ghost, const char* what) {
    const Token& t = peek();
    if (t.kind != kind || t.ghost != ghost) fail(what);
    return advance();
  }
  void expect_kw(const char* text, bool ghost) {
    if (!at_kw(text, ghost)) fail(std::string("'") + text + "'");
    advance();
  }
  std::string expect_ident(bool ghost, const char* what) {
    return expect(Tok::Ident, ghost, what).text;
  }

  // ---- types (parsed and discarded) ----

  void parse_type(bool ghost) {
    while (at(Tok::Star) && peek().ghost == ghost) {
      advance();
      expect_kw("mut", ghost);
    }
    expect(Tok::Ident, ghost, "type name");
  }

  // ---- expressions ----

  Expr parse_expr(bool ghost) {
    Expr e = parse_primary(ghost);
    while (at_kw("as", ghost)) {
      advance();
      parse_type(ghost); // casts are identity
    }
    return e;
  }

  Expr parse_primary(bool ghost) {
    const Token& t = peek();
    if (t.ghost != ghost)
      fail(ghost ? "annotation content" : "expression");
    switch (t.kind) {
    case Tok::Int: {
      advance();
      if (t.text != "0")
        throw ParseError(t.loc, "only the null literal 0 is supported");
      return Expr::null_lit(t.loc);
    }
    case Tok::Path: {
      advance();
      if (t.text != kNullPath)
        throw ParseError(t.loc, "unknown qualified name '" + t.text + "'");
      expect(Tok::LParen, ghost, "'('");
      expect(Tok::RParen, ghost, "')'");
      return Expr::null_lit(t.loc);
    }
    case Tok::Amp: {
      advance();
      if (at_kw("raw", ghost)) {
        advance();
        expect_kw("mut", ghost);
      }
      std::string name = expect_ident(ghost, "identifier after '&'");
      return Expr::addr_of(std::move(name), t.loc);
    }
    case Tok::Ident: {
      advance();
      return Expr::var(t.text, t.loc);
    }
    case Tok::LParen: {
      advance();
      Expr e = parse_expr(ghost);
      expect(Tok::RParen, ghost, "')'");
      return e;
    }
    default:
      fail("expression");
    }
  }

  /// Target of a dereference: `*(expr)` or `*ident`.
  Expr parse_deref_target(bool ghost) {
    if (at(Tok::LParen) && peek().ghost == ghost) {
      advance();
      Expr e = parse_expr(ghost);
      expect(Tok::RParen, ghost, "')'");
      return e;
    }
    const Token& t = expect(Tok::Ident, ghost, "identifier or '(' after '*'");
    return Expr::var(t.text, t.loc);
  }

  /// `expr == expr` or `expr.is_null()`; used by statement ifs (which must
  /// compare against null) and assertion conditionals (general equality).
  std::pair<Expr, Expr> parse_condition(bool ghost) {
    Expr lhs = parse_expr(ghost);
    if (at(Tok::Dot) && peek().ghost == ghost) {
      advance();
      expect_kw("is_null", ghost);
      expect(Tok::LParen, ghost, "'('");
      expect(Tok::RParen, ghost, "')'");
      return {std::move(lhs), Expr::null_lit(lhs.loc)};
    }
    expect(Tok::EqEq, ghost, "'==' or '.is_null()'");
    Expr rhs = parse_expr(ghost);
    return {std::move(lhs), std::move(rhs)};
  }

  // ---- assertions ----

  AssertP parse_assertion(bool ghost) {
    SrcLoc loc = peek().loc;
    AssertP left = parse_assertion_atom(ghost);
    if (at(Tok::SepAnd) && peek().ghost == ghost) {
      advance();
      AssertP right = parse_assertion(ghost);
      return mk_sep_conj(std::move(left), std::move(right), loc);
    }
    return left;
  }

  AssertP parse_assertion_atom(bool ghost) {
    const Token& t = peek();
    if (t.ghost != ghost) fail("assertion");
    if (t.kind == Tok::Ident && t.text == "true") {
      advance();
      return mk_true(t.loc);
    }
    if (t.kind == Tok::Ident && t.text == "if") {
      advance();
      auto [lhs, rhs] = parse_condition(ghost);
      expect(Tok::LBrace, ghost, "'{'");
      AssertP then_a = parse_assertion(ghost);
      expect(Tok::RBrace, ghost, "'}'");
      expect_kw("else", ghost);
      expect(Tok::LBrace, ghost, "'{'");
      AssertP else_a = parse_assertion(ghost);
      expect(Tok::RBrace, ghost, "'}'");
      return mk_cond(std::move(lhs), std::move(rhs), std::move(then_a),
                     std::move(else_a), t.loc);
    }
    if (t.kind == Tok::Star) {
      advance();
      Expr target = parse_deref_target(ghost);
      expect(Tok::MapsTo, ghost, "'|->'");
      Pat pat = parse_pat(ghost);
      return mk_points_to(std::move(target), std::move(pat), t.loc);
    }
    if (t.kind == Tok::Ident) {
      advance();
      expect(Tok::LParen, ghost, "'(' after predicate name");
      std::vector<Expr> args = parse_expr_list(ghost);
      return mk_pred_app(t.text, std::move(args), t.loc);
    }
    fail("assertion");
  }

  Pat parse_pat(bool ghost) {
    if (at(Tok::Question) && peek().ghost == ghost) {
      advance();
      return Pat::of_binder(expect_ident(ghost, "binder name after '?'"));
    }
    return Pat::of_expr(parse_expr(ghost));
  }

  std::vector<Expr> parse_expr_list(bool ghost) {
    std::vector<Expr> args;
    if (at(Tok::RParen) && peek().ghost == ghost) {
      advance();
      return args;
    }
    while (true) {
      args.push_back(parse_expr(ghost));
      if (at(Tok::Comma) && peek().ghost == ghost) {
        advance();
        continue;
      }
      expect(Tok::RParen, ghost, "',' or ')'");
      return args;
    }
  }

  // ---- predicates and functions ----

  std::vector<std::string> parse_params(bool ghost) {
    expect(Tok::LParen, ghost, "'('");
    std::vector<std::string> names;
    if (at(Tok::RParen) && peek().ghost == ghost) {
      advance();
      return names;
    }
    while (true) {
      if (at_kw("mut", ghost)) advance();
      names.push_back(expect_ident(ghost, "parameter name"));
      if (at(Tok::Colon) && peek().ghost == ghost) {
        advance();
        parse_type(ghost);
      }
      if (at(Tok::Comma) && peek().ghost == ghost) {
        advance();
        continue;
      }
      expect(Tok::RParen, ghost, "',' or ')'");
      return names;
    }
  }

  PredicateDef parse_predicate() {
    SrcLoc loc = peek().loc;
    expect_kw("pred", true);
    std::string name = expect_ident(true, "predicate name");
    std::vector<std::string> params = parse_params(true);
    expect(Tok::Assign, true, "'='");
    AssertP body = parse_assertion(true);
    expect(Tok::Semi, true, "';'");
    return {std::move(name), std::move(params), std::move(body), loc};
  }

  FunctionDef parse_function() {
    SrcLoc loc = peek().loc;
    if (at_kw("unsafe", false)) advance();
    expect_kw("fn", false);
    std::string name = expect_ident(false, "function name");
    std::vector<std::string> params = parse_params(false);
    if (at(Tok::Arrow) && !peek().ghost) {
      advance();
      parse_type(false);
    }
    if (!at_kw("req", true)) fail("req");
    advance();
    AssertP pre = parse_assertion(true);
    expect(Tok::Semi, true, "';'");
    if (!at_kw("ens", true)) fail("ens");
    advance();
    AssertP post = parse_assertion(true);
    expect(Tok::Semi, true, "';'");
    std::vector<Stmt> body = parse_block(/*allow_tail=*/true);
    return {std::move(name), std::move(params), std::move(pre),
            std::move(post), std::move(body), loc};
  }

  // ---- statements ----

  /// Parses `{ stmt* }`. With allow_tail, a trailing expression (typically a
  /// call) desugars to a return. Return/abort must close their block.
  std::vector<Stmt> parse_block(bool allow_tail) {
    expect(Tok::LBrace, false, "'{'");
    std::vector<Stmt> body;
    bool terminated = false;
    while (!at(Tok::RBrace) || peek().ghost) {
      if (at(Tok::Eof)) fail("'}'");
      if (terminated)
        throw ParseError(peek().loc,
                         "unreachable statement after return or abort");
      terminated = parse_stmt_into(body, allow_tail);
    }
    expect(Tok::RBrace, false, "'}'");
    return body;
  }

  /// Appends one statement (or an unsafe splice) to out. Returns true when
  /// the statement ends the block's control flow.
  bool parse_stmt_into(std::vector<Stmt>& out, bool allow_tail) {
    const Token& t = peek();

    if (t.ghost) {
      out.push_back(parse_ghost_stmt());
      return false;
    }

    if (t.kind == Tok::Ident && t.text == "unsafe") {
      advance();
      std::vector<Stmt> inner = parse_block(allow_tail);
      bool ended = !inner.empty() &&
                   (std::holds_alternative<ReturnS>(inner.back().node) ||
                    std::holds_alternative<AbortS>(inner.back().node));
      for (Stmt& s : inner) out.push_back(std::move(s));
      return ended;
    }

    if (t.kind == Tok::Ident && t.text == "let") return parse_let(out);

    if (t.kind == Tok::Ident && t.text == "if") {
      advance();
      auto [lhs, rhs] = parse_condition(false);
      Expr scrutinee = reduce_null_test(std::move(lhs), std::move(rhs), t.loc);
      std::vector<Stmt> then_body = parse_block(/*allow_tail=*/false);
      std::vector<Stmt> else_body;
      if (at_kw("else", false)) {
        advance();
        else_body = parse_block(/*allow_tail=*/false);
      }
      out.push_back({IfNullS{std::move(scrutinee), std::move(then_body),
                             std::move(else_body)},
                     t.loc});
      return false;
    }

    if (t.kind == Tok::Ident && t.text == "return") {
      advance();
      Expr value = parse_expr(false);
      expect(Tok::Semi, false, "';'");
      out.push_back({ReturnS{std::move(value)}, t.loc});
      return true;
    }

    if (t.kind == Tok::Path && t.text == kAbortPath) {
      advance();
      expect(Tok::LParen, false, "'('");
      expect(Tok::RParen, false, "')'");
      expect(Tok::Semi, false, "';'");
      out.push_back({AbortS{}, t.loc});
      return true;
    }

    if (t.kind == Tok::Star) {
      advance();
      Expr target = parse_deref_target(false);
      expect(Tok::Assign, false, "'='");
      Expr value = parse_expr(false);
      expect(Tok::Semi, false, "';'");
      out.push_back({WriteDerefS{std::move(target), std::move(value)}, t.loc});
      return false;
    }

    if (t.kind == Tok::Ident && peek(1).kind == Tok::LParen &&
        !peek(1).ghost) {
      advance();
      advance();
      std::vector<Expr> args = parse_expr_list(false);
      if (at(Tok::Semi) && !peek().ghost) {
        advance();
        out.push_back(
            {CallS{std::nullopt, t.text, std::move(args), false}, t.loc});
        return false;
      }
      if (!allow_tail || !at(Tok::RBrace))
        fail("';' after call");
      // Trailing call: bind its result and return it.
      out.push_back({CallS{kTailBind, t.text, std::move(args), true}, t.loc});
      out.push_back({ReturnS{Expr::var(kTailBind, t.loc)}, t.loc});
      return true;
    }

    // Last resort: a trailing value expression.
    if (allow_tail) {
      Expr value = parse_expr(false);
      if (!at(Tok::RBrace)) fail("';'");
      out.push_back({ReturnS{std::move(value)}, t.loc});
      return true;
    }
    fail("statement");
  }

  /// Statement conditions must test a pointer against null.
  Expr reduce_null_test(Expr lhs, Expr rhs, SrcLoc loc) {
    if (rhs.kind == Expr::Kind::Null) return lhs;
    if (lhs.kind == Expr::Kind::Null) return rhs;
    throw ParseError(loc, "if condition must compare a pointer with null");
  }

  bool parse_let(std::vector<Stmt>& out) {
    SrcLoc loc = peek().loc;
    expect_kw("let", false);
    if (at_kw("mut", false)) advance();
    std::string name = expect_ident(false, "binding name");
    if (at(Tok::Colon) && !peek().ghost) {
      advance();
      parse_type(false);
    }
    if (at(Tok::Semi) && !peek().ghost) {
      advance();
      out.push_back({LetValueS{std::move(name), std::nullopt}, loc});
      return false;
    }
    expect(Tok::Assign, false, "'=' or ';'");

    if (at(Tok::Star) && !peek().ghost) {
      advance();
      Expr target = parse_deref_target(false);
      expect(Tok::Semi, false, "';'");
      out.push_back({LetDerefS{std::move(name), std::move(target)}, loc});
      return false;
    }
    if (at(Tok::Ident) && !peek().ghost && peek(1).kind == Tok::LParen &&
        !peek(1).ghost) {
      std::string callee = advance().text;
      advance();
      std::vector<Expr> args = parse_expr_list(false);
      expect(Tok::Semi, false, "';'");
      out.push_back(
          {CallS{std::move(name), std::move(callee), std::move(args), false},
           loc});
      return false;
    }
    Expr init = parse_expr(false);
    expect(Tok::Semi, false, "';'");
    out.push_back({LetValueS{std::move(name), std::move(init)}, loc});
    return false;
  }

  Stmt parse_ghost_stmt() {
    const Token& t = peek();
    bool is_open = at_kw("open", true);
    if (!is_open && !at_kw("close", true))
      throw ParseError(t.loc, "expected 'open' or 'close' annotation");
    advance();
    std::string pred = expect_ident(true, "predicate name");
    expect(Tok::LParen, true, "'('");
    std::vector<Expr> args = parse_expr_list(true);
    expect(Tok::Semi, true, "';'");
    if (is_open) return {GhostOpenS{std::move(pred), std::move(args)}, t.loc};
    return {GhostCloseS{std::move(pred), std::move(args)}, t.loc};
  }
};

} // namespace

Program parse_program(const std::string& source) {
  return Parser(lex(source)).run();
}

} // namespace mirrorvf::lang
