// SPDX-License-Identifier: Apache-2.0
//
// The verifier: per-function symbolic execution with produce/consume,
// ghost open/close, auto-open, and branch forking, recording every chunk
// choice as a hint. Consume scans the heap front to back and takes the
// first provably matching chunk; that scan is the only search in the
// system, and the recorded indices let the replay checker skip it.
//
// Control flow is continuation-passing: produce() forks the state on an
// undecided conditional and builds a Branch node from both continuations,
// so the hint tree falls out of the recursion shape.

#include "mirrorvf/symex.hpp"

#include "mirrorvf/canon.hpp"
#include "mirrorvf/congruence.hpp"
#include "mirrorvf/pretty.hpp"

#include <functional>
#include <future>
#include <set>

namespace mirrorvf::symex {

using heap::Chunk;
using heap::ChunkGoal;
using lang::LocalClass;
using logic::decide_eq;
using logic::EqResult;
using logic::Fact;
using logic::is_infeasible;
using logic::SymbolCounter;

const TreeP* Certificate::find(const std::string& fname) const {
  for (const auto& [name, tree] : trees)
    if (name == fname) return &tree;
  return nullptr;
}

Digest program_digest(const lang::ResolvedProgram& rp) {
  return sha256(lang::canonical_encoding(rp));
}

namespace {

/// Multiset equality over chunk renderings; used by the leak check.
bool same_chunk_multiset(const std::vector<Chunk>& a,
                         const std::vector<Chunk>& b) {
  if (a.size() != b.size()) return false;
  std::multiset<std::string> ma, mb;
  for (const auto& c : a) ma.insert(heap::to_string(c));
  for (const auto& c : b) mb.insert(heap::to_string(c));
  return ma == mb;
}

/// Produce/consume engine shared by the verifier proper and the public
/// one-shot entry points.
class Machine {
public:
  using Cont = std::function<TreeP(SymState, Env)>;

  Machine(SymbolCounter& ctr, std::uint64_t fuel, std::string* trace)
      : ctr_(ctr), fuel_limit_(fuel), trace_(trace) {}

  TreeP produce(SymState st, const lang::Assertion& a, Env env,
                const Cont& k) {
    charge(a.loc);
    if (std::holds_alternative<lang::TrueA>(a.node))
      return k(std::move(st), std::move(env));
    if (const auto* p = std::get_if<lang::PointsToA>(&a.node)) {
      Term addr = eval_assert_expr(env, p->target);
      Term val;
      if (p->pat.is_binder) {
        val = ctr_.fresh(p->pat.binder);
        env[p->pat.binder] = val;
      } else {
        val = eval_assert_expr(env, p->pat.term);
      }
      st.heap = st.heap.add_front(Chunk::points_to(addr, val));
      return k(std::move(st), std::move(env));
    }
    if (const auto* p = std::get_if<lang::PredAppA>(&a.node)) {
      std::vector<Term> args;
      for (const auto& e : p->args) args.push_back(eval_assert_expr(env, e));
      st.heap = st.heap.add_front(Chunk::pred(p->name, std::move(args)));
      return k(std::move(st), std::move(env));
    }
    if (const auto* p = std::get_if<lang::SepConjA>(&a.node)) {
      const lang::Assertion& right = *p->right;
      return produce(std::move(st), *p->left, std::move(env),
                     [this, &right, &k](SymState st2, Env env2) {
                       return produce(std::move(st2), right, std::move(env2),
                                      k);
                     });
    }
    const auto& c = std::get<lang::CondA>(a.node);
    Term lhs = eval_assert_expr(env, c.lhs);
    Term rhs = eval_assert_expr(env, c.rhs);
    switch (decide_eq(st.pc, lhs, rhs)) {
    case EqResult::ProvablyEqual:
      return produce(std::move(st), *c.then_branch, std::move(env), k);
    case EqResult::ProvablyDistinct:
      return produce(std::move(st), *c.else_branch, std::move(env), k);
    case EqResult::Unknown:
      break;
    }
    return fork(
        std::move(st), lhs, rhs, env,
        [this, &c, &k](SymState st2, Env env2) {
          return produce(std::move(st2), *c.then_branch, std::move(env2), k);
        },
        [this, &c, &k](SymState st2, Env env2) {
          return produce(std::move(st2), *c.else_branch, std::move(env2), k);
        });
  }

  /// Forks on lhs ?= rhs. A side whose extended path condition is already
  /// contradictory is closed with a Done step instead of being executed.
  TreeP fork(SymState st, const Term& lhs, const Term& rhs, const Env& env,
             const Cont& then_k, const Cont& else_k) {
    SymState then_st = st, else_st = std::move(st);
    then_st.pc = then_st.pc.assume(Fact::eq(lhs, rhs));
    else_st.pc = else_st.pc.assume(Fact::neq(lhs, rhs));

    TreeP then_tree;
    if (is_infeasible(then_st.pc)) {
      trace_line("-- branch " + logic::to_string(lhs) + " = " +
                 logic::to_string(rhs) + ": infeasible, Done");
      then_tree = mk_done();
    } else {
      trace_line("-- branch: assuming " + logic::to_string(lhs) + " = " +
                 logic::to_string(rhs));
      then_tree = then_k(std::move(then_st), env);
    }
    TreeP else_tree;
    if (is_infeasible(else_st.pc)) {
      trace_line("-- branch " + logic::to_string(lhs) + " ≠ " +
                 logic::to_string(rhs) + ": infeasible, Done");
      else_tree = mk_done();
    } else {
      trace_line("-- branch: assuming " + logic::to_string(lhs) + " ≠ " +
                 logic::to_string(rhs));
      else_tree = else_k(std::move(else_st), env);
    }
    return mk_branch(std::move(then_tree), std::move(else_tree));
  }

  void consume(SymState& st, const lang::Assertion& a, Env& env,
               std::vector<SymexStep>& steps) {
    charge(a.loc);
    if (std::holds_alternative<lang::TrueA>(a.node)) return;
    if (const auto* p = std::get_if<lang::PointsToA>(&a.node)) {
      consume_leaf(st, goal_for_points_to(*p, env), env, steps, a.loc);
      return;
    }
    if (const auto* p = std::get_if<lang::PredAppA>(&a.node)) {
      consume_leaf(st, goal_for_pred(*p, env), env, steps, a.loc);
      return;
    }
    if (const auto* p = std::get_if<lang::SepConjA>(&a.node)) {
      consume(st, *p->left, env, steps);
      consume(st, *p->right, env, steps);
      return;
    }
    const auto& c = std::get<lang::CondA>(a.node);
    Term lhs = eval_assert_expr(env, c.lhs);
    Term rhs = eval_assert_expr(env, c.rhs);
    switch (decide_eq(st.pc, lhs, rhs)) {
    case EqResult::ProvablyEqual:
      consume(st, *c.then_branch, env, steps);
      return;
    case EqResult::ProvablyDistinct:
      consume(st, *c.else_branch, env, steps);
      return;
    case EqResult::Unknown:
      fail(a.loc,
           "cannot decide conditional while consuming (" +
               logic::to_string(lhs) + " == " + logic::to_string(rhs) + ")",
           "", st);
    }
  }

  /// Front-to-back scan for the first matching chunk. A points_to_ goal
  /// with no direct match auto-opens the first points_to chunk at the same
  /// address and rescans (the replacement sits at the front).
  Chunk consume_leaf(SymState& st, const ChunkGoal& goal, Env& env,
                     std::vector<SymexStep>& steps, SrcLoc loc) {
    while (true) {
      charge(loc);
      for (std::size_t k = 0; k < st.heap.size(); ++k) {
        auto matched = heap::match_chunk(st.pc, st.heap.at(k), goal, env);
        if (!matched) continue;
        env = std::move(*matched);
        steps.push_back(SymexStep::consume(k));
        auto removed = st.heap.remove_at(k);
        st.heap = std::move(removed->second);
        return std::move(removed->first);
      }
      if (goal.kind == ChunkGoal::Kind::PointsToMaybe) {
        bool opened = false;
        for (std::size_t k = 0; k < st.heap.size(); ++k) {
          const auto* pt = std::get_if<heap::PointsToC>(&st.heap.at(k).node);
          if (!pt) continue;
          if (decide_eq(st.pc, goal.addr, pt->addr) !=
              EqResult::ProvablyEqual)
            continue;
          steps.push_back(SymexStep::auto_open(k));
          Chunk reopened =
              Chunk::points_to_maybe(pt->addr, Term::some(pt->val));
          auto removed = st.heap.remove_at(k);
          st.heap = removed->second.add_front(std::move(reopened));
          opened = true;
          break;
        }
        if (opened) continue;
      }
      fail(loc, "no matching heap chunk", heap::to_string(goal), st);
    }
  }

  void charge(SrcLoc loc) {
    if (++fuel_used_ > fuel_limit_)
      throw VerifyError(loc, "ghost fuel exhausted (" +
                                 std::to_string(fuel_limit_) + " steps)");
  }

  void trace_line(const std::string& s) {
    if (trace_) *trace_ += s + "\n";
  }
  void trace_state(const SymState& st) {
    if (trace_) *trace_ += render_state(st) + "\n";
  }
  void trace_stmt(const lang::Stmt& s, const std::vector<SymexStep>& steps) {
    if (!trace_) return;
    std::string line = lang::to_string(s);
    for (const auto& step : steps) line += "   " + to_string(step);
    *trace_ += line + "\n";
  }

  [[noreturn]] void fail(SrcLoc loc, const std::string& msg,
                         const std::string& goal, const SymState& st) {
    throw VerifyError(loc, msg + (goal.empty() ? "" : ": " + goal), goal,
                      render_state(st));
  }

  static TreeP wrap_steps(const std::vector<SymexStep>& steps, TreeP rest) {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it)
      rest = mk_step(*it, std::move(rest));
    return rest;
  }

protected:
  SymbolCounter& ctr_;
  std::uint64_t fuel_limit_;
  std::uint64_t fuel_used_ = 0;
  std::string* trace_;
};

class Verifier : public Machine {
public:
  Verifier(const lang::ResolvedProgram& rp, const lang::FunctionDef& fn,
           const ExecOptions& options, SymbolCounter& ctr)
      : Machine(ctr, options.ghost_fuel, options.trace), rp_(rp), fn_(fn),
        opt_(options) {}

  TreeP run() {
    SymState st;
    st.heap = heap::SymbolicHeap(opt_.initial_heap);
    Env env;
    for (const auto& p : fn_.params) {
      Term t = ctr_.fresh(p);
      st.bind(p, {LocalClass::ByValue, t});
      env[p] = t;
    }
    trace_line("=== " + fn_.name + " ===");
    trace_state(st);
    Stack stack{{&fn_.body, 0}};
    return produce(std::move(st), *fn_.pre, std::move(env),
                   [this, stack](SymState st2, Env) {
                     return exec_next(std::move(st2), stack);
                   });
  }

private:
  const lang::ResolvedProgram& rp_;
  const lang::FunctionDef& fn_;
  const ExecOptions& opt_;

  struct Frame {
    const std::vector<lang::Stmt>* stmts;
    std::size_t idx;
  };
  using Stack = std::vector<Frame>;

  TreeP exec_next(SymState st, Stack stack) {
    while (!stack.empty() && stack.back().idx >= stack.back().stmts->size())
      stack.pop_back();
    if (stack.empty())
      fail(fn_.loc,
           "control reaches the end of '" + fn_.name +
               "' without return or abort",
           "", st);
    const lang::Stmt& s = (*stack.back().stmts)[stack.back().idx];
    ++stack.back().idx;
    charge(s.loc);
    return exec_stmt(std::move(st), s, std::move(stack));
  }

  TreeP exec_stmt(SymState st, const lang::Stmt& s, Stack stack) {
    SrcLoc loc = s.loc;

    if (const auto* let = std::get_if<lang::LetValueS>(&s.node)) {
      Term v = eval_store_expr(st, *let->init);
      st.bind(let->name, {LocalClass::ByValue, v});
      trace_stmt(s, {});
      trace_state(st);
      return exec_next(std::move(st), std::move(stack));
    }

    if (const auto* let = std::get_if<lang::LetAddressedS>(&s.node)) {
      std::optional<Term> init;
      if (let->init) init = eval_store_expr(st, *let->init);
      Term addr = ctr_.fresh(let->name);
      st.pc = st.pc.assume(Fact::neq(addr, Term::null_ptr()));
      st.bind(let->name, {LocalClass::Addressed, addr});
      st.heap =
          st.heap.add_front(Chunk::points_to_maybe(addr, Term::none_val()));
      if (init) {
        // Initializing write: the cell's chunk was just produced at the
        // front, so no hint is recorded for consuming it.
        auto removed = st.heap.remove_at(0);
        st.heap = removed->second.add_front(Chunk::points_to(addr, *init));
      }
      trace_stmt(s, {});
      trace_state(st);
      return exec_next(std::move(st), std::move(stack));
    }

    if (const auto* let = std::get_if<lang::LetDerefS>(&s.node)) {
      Term p = eval_store_expr(st, let->target);
      ChunkGoal goal{ChunkGoal::Kind::PointsTo, p, heap::GoalPat::bind("$val"),
                     "", {}};
      std::vector<SymexStep> steps;
      Env env;
      Chunk read = consume_leaf(st, goal, env, steps, loc);
      st.heap = st.heap.add_front(read);
      st.bind(let->name, {LocalClass::ByValue, env.at("$val")});
      trace_stmt(s, steps);
      trace_state(st);
      return wrap_steps(steps, exec_next(std::move(st), std::move(stack)));
    }

    if (const auto* w = std::get_if<lang::WriteDerefS>(&s.node)) {
      Term p = eval_store_expr(st, w->target);
      Term v = eval_store_expr(st, w->value);
      ChunkGoal goal{ChunkGoal::Kind::PointsToMaybe, p,
                     heap::GoalPat::bind("$init"), "", {}};
      std::vector<SymexStep> steps;
      Env env;
      consume_leaf(st, goal, env, steps, loc);
      st.heap = st.heap.add_front(Chunk::points_to(p, v));
      trace_stmt(s, steps);
      trace_state(st);
      return wrap_steps(steps, exec_next(std::move(st), std::move(stack)));
    }

    if (const auto* ifs = std::get_if<lang::IfNullS>(&s.node)) {
      Term scrut = eval_store_expr(st, ifs->scrutinee);
      trace_stmt(s, {});
      auto take = [this, ifs, &stack](SymState st2, bool then_side) {
        Stack next = stack;
        next.push_back({then_side ? &ifs->then_body : &ifs->else_body, 0});
        return exec_next(std::move(st2), std::move(next));
      };
      switch (decide_eq(st.pc, scrut, Term::null_ptr())) {
      case EqResult::ProvablyEqual:
        return take(std::move(st), true);
      case EqResult::ProvablyDistinct:
        return take(std::move(st), false);
      case EqResult::Unknown:
        break;
      }
      return fork(
          std::move(st), scrut, Term::null_ptr(), Env{},
          [&take](SymState st2, Env) { return take(std::move(st2), true); },
          [&take](SymState st2, Env) { return take(std::move(st2), false); });
    }

    if (const auto* call = std::get_if<lang::CallS>(&s.node)) {
      const lang::FunctionDef* callee = rp_.find_function(call->callee);
      Env env;
      for (std::size_t i = 0; i < call->args.size(); ++i)
        env[callee->params[i]] = eval_store_expr(st, call->args[i]);
      std::vector<SymexStep> steps;
      consume(st, *callee->pre, env, steps);
      std::string hint = (call->bind && *call->bind != lang::kTailBind)
                             ? *call->bind
                             : "result";
      Term result = ctr_.fresh(hint);
      // Only the callee's own names are visible to its postcondition.
      Env post_env;
      for (const auto& p : callee->params) post_env[p] = env.at(p);
      post_env["result"] = result;
      trace_stmt(s, steps);
      TreeP rest =
          produce(std::move(st), *callee->post, std::move(post_env),
                  [this, call, result, &stack](SymState st2, Env) {
                    if (call->bind)
                      st2.bind(*call->bind, {LocalClass::ByValue, result});
                    trace_state(st2);
                    return exec_next(std::move(st2), stack);
                  });
      return wrap_steps(steps, std::move(rest));
    }

    if (const auto* ret = std::get_if<lang::ReturnS>(&s.node)) {
      Term v = eval_store_expr(st, ret->value);
      Env env;
      for (const auto& p : fn_.params) env[p] = st.lookup(p)->term;
      env["result"] = v;
      std::vector<SymexStep> steps;
      consume(st, *fn_.post, env, steps);
      if (!same_chunk_multiset(st.heap.chunks(), opt_.initial_heap))
        fail(loc, "leaked heap chunks at return", "", st);
      trace_stmt(s, steps);
      trace_state(st);
      return wrap_steps(steps, mk_success());
    }

    if (std::holds_alternative<lang::AbortS>(s.node)) {
      trace_stmt(s, {});
      return mk_success();
    }

    if (const auto* g = std::get_if<lang::GhostOpenS>(&s.node)) {
      const lang::PredicateDef* def = rp_.find_predicate(g->pred);
      std::vector<Term> args;
      for (const auto& e : g->args) args.push_back(eval_store_expr(st, e));
      ChunkGoal goal{ChunkGoal::Kind::Pred, {}, {}, g->pred, {}};
      for (const Term& t : args) goal.args.push_back(heap::GoalPat::bound(t));
      std::vector<SymexStep> steps;
      Env env;
      consume_leaf(st, goal, env, steps, loc);
      Env body_env;
      for (std::size_t i = 0; i < def->params.size(); ++i)
        body_env[def->params[i]] = args[i];
      trace_stmt(s, steps);
      TreeP rest = produce(std::move(st), *def->body, std::move(body_env),
                           [this, &stack](SymState st2, Env) {
                             trace_state(st2);
                             return exec_next(std::move(st2), stack);
                           });
      return wrap_steps(steps, std::move(rest));
    }

    const auto& g = std::get<lang::GhostCloseS>(s.node);
    const lang::PredicateDef* def = rp_.find_predicate(g.pred);
    std::vector<Term> args;
    for (const auto& e : g.args) args.push_back(eval_store_expr(st, e));
    Env body_env;
    for (std::size_t i = 0; i < def->params.size(); ++i)
      body_env[def->params[i]] = args[i];
    std::vector<SymexStep> steps;
    consume(st, *def->body, body_env, steps);
    st.heap = st.heap.add_front(Chunk::pred(g.pred, std::move(args)));
    trace_stmt(s, steps);
    trace_state(st);
    return wrap_steps(steps, exec_next(std::move(st), std::move(stack)));
  }
};

} // namespace

ProduceResult produce(const SymState& st, const lang::Assertion& a, Env env,
                      logic::SymbolCounter& ctr, std::uint64_t ghost_fuel) {
  ProduceResult out;
  Machine m(ctr, ghost_fuel, nullptr);
  out.shape = m.produce(st, a, std::move(env), [&out](SymState s, Env e) {
    out.leaves.emplace_back(std::move(s), std::move(e));
    return mk_success();
  });
  return out;
}

ConsumeResult consume(const SymState& st, const lang::Assertion& a, Env env,
                      std::uint64_t ghost_fuel) {
  logic::SymbolCounter unused;
  Machine m(unused, ghost_fuel, nullptr);
  ConsumeResult out{st, std::move(env), {}};
  m.consume(out.state, a, out.env, out.steps);
  return out;
}

ConsumeResult consume_goal(const SymState& st, const heap::ChunkGoal& goal,
                           Env env, std::uint64_t ghost_fuel) {
  logic::SymbolCounter unused;
  Machine m(unused, ghost_fuel, nullptr);
  ConsumeResult out{st, std::move(env), {}};
  m.consume_leaf(out.state, goal, out.env, out.steps, SrcLoc{});
  return out;
}

TreeP exec_function(const lang::ResolvedProgram& rp, const std::string& fname,
                    const ExecOptions& options) {
  const lang::FunctionDef* fn = rp.find_function(fname);
  if (!fn) throw std::invalid_argument("no such function: " + fname);
  logic::SymbolCounter ctr;
  return Verifier(rp, *fn, options, ctr).run();
}

Certificate verify_program(const lang::ResolvedProgram& rp,
                           const VerifyOptions& options) {
  const auto& fns = rp.program.functions;
  struct Result {
    TreeP tree;
    std::optional<VerifyError> error;
    std::string trace;
  };
  std::vector<Result> results(fns.size());

  auto run_one = [&](std::size_t i) {
    Result r;
    ExecOptions exec_opt;
    exec_opt.ghost_fuel = options.ghost_fuel;
    if (options.trace) exec_opt.trace = &r.trace;
    try {
      r.tree = exec_function(rp, fns[i].name, exec_opt);
    } catch (const VerifyError& e) {
      r.error = e;
    }
    return r;
  };

  if (options.parallel && fns.size() > 1) {
    std::vector<std::future<Result>> futures;
    futures.reserve(fns.size());
    for (std::size_t i = 0; i < fns.size(); ++i)
      futures.push_back(std::async(std::launch::async,
                                   [&run_one, i] { return run_one(i); }));
    for (std::size_t i = 0; i < fns.size(); ++i) results[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < fns.size(); ++i) results[i] = run_one(i);
  }

  Certificate cert;
  cert.program_digest = program_digest(rp);
  for (std::size_t i = 0; i < fns.size(); ++i) {
    if (options.trace) *options.trace += results[i].trace;
    if (results[i].error) throw *results[i].error;
    cert.trees.emplace_back(fns[i].name, results[i].tree);
  }
  return cert;
}

} // namespace mirrorvf::symex
