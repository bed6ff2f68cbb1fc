// SPDX-License-Identifier: Apache-2.0
//
// The certificate checker: a deliberate re-implementation of the verifier's
// statement walk that never searches the heap. Where the verifier scans for
// a matching chunk, the checker takes the next hint from the tree, removes
// exactly that chunk, and validates the match; where the verifier decides
// how to fork, the checker re-derives the decision and demands the tree
// agree. Code is intentionally not shared with symex.cpp beyond the state
// and term kernels — the two sides are each other's cross-check.

#include "mirrorvf/mirror.hpp"

#include "mirrorvf/congruence.hpp"
#include "mirrorvf/pretty.hpp"

#include <functional>

namespace mirrorvf::mirror {

using heap::Chunk;
using heap::ChunkGoal;
using heap::Env;
using lang::LocalClass;
using logic::decide_eq;
using logic::EqResult;
using logic::Fact;
using logic::is_infeasible;
using logic::Term;
using symex::eval_assert_expr;
using symex::eval_store_expr;
using symex::goal_for_points_to;
using symex::goal_for_pred;
using symex::SymexStep;
using symex::TreeP;
using symex::SymexTree;
using symex::SymState;

namespace {

/// Thrown when a justified Done step closes the current path; caught at the
/// fork boundary (or function root) that owns the path.
struct PathClosed {};

class Replayer {
public:
  Replayer(const lang::ResolvedProgram& rp, const lang::FunctionDef& fn,
           const ReplayOptions& options)
      : rp_(rp), fn_(fn), opt_(options) {
    if (options.stats) stats_ = options.stats;
  }

  void run(const TreeP& tree) {
    SymState st;
    Env env;
    for (const auto& p : fn_.params) {
      Term t = ctr_.fresh(p);
      st.bind(p, {LocalClass::ByValue, t});
      env[p] = t;
    }
    trace_line("=== " + fn_.name + " ===");
    trace_state(st);
    Stack stack{{&fn_.body, 0}};
    try {
      replay_produce(std::move(st), *fn_.pre, std::move(env), tree,
                     [this, stack](SymState st2, Env, TreeP cur) {
                       exec_next(std::move(st2), stack, std::move(cur));
                     });
    } catch (const PathClosed&) {
    }
  }

private:
  const lang::ResolvedProgram& rp_;
  const lang::FunctionDef& fn_;
  const ReplayOptions& opt_;
  logic::SymbolCounter ctr_;
  ReplayStats local_stats_;
  ReplayStats* stats_ = &local_stats_;
  std::uint64_t fuel_used_ = 0;
  std::vector<std::string> branch_trail_;
  std::size_t step_ordinal_ = 0;

  struct Frame {
    const std::vector<lang::Stmt>* stmts;
    std::size_t idx;
  };
  using Stack = std::vector<Frame>;
  using ContV = std::function<void(SymState, Env, TreeP)>;

  // ---- plumbing ----

  [[noreturn]] void reject(const std::string& reason) const {
    std::string path;
    for (const auto& b : branch_trail_) path += "[" + b + "]";
    path += "step " + std::to_string(step_ordinal_);
    throw RejectError(fn_.name, path, reason);
  }

  void charge() {
    if (++fuel_used_ > opt_.ghost_fuel) reject("replay fuel exhausted");
  }

  void trace_line(const std::string& s) {
    if (opt_.trace) *opt_.trace += s + "\n";
  }
  void trace_state(const SymState& st) {
    if (opt_.trace) *opt_.trace += symex::render_state(st) + "\n";
  }
  void trace_stmt(const lang::Stmt& s, const std::vector<SymexStep>& steps) {
    if (!opt_.trace) return;
    std::string line = lang::to_string(s);
    for (const auto& step : steps) line += "   " + to_string(step);
    *opt_.trace += line + "\n";
  }

  /// Advances past the cursor's step node. A Done step either closes the
  /// path (provably infeasible) or rejects; Branch and Success nodes are
  /// step-kind errors here.
  std::pair<SymexStep, TreeP> take_step(const TreeP& cur,
                                        const logic::PathCondition& pc) {
    if (!cur) reject("certificate tree is truncated");
    switch (cur->kind) {
    case SymexTree::Kind::Success:
      reject("hints exhausted: success node before the path completed");
    case SymexTree::Kind::Branch:
      reject("unexpected branch node; expected a consume step");
    case SymexTree::Kind::Step:
      break;
    }
    ++step_ordinal_;
    if (cur->step.kind == SymexStep::Kind::Done) {
      ++stats_->done_steps;
      if (is_infeasible(pc)) {
        trace_line("Done (path infeasible)");
        throw PathClosed{};
      }
      reject("Done hint on a path that is not provably infeasible");
    }
    return {cur->step, cur->next};
  }

  /// Replays both sides of a fork on lhs ?= rhs. The cursor must sit on a
  /// Branch node. An immediate Done child is validated against the side's
  /// path condition without executing the side; trace output matches the
  /// verifier's fork() line for line.
  void replay_fork(SymState st, const Term& lhs, const Term& rhs, TreeP cur,
                   const std::function<void(SymState, TreeP)>& then_k,
                   const std::function<void(SymState, TreeP)>& else_k) {
    if (!cur || cur->kind != SymexTree::Kind::Branch)
      reject("undecided condition needs a branch node");
    SymState then_st = st, else_st = std::move(st);
    then_st.pc = then_st.pc.assume(Fact::eq(lhs, rhs));
    else_st.pc = else_st.pc.assume(Fact::neq(lhs, rhs));
    run_side("then", std::move(then_st), cur->then_child,
             logic::to_string(lhs) + " = " + logic::to_string(rhs), then_k);
    run_side("else", std::move(else_st), cur->else_child,
             logic::to_string(lhs) + " ≠ " + logic::to_string(rhs),
             else_k);
  }

  void run_side(const char* label, SymState st, const TreeP& child,
                const std::string& fact_text,
                const std::function<void(SymState, TreeP)>& k) {
    branch_trail_.emplace_back(label);
    if (child && child->kind == SymexTree::Kind::Step &&
        child->step.kind == SymexStep::Kind::Done) {
      ++step_ordinal_;
      ++stats_->done_steps;
      if (!is_infeasible(st.pc))
        reject("Done hint on a path that is not provably infeasible");
      trace_line("-- branch " + fact_text + ": infeasible, Done");
      branch_trail_.pop_back();
      return;
    }
    trace_line("-- branch: assuming " + fact_text);
    try {
      k(std::move(st), child);
    } catch (const PathClosed&) {
    }
    branch_trail_.pop_back();
  }

  /// End of a path: a completed return or abort must land exactly on a
  /// Success leaf (a justified Done also closes the path).
  void finish_path(const SymState& st, const TreeP& cur) {
    if (!cur) reject("certificate tree is truncated");
    if (cur->kind == SymexTree::Kind::Success) return;
    if (cur->kind == SymexTree::Kind::Step &&
        cur->step.kind == SymexStep::Kind::Done) {
      ++stats_->done_steps;
      if (is_infeasible(st.pc)) return;
      reject("Done hint on a path that is not provably infeasible");
    }
    reject("unconsumed hints after the path completed");
  }

  // ---- produce (cursor only consulted at forks) ----

  void replay_produce(SymState st, const lang::Assertion& a, Env env,
                      TreeP cur, const ContV& k) {
    charge();
    if (std::holds_alternative<lang::TrueA>(a.node)) {
      k(std::move(st), std::move(env), std::move(cur));
      return;
    }
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
      k(std::move(st), std::move(env), std::move(cur));
      return;
    }
    if (const auto* p = std::get_if<lang::PredAppA>(&a.node)) {
      std::vector<Term> args;
      for (const auto& e : p->args) args.push_back(eval_assert_expr(env, e));
      st.heap = st.heap.add_front(Chunk::pred(p->name, std::move(args)));
      k(std::move(st), std::move(env), std::move(cur));
      return;
    }
    if (const auto* p = std::get_if<lang::SepConjA>(&a.node)) {
      const lang::Assertion& right = *p->right;
      replay_produce(std::move(st), *p->left, std::move(env), std::move(cur),
                     [this, &right, &k](SymState st2, Env env2, TreeP cur2) {
                       replay_produce(std::move(st2), right, std::move(env2),
                                      std::move(cur2), k);
                     });
      return;
    }
    const auto& c = std::get<lang::CondA>(a.node);
    Term lhs = eval_assert_expr(env, c.lhs);
    Term rhs = eval_assert_expr(env, c.rhs);
    switch (decide_eq(st.pc, lhs, rhs)) {
    case EqResult::ProvablyEqual:
      replay_produce(std::move(st), *c.then_branch, std::move(env),
                     std::move(cur), k);
      return;
    case EqResult::ProvablyDistinct:
      replay_produce(std::move(st), *c.else_branch, std::move(env),
                     std::move(cur), k);
      return;
    case EqResult::Unknown:
      break;
    }
    replay_fork(std::move(st), lhs, rhs, std::move(cur),
                [this, &c, &env, &k](SymState s, TreeP t) {
                  replay_produce(std::move(s), *c.then_branch, env,
                                 std::move(t), k);
                },
                [this, &c, &env, &k](SymState s, TreeP t) {
                  replay_produce(std::move(s), *c.else_branch, env,
                                 std::move(t), k);
                });
  }

  // ---- consume (hint-driven, no scanning) ----

  TreeP replay_consume(SymState& st, const lang::Assertion& a, Env& env,
                       TreeP cur, std::vector<SymexStep>* taken) {
    charge();
    if (std::holds_alternative<lang::TrueA>(a.node)) return cur;
    if (const auto* p = std::get_if<lang::PointsToA>(&a.node))
      return replay_leaf(st, goal_for_points_to(*p, env), env, std::move(cur),
                         taken)
          .second;
    if (const auto* p = std::get_if<lang::PredAppA>(&a.node))
      return replay_leaf(st, goal_for_pred(*p, env), env, std::move(cur),
                         taken)
          .second;
    if (const auto* p = std::get_if<lang::SepConjA>(&a.node)) {
      cur = replay_consume(st, *p->left, env, std::move(cur), taken);
      return replay_consume(st, *p->right, env, std::move(cur), taken);
    }
    const auto& c = std::get<lang::CondA>(a.node);
    Term lhs = eval_assert_expr(env, c.lhs);
    Term rhs = eval_assert_expr(env, c.rhs);
    switch (decide_eq(st.pc, lhs, rhs)) {
    case EqResult::ProvablyEqual:
      return replay_consume(st, *c.then_branch, env, std::move(cur), taken);
    case EqResult::ProvablyDistinct:
      return replay_consume(st, *c.else_branch, env, std::move(cur), taken);
    case EqResult::Unknown:
      reject("undecided conditional while consuming");
    }
    return cur; // unreachable
  }

  /// Takes ConsumeChunk/AutoOpenPointsTo steps for one goal. Returns the
  /// consumed chunk and the cursor after the consume.
  std::pair<Chunk, TreeP> replay_leaf(SymState& st, const ChunkGoal& goal,
                                      Env& env, TreeP cur,
                                      std::vector<SymexStep>* taken) {
    while (true) {
      charge();
      auto [step, next] = take_step(cur, st.pc);
      if (taken) taken->push_back(step);
      auto removed = st.heap.remove_at(step.index);
      if (!removed)
        reject("chunk index " + std::to_string(step.index) +
               " out of range (heap has " + std::to_string(st.heap.size()) +
               " chunks)");
      if (step.kind == SymexStep::Kind::ConsumeChunk) {
        ++stats_->match_attempts;
        auto matched = heap::match_chunk(st.pc, removed->first, goal, env);
        if (!matched)
          reject("hinted chunk " + heap::to_string(removed->first) +
                 " does not match goal " + heap::to_string(goal));
        env = std::move(*matched);
        st.heap = std::move(removed->second);
        ++stats_->consume_steps;
        return {std::move(removed->first), std::move(next)};
      }
      // Auto-open: only meaningful for a points_to_ goal; the hinted chunk
      // must be an initialized cell at the goal's address.
      if (goal.kind != ChunkGoal::Kind::PointsToMaybe)
        reject("auto-open hint for a goal that is not points_to_");
      ChunkGoal probe{ChunkGoal::Kind::PointsTo, goal.addr,
                      heap::GoalPat::bind("$v"), "", {}};
      ++stats_->match_attempts;
      auto matched = heap::match_chunk(st.pc, removed->first, probe, Env{});
      if (!matched)
        reject("auto-open hint on " + heap::to_string(removed->first) +
               ", which is not points_to at the goal address");
      const auto& pt = std::get<heap::PointsToC>(removed->first.node);
      st.heap = removed->second.add_front(
          Chunk::points_to_maybe(pt.addr, Term::some(pt.val)));
      ++stats_->auto_open_steps;
      cur = std::move(next);
    }
  }

  // ---- statements ----

  void exec_next(SymState st, Stack stack, TreeP cur) {
    while (!stack.empty() && stack.back().idx >= stack.back().stmts->size())
      stack.pop_back();
    if (stack.empty())
      reject("control reaches the end of '" + fn_.name +
             "' without return or abort");
    const lang::Stmt& s = (*stack.back().stmts)[stack.back().idx];
    ++stack.back().idx;
    charge();
    exec_stmt(std::move(st), s, std::move(stack), std::move(cur));
  }

  void exec_stmt(SymState st, const lang::Stmt& s, Stack stack, TreeP cur) {
    if (const auto* let = std::get_if<lang::LetValueS>(&s.node)) {
      Term v = eval_store_expr(st, *let->init);
      st.bind(let->name, {LocalClass::ByValue, v});
      trace_stmt(s, {});
      trace_state(st);
      exec_next(std::move(st), std::move(stack), std::move(cur));
      return;
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
        auto removed = st.heap.remove_at(0);
        st.heap = removed->second.add_front(Chunk::points_to(addr, *init));
      }
      trace_stmt(s, {});
      trace_state(st);
      exec_next(std::move(st), std::move(stack), std::move(cur));
      return;
    }

    if (const auto* let = std::get_if<lang::LetDerefS>(&s.node)) {
      Term p = eval_store_expr(st, let->target);
      ChunkGoal goal{ChunkGoal::Kind::PointsTo, p, heap::GoalPat::bind("$val"),
                     "", {}};
      Env env;
      std::vector<SymexStep> taken;
      auto [read, next] = replay_leaf(st, goal, env, std::move(cur), &taken);
      st.heap = st.heap.add_front(read);
      st.bind(let->name, {LocalClass::ByValue, env.at("$val")});
      trace_stmt(s, taken);
      trace_state(st);
      exec_next(std::move(st), std::move(stack), std::move(next));
      return;
    }

    if (const auto* w = std::get_if<lang::WriteDerefS>(&s.node)) {
      Term p = eval_store_expr(st, w->target);
      Term v = eval_store_expr(st, w->value);
      ChunkGoal goal{ChunkGoal::Kind::PointsToMaybe, p,
                     heap::GoalPat::bind("$init"), "", {}};
      Env env;
      std::vector<SymexStep> taken;
      auto [written, next] = replay_leaf(st, goal, env, std::move(cur), &taken);
      (void)written;
      st.heap = st.heap.add_front(Chunk::points_to(p, v));
      trace_stmt(s, taken);
      trace_state(st);
      exec_next(std::move(st), std::move(stack), std::move(next));
      return;
    }

    if (const auto* ifs = std::get_if<lang::IfNullS>(&s.node)) {
      Term scrut = eval_store_expr(st, ifs->scrutinee);
      trace_stmt(s, {});
      auto take = [this, ifs, &stack](SymState st2, bool then_side,
                                      TreeP cur2) {
        Stack next = stack;
        next.push_back({then_side ? &ifs->then_body : &ifs->else_body, 0});
        exec_next(std::move(st2), std::move(next), std::move(cur2));
      };
      switch (decide_eq(st.pc, scrut, Term::null_ptr())) {
      case EqResult::ProvablyEqual:
        take(std::move(st), true, std::move(cur));
        return;
      case EqResult::ProvablyDistinct:
        take(std::move(st), false, std::move(cur));
        return;
      case EqResult::Unknown:
        break;
      }
      replay_fork(std::move(st), scrut, Term::null_ptr(), std::move(cur),
                  [&take](SymState s2, TreeP t2) {
                    take(std::move(s2), true, std::move(t2));
                  },
                  [&take](SymState s2, TreeP t2) {
                    take(std::move(s2), false, std::move(t2));
                  });
      return;
    }

    if (const auto* call = std::get_if<lang::CallS>(&s.node)) {
      const lang::FunctionDef* callee = rp_.find_function(call->callee);
      Env env;
      for (std::size_t i = 0; i < call->args.size(); ++i)
        env[callee->params[i]] = eval_store_expr(st, call->args[i]);
      std::vector<SymexStep> taken;
      cur = replay_consume(st, *callee->pre, env, std::move(cur), &taken);
      std::string hint = (call->bind && *call->bind != lang::kTailBind)
                             ? *call->bind
                             : "result";
      Term result = ctr_.fresh(hint);
      Env post_env;
      for (const auto& p : callee->params) post_env[p] = env.at(p);
      post_env["result"] = result;
      trace_stmt(s, taken);
      replay_produce(std::move(st), *callee->post, std::move(post_env),
                     std::move(cur),
                     [this, call, result, &stack](SymState st2, Env,
                                                  TreeP cur2) {
                       if (call->bind)
                         st2.bind(*call->bind, {LocalClass::ByValue, result});
                       trace_state(st2);
                       exec_next(std::move(st2), stack, std::move(cur2));
                     });
      return;
    }

    if (const auto* ret = std::get_if<lang::ReturnS>(&s.node)) {
      Term v = eval_store_expr(st, ret->value);
      Env env;
      for (const auto& p : fn_.params) env[p] = st.lookup(p)->term;
      env["result"] = v;
      std::vector<SymexStep> taken;
      cur = replay_consume(st, *fn_.post, env, std::move(cur), &taken);
      if (!st.heap.empty())
        reject("heap not empty after consuming the postcondition");
      trace_stmt(s, taken);
      trace_state(st);
      finish_path(st, cur);
      return;
    }

    if (std::holds_alternative<lang::AbortS>(s.node)) {
      trace_stmt(s, {});
      finish_path(st, cur);
      return;
    }

    if (const auto* g = std::get_if<lang::GhostOpenS>(&s.node)) {
      const lang::PredicateDef* def = rp_.find_predicate(g->pred);
      std::vector<Term> args;
      for (const auto& e : g->args) args.push_back(eval_store_expr(st, e));
      ChunkGoal goal{ChunkGoal::Kind::Pred, {}, {}, g->pred, {}};
      for (const Term& t : args) goal.args.push_back(heap::GoalPat::bound(t));
      Env env;
      std::vector<SymexStep> taken;
      auto [chunk, next] = replay_leaf(st, goal, env, std::move(cur), &taken);
      (void)chunk;
      Env body_env;
      for (std::size_t i = 0; i < def->params.size(); ++i)
        body_env[def->params[i]] = args[i];
      trace_stmt(s, taken);
      replay_produce(std::move(st), *def->body, std::move(body_env),
                     std::move(next),
                     [this, &stack](SymState st2, Env, TreeP cur2) {
                       trace_state(st2);
                       exec_next(std::move(st2), stack, std::move(cur2));
                     });
      return;
    }

    const auto& g = std::get<lang::GhostCloseS>(s.node);
    const lang::PredicateDef* def = rp_.find_predicate(g.pred);
    std::vector<Term> args;
    for (const auto& e : g.args) args.push_back(eval_store_expr(st, e));
    Env body_env;
    for (std::size_t i = 0; i < def->params.size(); ++i)
      body_env[def->params[i]] = args[i];
    std::vector<SymexStep> taken;
    cur = replay_consume(st, *def->body, body_env, std::move(cur), &taken);
    st.heap = st.heap.add_front(Chunk::pred(g.pred, std::move(args)));
    trace_stmt(s, taken);
    trace_state(st);
    exec_next(std::move(st), std::move(stack), std::move(cur));
  }
};

} // namespace

void replay_function(const lang::ResolvedProgram& rp, const std::string& fname,
                     const TreeP& tree, const ReplayOptions& options) {
  const lang::FunctionDef* fn = rp.find_function(fname);
  if (!fn) throw RejectError(fname, "", "no such function in the program");
  Replayer(rp, *fn, options).run(tree);
}

void check_certificate(const lang::ResolvedProgram& rp,
                       const symex::Certificate& cert,
                       const ReplayOptions& options) {
  if (cert.format_version != 1)
    throw RejectError("", "", "unsupported certificate version " +
                                  std::to_string(cert.format_version));
  if (cert.program_digest != symex::program_digest(rp))
    throw RejectError("", "", "program digest mismatch");

  const auto& fns = rp.program.functions;
  if (cert.trees.size() != fns.size())
    throw RejectError("", "",
                      "certificate has " + std::to_string(cert.trees.size()) +
                          " trees for " + std::to_string(fns.size()) +
                          " functions");
  for (const auto& fn : fns) {
    const TreeP* tree = cert.find(fn.name);
    if (!tree)
      throw RejectError(fn.name, "", "missing symbolic execution tree");
    replay_function(rp, fn.name, *tree, options);
  }
}

} // namespace mirrorvf::mirror
