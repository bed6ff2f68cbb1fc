// SPDX-License-Identifier: Apache-2.0
#include "mirrorvf/state.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace mirrorvf::symex {

const StoreEntry* SymState::lookup(const std::string& name) const {
  for (const auto& [n, e] : store)
    if (n == name) return &e;
  return nullptr;
}

void SymState::bind(const std::string& name, StoreEntry e) {
  for (auto& [n, existing] : store) {
    if (n == name) {
      existing = std::move(e);
      return;
    }
  }
  store.emplace_back(name, std::move(e));
}

Term eval_store_expr(const SymState& st, const lang::Expr& e) {
  switch (e.kind) {
  case lang::Expr::Kind::Null:
    return Term::null_ptr();
  case lang::Expr::Kind::Var: {
    const StoreEntry* entry = st.lookup(e.name);
    if (!entry || entry->cls != lang::LocalClass::ByValue)
      throw std::logic_error("unresolved store read of '" + e.name + "'");
    return entry->term;
  }
  case lang::Expr::Kind::AddrOf: {
    const StoreEntry* entry = st.lookup(e.name);
    if (!entry || entry->cls != lang::LocalClass::Addressed)
      throw std::logic_error("unresolved address-of '" + e.name + "'");
    return entry->term;
  }
  }
  throw std::logic_error("bad expression kind");
}

Term eval_assert_expr(const Env& env, const lang::Expr& e) {
  switch (e.kind) {
  case lang::Expr::Kind::Null:
    return Term::null_ptr();
  case lang::Expr::Kind::Var: {
    auto it = env.find(e.name);
    if (it == env.end())
      throw std::logic_error("unresolved assertion variable '" + e.name + "'");
    return it->second;
  }
  case lang::Expr::Kind::AddrOf:
    throw std::logic_error("address-of inside assertion");
  }
  throw std::logic_error("bad expression kind");
}

heap::GoalPat instantiate_pat(const lang::Pat& pat, const Env& env) {
  if (pat.is_binder) return heap::GoalPat::bind(pat.binder);
  return heap::GoalPat::bound(eval_assert_expr(env, pat.term));
}

heap::ChunkGoal goal_for_points_to(const lang::PointsToA& a, const Env& env) {
  heap::ChunkGoal g;
  g.kind = heap::ChunkGoal::Kind::PointsTo;
  g.addr = eval_assert_expr(env, a.target);
  g.value = instantiate_pat(a.pat, env);
  return g;
}

heap::ChunkGoal goal_for_pred(const lang::PredAppA& a, const Env& env) {
  heap::ChunkGoal g;
  g.kind = heap::ChunkGoal::Kind::Pred;
  g.pred = a.name;
  for (const lang::Expr& e : a.args)
    g.args.push_back(heap::GoalPat::bound(eval_assert_expr(env, e)));
  return g;
}

namespace {

/// Fig. 2 uses bare names for symbols; fall back to hint#id only when two
/// live symbols share a hint.
class Display {
public:
  void see(const Term& t) {
    switch (t.kind()) {
    case Term::Kind::Symbol: {
      auto [it, fresh] = first_with_hint_.try_emplace(t.hint(), t.symbol_id());
      if (!fresh && it->second != t.symbol_id()) ambiguous_.insert(t.hint());
      return;
    }
    case Term::Kind::Some:
      see(t.inner());
      return;
    default:
      return;
    }
  }

  std::string render(const Term& t) const {
    switch (t.kind()) {
    case Term::Kind::Null: return "nullptr";
    case Term::Kind::None: return "none";
    case Term::Kind::Some: return "some(" + render(t.inner()) + ")";
    case Term::Kind::Symbol:
      if (!t.hint().empty() && !ambiguous_.count(t.hint())) return t.hint();
      return logic::to_string(t);
    }
    return "?";
  }

private:
  std::map<std::string, std::uint32_t> first_with_hint_;
  std::set<std::string> ambiguous_;
};

} // namespace

std::string render_state(const SymState& st) {
  Display disp;
  for (const auto& c : st.heap.chunks()) {
    if (const auto* p = std::get_if<heap::PointsToC>(&c.node)) {
      disp.see(p->addr);
      disp.see(p->val);
    } else if (const auto* p = std::get_if<heap::PointsToMaybeC>(&c.node)) {
      disp.see(p->addr);
      disp.see(p->init);
    } else {
      for (const auto& t : std::get<heap::PredC>(c.node).args) disp.see(t);
    }
  }
  for (const auto& [name, e] : st.store) disp.see(e.term);
  for (const auto& f : st.pc.facts()) {
    disp.see(f.lhs);
    disp.see(f.rhs);
  }

  std::string out = "[";
  for (std::size_t i = 0; i < st.heap.size(); ++i) {
    if (i) out += ", ";
    const auto& c = st.heap.at(i);
    if (const auto* p = std::get_if<heap::PointsToC>(&c.node)) {
      out += "points_to(" + disp.render(p->addr) + ", " + disp.render(p->val) +
             ")";
    } else if (const auto* p = std::get_if<heap::PointsToMaybeC>(&c.node)) {
      out += "points_to_(" + disp.render(p->addr) + ", " +
             disp.render(p->init) + ")";
    } else {
      const auto& pr = std::get<heap::PredC>(c.node);
      out += pr.name + "(";
      for (std::size_t j = 0; j < pr.args.size(); ++j) {
        if (j) out += ", ";
        out += disp.render(pr.args[j]);
      }
      out += ")";
    }
  }
  out += "], [";
  bool first = true;
  for (const auto& [name, e] : st.store) {
    if (!first) out += ", ";
    first = false;
    if (e.cls == lang::LocalClass::Addressed)
      out += "&" + name + " ↦ " + disp.render(e.term);
    else
      out += name + " ↦ " + disp.render(e.term);
  }
  out += "], {";
  first = true;
  for (const auto& f : st.pc.facts()) {
    if (!first) out += ", ";
    first = false;
    out += disp.render(f.lhs) +
           (f.rel == logic::Fact::Rel::Eq ? " = " : " ≠ ") +
           disp.render(f.rhs);
  }
  return out + "}";
}

} // namespace mirrorvf::symex
