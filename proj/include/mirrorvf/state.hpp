// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/ast.hpp"
#include "mirrorvf/heap.hpp"
#include "mirrorvf/term.hpp"

namespace mirrorvf::symex {

using heap::Env;
using logic::Term;

/// Store entry for one local: by-value locals hold their value, address-
/// taken locals hold the address term of their heap cell.
struct StoreEntry {
  lang::LocalClass cls = lang::LocalClass::ByValue;
  Term term;
};

/// The verification state triple: symbolic heap, symbolic store, and path
/// condition. Value type; branch forks copy it.
struct SymState {
  heap::SymbolicHeap heap;
  std::vector<std::pair<std::string, StoreEntry>> store; // insertion order
  logic::PathCondition pc;

  const StoreEntry* lookup(const std::string& name) const;
  void bind(const std::string& name, StoreEntry e);
};

/// Statement-operand evaluation (store context). The resolver guarantees
/// these never fail on resolved programs; violations are internal errors.
Term eval_store_expr(const SymState& st, const lang::Expr& e);

/// Assertion-term evaluation (environment context).
Term eval_assert_expr(const Env& env, const lang::Expr& e);

heap::GoalPat instantiate_pat(const lang::Pat& pat, const Env& env);
heap::ChunkGoal goal_for_points_to(const lang::PointsToA& a, const Env& env);
heap::ChunkGoal goal_for_pred(const lang::PredAppA& a, const Env& env);

/// Trace-style rendering: heap sequence, store, path condition. Symbol
/// display names reuse the hint alone while unique, hint#id otherwise.
std::string render_state(const SymState& st);

} // namespace mirrorvf::symex
