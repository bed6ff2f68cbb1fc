// SPDX-License-Identifier: Apache-2.0
#include "mirrorvf/tree.hpp"

namespace mirrorvf::symex {

std::string to_string(const SymexStep& s) {
  switch (s.kind) {
  case SymexStep::Kind::ConsumeChunk:
    return "ConsumeChunk(" + std::to_string(s.index) + ")";
  case SymexStep::Kind::AutoOpenPointsTo:
    return "AutoOpen(" + std::to_string(s.index) + ")";
  case SymexStep::Kind::Done:
    return "Done";
  }
  return "?";
}

TreeP mk_step(SymexStep s, TreeP next) {
  auto t = std::make_shared<SymexTree>();
  t->kind = SymexTree::Kind::Step;
  t->step = s;
  t->next = std::move(next);
  return t;
}

TreeP mk_done() { return mk_step(SymexStep::done(), nullptr); }

TreeP mk_branch(TreeP then_child, TreeP else_child) {
  auto t = std::make_shared<SymexTree>();
  t->kind = SymexTree::Kind::Branch;
  t->then_child = std::move(then_child);
  t->else_child = std::move(else_child);
  return t;
}

TreeP mk_success() {
  static const TreeP success = std::make_shared<SymexTree>();
  return success;
}

bool tree_equal(const TreeP& a, const TreeP& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
  case SymexTree::Kind::Success:
    return true;
  case SymexTree::Kind::Step:
    if (!(a->step == b->step)) return false;
    if (a->step.kind == SymexStep::Kind::Done) return true;
    return tree_equal(a->next, b->next);
  case SymexTree::Kind::Branch:
    return tree_equal(a->then_child, b->then_child) &&
           tree_equal(a->else_child, b->else_child);
  }
  return false;
}

static void count_into(const TreeP& t, TreeCounts& c) {
  if (!t) return;
  switch (t->kind) {
  case SymexTree::Kind::Success:
    ++c.successes;
    return;
  case SymexTree::Kind::Step:
    switch (t->step.kind) {
    case SymexStep::Kind::ConsumeChunk: ++c.consumes; break;
    case SymexStep::Kind::AutoOpenPointsTo: ++c.auto_opens; break;
    case SymexStep::Kind::Done: ++c.dones; return;
    }
    count_into(t->next, c);
    return;
  case SymexTree::Kind::Branch:
    ++c.branches;
    count_into(t->then_child, c);
    count_into(t->else_child, c);
    return;
  }
}

TreeCounts count_tree(const TreeP& t) {
  TreeCounts c;
  count_into(t, c);
  return c;
}

std::vector<SymexStep> steps_along(const TreeP& t,
                                   const std::vector<bool>& take_else) {
  std::vector<SymexStep> out;
  const SymexTree* cur = t.get();
  std::size_t branch_idx = 0;
  while (cur) {
    switch (cur->kind) {
    case SymexTree::Kind::Success:
      return out;
    case SymexTree::Kind::Step:
      out.push_back(cur->step);
      if (cur->step.kind == SymexStep::Kind::Done) return out;
      cur = cur->next.get();
      break;
    case SymexTree::Kind::Branch: {
      bool go_else =
          branch_idx < take_else.size() && take_else[branch_idx];
      ++branch_idx;
      cur = (go_else ? cur->else_child : cur->then_child).get();
      break;
    }
    }
  }
  return out;
}

std::string to_string(const TreeP& t) {
  if (!t) return "<null>";
  switch (t->kind) {
  case SymexTree::Kind::Success:
    return "Success";
  case SymexTree::Kind::Step:
    if (t->step.kind == SymexStep::Kind::Done) return "Done";
    return to_string(t->step) + "; " + to_string(t->next);
  case SymexTree::Kind::Branch:
    return "Branch(then: " + to_string(t->then_child) +
           ", else: " + to_string(t->else_child) + ")";
  }
  return "?";
}

} // namespace mirrorvf::symex
