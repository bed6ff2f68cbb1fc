// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace mirrorvf::symex {

/// One recorded hint: consume the chunk at index k, auto-open the points_to
/// chunk at index k into its points_to_ form, or abandon a provably
/// infeasible path.
struct SymexStep {
  enum class Kind { ConsumeChunk, AutoOpenPointsTo, Done };
  Kind kind = Kind::Done;
  std::size_t index = 0;

  static SymexStep consume(std::size_t k) {
    return {Kind::ConsumeChunk, k};
  }
  static SymexStep auto_open(std::size_t k) {
    return {Kind::AutoOpenPointsTo, k};
  }
  static SymexStep done() { return {Kind::Done, 0}; }

  friend bool operator==(const SymexStep& a, const SymexStep& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::Done) return true;
    return a.index == b.index;
  }
};

std::string to_string(const SymexStep& s);

struct SymexTree;
using TreeP = std::shared_ptr<const SymexTree>;

/// Per-function hint tree. Every root-to-leaf path ends in Success or a
/// Done step; a Done step has no continuation.
struct SymexTree {
  enum class Kind { Step, Branch, Success };
  Kind kind = Kind::Success;
  SymexStep step;               // Step
  TreeP next;                   // Step (null for Done)
  TreeP then_child, else_child; // Branch
};

TreeP mk_step(SymexStep s, TreeP next);
TreeP mk_done();
TreeP mk_branch(TreeP then_child, TreeP else_child);
TreeP mk_success();

bool tree_equal(const TreeP& a, const TreeP& b);

struct TreeCounts {
  std::size_t consumes = 0;
  std::size_t auto_opens = 0;
  std::size_t dones = 0;
  std::size_t branches = 0;
  std::size_t successes = 0;
};
TreeCounts count_tree(const TreeP& t);

/// Steps along one root-to-leaf path; at the i-th Branch node encountered,
/// takes the else child iff take_else[i] (missing entries take then).
std::vector<SymexStep> steps_along(const TreeP& t,
                                   const std::vector<bool>& take_else);

std::string to_string(const TreeP& t);

} // namespace mirrorvf::symex
