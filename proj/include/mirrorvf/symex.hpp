// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/ast.hpp"
#include "mirrorvf/sha256.hpp"
#include "mirrorvf/state.hpp"
#include "mirrorvf/tree.hpp"

#include <cstdint>
#include <optional>

namespace mirrorvf::symex {

/// Successful verification artifact: the digest binds the exact program
/// (predicates, specs, bodies), the trees replay each function.
struct Certificate {
  std::uint32_t format_version = 1;
  Digest program_digest{};
  std::vector<std::pair<std::string, TreeP>> trees; // source order

  const TreeP* find(const std::string& fname) const;
};

/// SHA-256 of the canonical AST encoding.
Digest program_digest(const lang::ResolvedProgram& rp);

struct ExecOptions {
  /// Chunks present before the precondition is produced. The leak check at
  /// return requires the leftover heap to equal exactly this multiset.
  std::vector<heap::Chunk> initial_heap;
  /// Produce/consume/statement step budget per function.
  std::uint64_t ghost_fuel = 10000;
  /// When set, receives a Fig. 2-style execution trace.
  std::string* trace = nullptr;
};

/// Produce: add an assertion's chunks to the heap. Never fails; an
/// undecided conditional forks the state, so the result is a non-empty
/// list of leaves (then side before else side) plus the branch shape
/// (Success leaves; Done for sides whose path condition is contradictory).
struct ProduceResult {
  std::vector<std::pair<SymState, Env>> leaves;
  TreeP shape;
};
ProduceResult produce(const SymState& st, const lang::Assertion& a, Env env,
                      logic::SymbolCounter& ctr,
                      std::uint64_t ghost_fuel = 10000);

/// Consume: remove the assertion's chunks, scanning front to back for the
/// first provable match and recording one hint per leaf conjunct. Throws
/// VerifyError when no chunk matches or a conditional is undecided.
struct ConsumeResult {
  SymState state;
  Env env;
  std::vector<SymexStep> steps;
};
ConsumeResult consume(const SymState& st, const lang::Assertion& a, Env env,
                      std::uint64_t ghost_fuel = 10000);

/// Single-conjunct consume against an already-instantiated goal; this is
/// the form statement semantics use for reads and writes (where the
/// points_to_ goal and its auto-open special case live).
ConsumeResult consume_goal(const SymState& st, const heap::ChunkGoal& goal,
                           Env env, std::uint64_t ghost_fuel = 10000);

/// Symbolically executes one function against its spec and records the
/// hint tree. Throws VerifyError on failure.
TreeP exec_function(const lang::ResolvedProgram& rp, const std::string& fname,
                    const ExecOptions& options = {});

struct VerifyOptions {
  bool parallel = true;
  std::uint64_t ghost_fuel = 10000;
  std::string* trace = nullptr; // forces deterministic source-order output
};

/// Verifies every function (source order for error reporting; execution may
/// be parallel) and assembles the certificate. Throws the first VerifyError
/// in source order.
Certificate verify_program(const lang::ResolvedProgram& rp,
                           const VerifyOptions& options = {});

} // namespace mirrorvf::symex
