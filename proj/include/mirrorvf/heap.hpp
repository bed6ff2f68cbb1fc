// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/congruence.hpp"
#include "mirrorvf/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mirrorvf::heap {

using logic::Term;

/// One unit of owned resource: an initialized cell, a possibly-uninitialized
/// cell with its init state, or a predicate instance.
struct PointsToC {
  Term addr, val;
};
struct PointsToMaybeC {
  Term addr, init; // init is some(v) or none
};
struct PredC {
  std::string name;
  std::vector<Term> args;
};

struct Chunk {
  std::variant<PointsToC, PointsToMaybeC, PredC> node;

  static Chunk points_to(Term addr, Term val) {
    return {PointsToC{std::move(addr), std::move(val)}};
  }
  static Chunk points_to_maybe(Term addr, Term init) {
    return {PointsToMaybeC{std::move(addr), std::move(init)}};
  }
  static Chunk pred(std::string name, std::vector<Term> args) {
    return {PredC{std::move(name), std::move(args)}};
  }
};

bool operator==(const Chunk& a, const Chunk& b);
std::string to_string(const Chunk& c);

/// Ordered chunk sequence; index 0 is the front, where new chunks land.
/// Indices into this order are what certificate hints refer to.
class SymbolicHeap {
public:
  SymbolicHeap() = default;
  explicit SymbolicHeap(std::vector<Chunk> chunks)
      : chunks_(std::move(chunks)) {}

  [[nodiscard]] SymbolicHeap add_front(Chunk c) const;

  /// Removes and returns the chunk at position k; later chunks shift down.
  /// nullopt when k is out of range (in the checker that rejects the
  /// certificate).
  [[nodiscard]] std::optional<std::pair<Chunk, SymbolicHeap>>
  remove_at(std::size_t k) const;

  const std::vector<Chunk>& chunks() const { return chunks_; }
  std::size_t size() const { return chunks_.size(); }
  bool empty() const { return chunks_.empty(); }
  const Chunk& at(std::size_t k) const { return chunks_.at(k); }

private:
  std::vector<Chunk> chunks_;
};

std::string to_string(const SymbolicHeap& h);

/// Assertion-variable bindings, threaded left to right through conjuncts.
using Env = std::map<std::string, Term>;

/// One position of an instantiated conjunct: either a term that must be
/// provably equal to the chunk's term, or a binder that captures it.
struct GoalPat {
  std::optional<Term> term;  // nullopt => binder
  std::string binder;

  static GoalPat bound(Term t) { return {std::move(t), {}}; }
  static GoalPat bind(std::string name) {
    return {std::nullopt, std::move(name)};
  }
  bool is_binder() const { return !term.has_value(); }
};

/// An instantiated leaf conjunct to match one chunk against.
struct ChunkGoal {
  enum class Kind { PointsTo, PointsToMaybe, Pred };
  Kind kind;
  Term addr;                  // PointsTo / PointsToMaybe
  GoalPat value;              // PointsTo: value; PointsToMaybe: init state
  std::string pred;           // Pred
  std::vector<GoalPat> args;  // Pred
};

std::string to_string(const ChunkGoal& g);

/// Matches one chunk against one goal: kinds and predicate names must
/// coincide, every term position must be ProvablyEqual under pc, and every
/// binder position extends env with the chunk's term. Returns the extended
/// env, or nullopt on mismatch. Order-blind by construction: the chunk's
/// position in the heap is not an input.
std::optional<Env> match_chunk(const logic::PathCondition& pc, const Chunk& c,
                               const ChunkGoal& goal, const Env& env);

} // namespace mirrorvf::heap
