// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/symex.hpp"

namespace mirrorvf::mirror {

using symex::TreeP;

/// Replay instrumentation. Search-freedom shows up as
/// match_attempts == consume_steps + auto_open_steps: the checker tries
/// exactly the hinted chunk for every goal, no retries, no backtracking.
struct ReplayStats {
  std::size_t match_attempts = 0;
  std::size_t consume_steps = 0;
  std::size_t auto_open_steps = 0;
  std::size_t done_steps = 0;
};

struct ReplayOptions {
  std::uint64_t ghost_fuel = 10000;
  std::string* trace = nullptr;
  ReplayStats* stats = nullptr;
};

/// Replays one function's symbolic execution, consuming the hint tree
/// exactly: every fork needs a Branch node, every leaf conjunct takes the
/// next hinted step, a Done step is accepted only when the path condition
/// is provably infeasible, and Success only at a completed return (empty
/// heap after the postcondition) or abort. Throws RejectError.
void replay_function(const lang::ResolvedProgram& rp, const std::string& fname,
                     const TreeP& tree, const ReplayOptions& options = {});

/// Validates the digest, the tree-per-function correspondence, and replays
/// every function. Throws RejectError with the failing function and step
/// path.
void check_certificate(const lang::ResolvedProgram& rp,
                       const symex::Certificate& cert,
                       const ReplayOptions& options = {});

} // namespace mirrorvf::mirror
