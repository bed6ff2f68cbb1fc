// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/ast.hpp"

namespace mirrorvf::lang {

/// Resolves names and arities, checks assertion binder discipline and spec
/// free variables, classifies every local as ByValue or Addressed
/// (Addressed iff some address-of targets it), and rewrites the affected
/// `let` statements. Deterministic and total on parser output: returns a
/// ResolvedProgram or throws ResolveError, never crashes.
ResolvedProgram resolve_program(const Program& p);

} // namespace mirrorvf::lang
