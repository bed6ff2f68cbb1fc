// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/ast.hpp"

#include <cstdint>
#include <vector>

namespace mirrorvf::interp {

enum class UbKind { NullDeref, UnallocatedAccess, UninitRead };

const char* to_string(UbKind k);

/// Verdict of one concrete run. Exactly one applies.
struct Outcome {
  enum class Kind { Returned, Aborted, Ub, OutOfFuel };
  Kind kind = Kind::Returned;
  std::uint64_t value = 0; // Returned
  UbKind ub = UbKind::NullDeref;

  bool is_ub() const { return kind == Kind::Ub; }
};

std::string to_string(const Outcome& o);

struct RunStats {
  std::vector<std::uint64_t> allocated; // every address, allocation order
  std::uint64_t steps = 0;              // fuel actually consumed
};

/// Deterministic big-step run of main. Values are abstract naturals with 0
/// as null; each executable statement costs one unit of fuel (ghost
/// statements are free); locals are never deallocated.
Outcome run_main(const lang::ResolvedProgram& rp, std::uint64_t fuel,
                 RunStats* stats = nullptr);

} // namespace mirrorvf::interp
