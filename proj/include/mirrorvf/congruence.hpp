// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/term.hpp"

namespace mirrorvf::logic {

enum class EqResult { ProvablyEqual, ProvablyDistinct, Unknown };

/// Congruence closure over the path condition's equalities, extended with
/// constructor disjointness (null / none / some(_) are pairwise distinct)
/// and injectivity of some(_). Sound: never answers Equal or Distinct
/// unless every model of pc agrees.
EqResult decide_eq(const PathCondition& pc, const Term& a, const Term& b);

/// True iff pc has no model: some Neq fact joins one congruence class, or
/// two distinct constructor forms collapse into one class.
bool is_infeasible(const PathCondition& pc);

const char* to_string(EqResult r);

/// Running count of decide_eq/is_infeasible closure constructions on this
/// thread. Test instrumentation for the no-superlinear-blowup assertions.
std::uint64_t closure_build_count();
void reset_closure_build_count();

} // namespace mirrorvf::logic
