// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/symex.hpp"

#include <random>
#include <vector>

namespace testsupport {

/// All single-point mutants of a hint tree: index +1 (and -1 while still a
/// natural), step-kind swaps (consume <-> auto-open, step -> Done), step
/// drop, subtree truncation to Success, branch child swap, and branch
/// collapse to either child. Identity rewrites are skipped.
std::vector<mirrorvf::symex::TreeP>
enumerate_mutants(const mirrorvf::symex::TreeP& tree);

/// Certificates for `cert` with exactly one mutation applied to one
/// function's tree.
std::vector<mirrorvf::symex::Certificate>
enumerate_certificate_mutants(const mirrorvf::symex::Certificate& cert);

/// Random tree over the hint alphabet: chains of consume/auto-open steps
/// with occasional branches, ending in Success or Done.
mirrorvf::symex::TreeP random_tree(std::mt19937& rng, int max_depth = 12);

} // namespace testsupport
