// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/congruence.hpp"
#include "mirrorvf/term.hpp"

#include <random>
#include <vector>

namespace testsupport {

using mirrorvf::logic::EqResult;
using mirrorvf::logic::Fact;
using mirrorvf::logic::PathCondition;
using mirrorvf::logic::Term;

/// Brute-force reference for decide_eq / is_infeasible over atom universes
/// (symbols 0..n-1 plus nullptr): enumerates every set partition of the
/// atoms and keeps the ones consistent with pc. decide() answers Equal when
/// all consistent partitions equate the atoms, Distinct when none do.
class PartitionOracle {
public:
  PartitionOracle(const PathCondition& pc, int num_symbols);

  EqResult decide(const Term& a, const Term& b) const;
  bool infeasible() const { return consistent_.empty(); }

private:
  int atoms_;
  std::vector<std::vector<int>> consistent_; // block id per atom

  int atom_index(const Term& t) const;
};

/// Random path condition over at most `max_symbols` symbols and
/// `max_facts` (dis)equalities between atoms.
PathCondition random_atom_pc(std::mt19937& rng, int max_symbols,
                             int max_facts, int* symbols_out);

} // namespace testsupport
