// SPDX-License-Identifier: Apache-2.0
#include "support/oracle.hpp"

#include <cassert>
#include <stdexcept>

namespace testsupport {

PartitionOracle::PartitionOracle(const PathCondition& pc, int num_symbols)
    : atoms_(num_symbols + 1) { // +1 for nullptr
  // Enumerate partitions as restricted growth strings.
  std::vector<int> blocks(static_cast<std::size_t>(atoms_), 0);
  auto consistent = [&]() {
    for (const Fact& f : pc.facts()) {
      bool same = blocks[static_cast<std::size_t>(atom_index(f.lhs))] ==
                  blocks[static_cast<std::size_t>(atom_index(f.rhs))];
      if (f.rel == Fact::Rel::Eq ? !same : same) return false;
    }
    return true;
  };
  // rec(i, next_block): assign blocks[i] in 0..next_block.
  auto rec = [&](auto&& self, int i, int next_block) -> void {
    if (i == atoms_) {
      if (consistent()) consistent_.push_back(blocks);
      return;
    }
    for (int b = 0; b <= next_block; ++b) {
      blocks[static_cast<std::size_t>(i)] = b;
      self(self, i + 1, b == next_block ? next_block + 1 : next_block);
    }
  };
  rec(rec, 0, 0);
}

int PartitionOracle::atom_index(const Term& t) const {
  if (t.kind() == Term::Kind::Null) return atoms_ - 1;
  if (t.kind() == Term::Kind::Symbol) {
    int i = static_cast<int>(t.symbol_id());
    if (i >= atoms_ - 1) throw std::out_of_range("oracle: symbol id");
    return i;
  }
  throw std::invalid_argument("oracle handles atoms only");
}

EqResult PartitionOracle::decide(const Term& a, const Term& b) const {
  int ia = atom_index(a), ib = atom_index(b);
  bool all_equal = true, none_equal = true;
  for (const auto& blocks : consistent_) {
    bool same = blocks[static_cast<std::size_t>(ia)] ==
                blocks[static_cast<std::size_t>(ib)];
    all_equal = all_equal && same;
    none_equal = none_equal && !same;
  }
  if (all_equal) return EqResult::ProvablyEqual;
  if (none_equal) return EqResult::ProvablyDistinct;
  return EqResult::Unknown;
}

PathCondition random_atom_pc(std::mt19937& rng, int max_symbols,
                             int max_facts, int* symbols_out) {
  std::uniform_int_distribution<int> nsym(1, max_symbols);
  std::uniform_int_distribution<int> nfact(0, max_facts);
  int symbols = nsym(rng);
  if (symbols_out) *symbols_out = symbols;
  std::uniform_int_distribution<int> atom(0, symbols); // == symbols => null
  std::uniform_int_distribution<int> rel(0, 1);
  auto pick = [&]() -> Term {
    int a = atom(rng);
    if (a == symbols) return Term::null_ptr();
    return Term::symbol(static_cast<std::uint32_t>(a),
                        "s" + std::to_string(a));
  };
  PathCondition pc;
  int facts = nfact(rng);
  for (int i = 0; i < facts; ++i) {
    Term l = pick(), r = pick();
    pc = pc.assume(rel(rng) ? Fact::eq(l, r) : Fact::neq(l, r));
  }
  return pc;
}

} // namespace testsupport
