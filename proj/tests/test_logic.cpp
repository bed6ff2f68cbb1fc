// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mirrorvf/congruence.hpp"
#include "mirrorvf/term.hpp"
#include "support/oracle.hpp"

using namespace mirrorvf::logic;
using testsupport::PartitionOracle;
using testsupport::random_atom_pc;

namespace {
Term sym(std::uint32_t id, const char* hint = "") {
  return Term::symbol(id, hint);
}
} // namespace

TEST_CASE("fresh symbols count up from zero and keep their hints") {
  SymbolCounter ctr;
  Term a = ctr.fresh("original");
  CHECK(a.kind() == Term::Kind::Symbol);
  CHECK(a.symbol_id() == 0);
  CHECK(a.hint() == "original");
  Term b = ctr.fresh("next");
  CHECK(b.symbol_id() == 1);
  CHECK(a != b);
}

TEST_CASE("symbol equality ignores hints") {
  CHECK(sym(3, "x") == sym(3, "y"));
  CHECK(sym(3) != sym(4));
}

TEST_CASE("assume appends and never rejects") {
  PathCondition pc;
  CHECK(pc.empty());
  PathCondition pc1 = pc.assume(Fact::neq(sym(0, "node1"), Term::null_ptr()));
  CHECK(pc1.size() == 1);
  CHECK(pc.empty()); // snapshot semantics
  // Reflexive fact changes nothing decidable.
  PathCondition pc2 = pc1.assume(Fact::eq(sym(0), sym(0)));
  CHECK(decide_eq(pc2, sym(0), Term::null_ptr()) ==
        EqResult::ProvablyDistinct);
  CHECK_FALSE(is_infeasible(pc2));
}

TEST_CASE("duplicate facts do not change decisions") {
  PathCondition once;
  once = once.assume(Fact::eq(sym(0), sym(1)));
  PathCondition twice = once.assume(Fact::eq(sym(0), sym(1)));
  for (std::uint32_t i = 0; i < 3; ++i)
    for (std::uint32_t j = 0; j < 3; ++j)
      CHECK(decide_eq(once, sym(i), sym(j)) ==
            decide_eq(twice, sym(i), sym(j)));
  CHECK(is_infeasible(once) == is_infeasible(twice));
}

TEST_CASE("transitivity through the closure") {
  PathCondition pc;
  pc = pc.assume(Fact::eq(sym(0, "x"), sym(1, "y")));
  pc = pc.assume(Fact::eq(sym(1, "y"), sym(2, "z")));
  CHECK(decide_eq(pc, sym(0), sym(2)) == EqResult::ProvablyEqual);
}

TEST_CASE("a disequality separates the classes") {
  PathCondition pc;
  pc = pc.assume(Fact::neq(sym(0, "node3"), Term::null_ptr()));
  CHECK(decide_eq(pc, sym(0), Term::null_ptr()) ==
        EqResult::ProvablyDistinct);
  CHECK_FALSE(is_infeasible(pc));
}

TEST_CASE("unrelated symbols stay unknown") {
  PathCondition pc;
  CHECK(decide_eq(pc, sym(0), sym(1)) == EqResult::Unknown);
  CHECK(decide_eq(pc, sym(0), Term::null_ptr()) == EqResult::Unknown);
}

TEST_CASE("direct and derived contradictions are infeasible") {
  PathCondition pc;
  pc = pc.assume(Fact::eq(sym(0, "x"), Term::null_ptr()));
  pc = pc.assume(Fact::neq(sym(0, "x"), Term::null_ptr()));
  CHECK(is_infeasible(pc));

  PathCondition pc2;
  pc2 = pc2.assume(Fact::eq(sym(0, "a"), sym(1, "b")));
  pc2 = pc2.assume(Fact::eq(sym(1, "b"), sym(2, "c")));
  pc2 = pc2.assume(Fact::neq(sym(0, "a"), sym(2, "c")));
  CHECK(is_infeasible(pc2));
}

TEST_CASE("constructors: disjointness and injectivity") {
  PathCondition pc;
  Term a = sym(0, "a"), b = sym(1, "b");
  CHECK(decide_eq(pc, Term::some(a), Term::none_val()) ==
        EqResult::ProvablyDistinct);
  CHECK(decide_eq(pc, Term::none_val(), Term::null_ptr()) ==
        EqResult::ProvablyDistinct);
  CHECK(decide_eq(pc, Term::some(a), Term::null_ptr()) ==
        EqResult::ProvablyDistinct);
  // congruence upward
  PathCondition eq = pc.assume(Fact::eq(a, b));
  CHECK(decide_eq(eq, Term::some(a), Term::some(b)) ==
        EqResult::ProvablyEqual);
  // injectivity downward
  PathCondition outer = pc.assume(Fact::eq(Term::some(a), Term::some(b)));
  CHECK(decide_eq(outer, a, b) == EqResult::ProvablyEqual);
  // disequality lifts through the constructor
  PathCondition neq = pc.assume(Fact::neq(a, b));
  CHECK(decide_eq(neq, Term::some(a), Term::some(b)) ==
        EqResult::ProvablyDistinct);
  // some(x) = none is a clash
  PathCondition clash = pc.assume(Fact::eq(Term::some(a), Term::none_val()));
  CHECK(is_infeasible(clash));
}

TEST_CASE("constructor injectivity property on random pcs") {
  std::mt19937 rng(7);
  for (int round = 0; round < 200; ++round) {
    int symbols = 0;
    PathCondition pc = random_atom_pc(rng, 4, 6, &symbols);
    std::uniform_int_distribution<int> pick(0, symbols - 1);
    Term a = sym(static_cast<std::uint32_t>(pick(rng)));
    Term b = sym(static_cast<std::uint32_t>(pick(rng)));
    EqResult outer = decide_eq(pc, Term::some(a), Term::some(b));
    if (outer != EqResult::Unknown)
      CHECK(outer == decide_eq(pc, a, b));
  }
}

TEST_CASE("decisions agree with the partition-enumeration oracle") {
  std::mt19937 rng(42);
  int rounds = 400;
  for (int round = 0; round < rounds; ++round) {
    int symbols = 0;
    PathCondition pc = random_atom_pc(rng, 6, 8, &symbols);
    PartitionOracle oracle(pc, symbols);
    CHECK(is_infeasible(pc) == oracle.infeasible());
    if (oracle.infeasible()) continue;
    // All atom pairs, null included.
    std::vector<Term> atoms;
    for (int i = 0; i < symbols; ++i)
      atoms.push_back(sym(static_cast<std::uint32_t>(i)));
    atoms.push_back(Term::null_ptr());
    for (const Term& a : atoms)
      for (const Term& b : atoms)
        CHECK(decide_eq(pc, a, b) == oracle.decide(a, b));
  }
}

TEST_CASE("monotonicity: decided-equal and infeasible survive new facts") {
  std::mt19937 rng(99);
  for (int round = 0; round < 300; ++round) {
    int symbols = 0;
    PathCondition pc = random_atom_pc(rng, 5, 6, &symbols);
    std::uniform_int_distribution<int> pick(0, symbols); // symbols => null
    auto atom = [&](int i) {
      return i == symbols ? Term::null_ptr()
                          : sym(static_cast<std::uint32_t>(i));
    };
    Term a = atom(pick(rng)), b = atom(pick(rng));
    Term l = atom(pick(rng)), r = atom(pick(rng));
    std::uniform_int_distribution<int> rel(0, 1);
    Fact extra = rel(rng) ? Fact::eq(l, r) : Fact::neq(l, r);

    bool was_infeasible = is_infeasible(pc);
    EqResult before = decide_eq(pc, a, b);
    PathCondition grown = pc.assume(extra);
    if (before == EqResult::ProvablyEqual)
      CHECK(decide_eq(grown, a, b) == EqResult::ProvablyEqual);
    if (was_infeasible) CHECK(is_infeasible(grown));
  }
}

TEST_CASE("representative choice is deterministic across fact orderings") {
  // Same fact set, two insertion orders: decisions must agree everywhere.
  PathCondition p1, p2;
  p1 = p1.assume(Fact::eq(sym(2), sym(4)));
  p1 = p1.assume(Fact::eq(sym(0), sym(2)));
  p1 = p1.assume(Fact::neq(sym(1), sym(4)));
  p2 = p2.assume(Fact::neq(sym(1), sym(4)));
  p2 = p2.assume(Fact::eq(sym(0), sym(2)));
  p2 = p2.assume(Fact::eq(sym(2), sym(4)));
  for (std::uint32_t i = 0; i < 5; ++i)
    for (std::uint32_t j = 0; j < 5; ++j)
      CHECK(decide_eq(p1, sym(i), sym(j)) == decide_eq(p2, sym(i), sym(j)));
}
