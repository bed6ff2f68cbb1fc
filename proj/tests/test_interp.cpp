// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mirrorvf/interp.hpp"
#include "mirrorvf/parser.hpp"
#include "mirrorvf/resolve.hpp"
#include "support/testutil.hpp"

#include <set>

using namespace mirrorvf;
using namespace mirrorvf::interp;
using lang::parse_program;
using lang::resolve_program;
using testsupport::fig1_source;

namespace {
lang::ResolvedProgram parse_resolve(const std::string& src) {
  return resolve_program(parse_program(src));
}
} // namespace

TEST_CASE("the linked-list example aborts cleanly, no UB") {
  auto rp = parse_resolve(fig1_source());
  Outcome o = run_main(rp, 10000);
  CHECK(o.kind == Outcome::Kind::Aborted);
}

TEST_CASE("abort costs exactly one unit of fuel") {
  auto rp = parse_resolve(
      "fn main() //@ req true;\n//@ ens true;\n{ std::process::abort(); }");
  CHECK(run_main(rp, 1).kind == Outcome::Kind::Aborted);
  CHECK(run_main(rp, 0).kind == Outcome::Kind::OutOfFuel);
}

TEST_CASE("null dereference is flagged") {
  auto rp = parse_resolve(
      "fn main() //@ req true;\n//@ ens true;\n"
      "{ let x = *(std::ptr::null_mut() as *mut *mut u8); return x; }");
  Outcome o = run_main(rp, 100);
  REQUIRE(o.kind == Outcome::Kind::Ub);
  CHECK(o.ub == UbKind::NullDeref);

  auto rp2 = parse_resolve(
      "fn main() //@ req true;\n//@ ens true;\n"
      "{ *(std::ptr::null_mut() as *mut *mut u8) = 0; return 0; }");
  Outcome o2 = run_main(rp2, 100);
  REQUIRE(o2.kind == Outcome::Kind::Ub);
  CHECK(o2.ub == UbKind::NullDeref);
}

TEST_CASE("reading an uninitialized cell is flagged") {
  auto rp = parse_resolve(
      "fn main() //@ req true;\n//@ ens true;\n"
      "{ let mut x;\n  let y = *(&raw mut x);\n  return y; }");
  Outcome o = run_main(rp, 100);
  REQUIRE(o.kind == Outcome::Kind::Ub);
  CHECK(o.ub == UbKind::UninitRead);

  // Writing first makes the read fine.
  auto rp2 = parse_resolve(
      "fn main() //@ req true;\n//@ ens true;\n"
      "{ let mut x;\n  *(&raw mut x) = 0;\n  let y = *(&raw mut x);\n"
      "  return y; }");
  CHECK(run_main(rp2, 100).kind == Outcome::Kind::Returned);
}

TEST_CASE("values returned through calls and cells survive intact") {
  auto rp = parse_resolve(
      "fn id(p) //@ req true;\n//@ ens true;\n{ return p; }\n"
      "fn main() //@ req true;\n//@ ens true;\n"
      "{ let mut a = 0;\n  let b = id(&raw mut a);\n  let c = *(b);\n"
      "  return c; }");
  Outcome o = run_main(rp, 100);
  REQUIRE(o.kind == Outcome::Kind::Returned);
  CHECK(o.value == 0);
}

TEST_CASE("deep recursion runs out of fuel rather than diverging") {
  auto rp = parse_resolve(
      "fn spin(x) //@ req true;\n//@ ens true;\n{ spin(x) }\n"
      "fn main() //@ req true;\n//@ ens true;\n{ let r = spin(0); return r; }");
  CHECK(run_main(rp, 10).kind == Outcome::Kind::OutOfFuel);
}

TEST_CASE("runs are deterministic") {
  auto rp = parse_resolve(fig1_source());
  RunStats s1, s2;
  Outcome a = run_main(rp, 10000, &s1);
  Outcome b = run_main(rp, 10000, &s2);
  CHECK(a.kind == b.kind);
  CHECK(s1.steps == s2.steps);
  CHECK(s1.allocated == s2.allocated);
}

TEST_CASE("allocated addresses are fresh, nonzero, and unique") {
  auto rp = parse_resolve(fig1_source());
  RunStats stats;
  run_main(rp, 10000, &stats);
  CHECK(stats.allocated.size() == 3); // node1, node2, node3
  std::set<std::uint64_t> unique(stats.allocated.begin(),
                                 stats.allocated.end());
  CHECK(unique.size() == stats.allocated.size());
  CHECK(unique.count(0) == 0);
}
