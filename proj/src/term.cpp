// SPDX-License-Identifier: Apache-2.0
#include "mirrorvf/term.hpp"

namespace mirrorvf::logic {

static int kind_rank(Term::Kind k) {
  switch (k) {
  case Term::Kind::Null: return 0;
  case Term::Kind::None: return 1;
  case Term::Kind::Symbol: return 2;
  case Term::Kind::Some: return 3;
  }
  return 4;
}

int compare(const Term& a, const Term& b) {
  int ra = kind_rank(a.kind()), rb = kind_rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
  case Term::Kind::Null:
  case Term::Kind::None:
    return 0;
  case Term::Kind::Symbol:
    if (a.symbol_id() != b.symbol_id())
      return a.symbol_id() < b.symbol_id() ? -1 : 1;
    return 0;
  case Term::Kind::Some:
    return compare(a.inner(), b.inner());
  }
  return 0;
}

std::string to_string(const Term& t) {
  switch (t.kind()) {
  case Term::Kind::Null: return "nullptr";
  case Term::Kind::None: return "none";
  case Term::Kind::Some: return "some(" + to_string(t.inner()) + ")";
  case Term::Kind::Symbol:
    if (t.hint().empty()) return "#" + std::to_string(t.symbol_id());
    return t.hint() + "#" + std::to_string(t.symbol_id());
  }
  return "?";
}

std::string to_string(const Fact& f) {
  return to_string(f.lhs) + (f.rel == Fact::Rel::Eq ? " = " : " ≠ ") +
         to_string(f.rhs);
}

std::string to_string(const PathCondition& pc) {
  std::string out = "{";
  bool first = true;
  for (const Fact& f : pc.facts()) {
    if (!first) out += ", ";
    first = false;
    out += to_string(f);
  }
  return out + "}";
}

} // namespace mirrorvf::logic
