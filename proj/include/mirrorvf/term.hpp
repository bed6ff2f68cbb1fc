// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace mirrorvf::logic {

/// First-order term: the null constant, an init-state constructor
/// (none / some(t)), or a fresh symbol. Symbols compare by id only;
/// the hint is display metadata.
class Term {
public:
  enum class Kind { Null, None, Some, Symbol };

  Term() : kind_(Kind::Null) {}

  static Term null_ptr() { return Term(); }
  static Term none_val() {
    Term t;
    t.kind_ = Kind::None;
    return t;
  }
  static Term some(Term inner) {
    Term t;
    t.kind_ = Kind::Some;
    t.inner_ = std::make_shared<Term>(std::move(inner));
    return t;
  }
  static Term symbol(std::uint32_t id, std::string hint) {
    Term t;
    t.kind_ = Kind::Symbol;
    t.id_ = id;
    t.hint_ = std::move(hint);
    return t;
  }

  Kind kind() const { return kind_; }
  std::uint32_t symbol_id() const { return id_; }
  const std::string& hint() const { return hint_; }
  const Term& inner() const { return *inner_; }

  bool is_null() const { return kind_ == Kind::Null; }
  bool is_symbol() const { return kind_ == Kind::Symbol; }

private:
  Kind kind_;
  std::uint32_t id_ = 0;
  std::string hint_;                  // Symbol only
  std::shared_ptr<Term> inner_;       // Some only
};

/// Total order: Null < None < Symbol(id asc) < Some(inner order).
/// Hints do not participate.
int compare(const Term& a, const Term& b);

inline bool operator==(const Term& a, const Term& b) {
  return compare(a, b) == 0;
}
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }
inline bool operator<(const Term& a, const Term& b) {
  return compare(a, b) < 0;
}

/// Equality or disequality between two terms.
struct Fact {
  enum class Rel { Eq, Neq };
  Rel rel;
  Term lhs, rhs;

  static Fact eq(Term a, Term b) {
    return {Rel::Eq, std::move(a), std::move(b)};
  }
  static Fact neq(Term a, Term b) {
    return {Rel::Neq, std::move(a), std::move(b)};
  }
};

inline bool operator==(const Fact& a, const Fact& b) {
  return a.rel == b.rel && a.lhs == b.lhs && a.rhs == b.rhs;
}

/// Append-only sequence of assumed facts. Values are immutable snapshots;
/// assume() returns the extended copy.
class PathCondition {
public:
  PathCondition() = default;

  [[nodiscard]] PathCondition assume(Fact f) const {
    PathCondition out = *this;
    out.facts_.push_back(std::move(f));
    return out;
  }

  const std::vector<Fact>& facts() const { return facts_; }
  bool empty() const { return facts_.empty(); }
  std::size_t size() const { return facts_.size(); }

private:
  std::vector<Fact> facts_;
};

/// Deterministic fresh-symbol supply. Verifier and checker each run one
/// counter per function so their symbol streams coincide.
class SymbolCounter {
public:
  Term fresh(std::string hint) {
    issued_.emplace_back(next_, hint);
    return Term::symbol(next_++, std::move(hint));
  }

  std::uint32_t next_id() const { return next_; }

  /// (id, hint) pairs in allocation order; used to diff runs.
  const std::vector<std::pair<std::uint32_t, std::string>>& log() const {
    return issued_;
  }

private:
  std::uint32_t next_ = 0;
  std::vector<std::pair<std::uint32_t, std::string>> issued_;
};

std::string to_string(const Term& t);
std::string to_string(const Fact& f);
std::string to_string(const PathCondition& pc);

} // namespace mirrorvf::logic
