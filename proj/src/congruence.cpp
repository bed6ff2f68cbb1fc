// SPDX-License-Identifier: Apache-2.0
//
// Ground congruence closure over path-condition equalities. The term
// language has exactly one non-nullary constructor (some), so congruence
// and injectivity propagation run as a pairwise fixpoint over the interned
// some-terms; universes here are tiny (a handful of symbols per function).

#include "mirrorvf/congruence.hpp"

#include <map>
#include <set>
#include <vector>

namespace mirrorvf::logic {

namespace {

thread_local std::uint64_t g_closure_builds = 0;

class Closure {
public:
  explicit Closure(const PathCondition& pc) : pc_(pc) {
    ++g_closure_builds;
    for (const Fact& f : pc.facts()) {
      intern(f.lhs);
      intern(f.rhs);
    }
  }

  int intern(const Term& t) {
    auto it = index_.find(t);
    if (it != index_.end()) return it->second;
    int inner = -1;
    if (t.kind() == Term::Kind::Some) inner = intern(t.inner());
    int id = static_cast<int>(terms_.size());
    index_.emplace(t, id);
    terms_.push_back(t);
    parent_.push_back(id);
    inner_of_.push_back(inner);
    if (t.kind() == Term::Kind::Some) some_ids_.push_back(id);
    return id;
  }

  void run() {
    for (const Fact& f : pc_.facts())
      if (f.rel == Fact::Rel::Eq)
        merge(index_.at(f.lhs), index_.at(f.rhs));
    // Fixpoint: upward congruence and downward injectivity over some(_).
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < some_ids_.size(); ++i) {
        for (std::size_t j = i + 1; j < some_ids_.size(); ++j) {
          int a = some_ids_[i], b = some_ids_[j];
          bool outer_eq = find(a) == find(b);
          bool inner_eq = find(inner_of_[a]) == find(inner_of_[b]);
          if (inner_eq && !outer_eq) {
            merge(a, b);
            changed = true;
          } else if (outer_eq && !inner_eq) {
            merge(inner_of_[a], inner_of_[b]);
            changed = true;
          }
        }
      }
    }
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Constructor content of one class: which of null/none/some it provably
  /// is, plus a witness argument class when it is a some.
  struct Shape {
    bool has_null = false, has_none = false;
    int some_arg = -1; // class id of the argument of a member some-term
  };

  Shape shape_of(int root) {
    Shape s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (find(static_cast<int>(i)) != root) continue;
      switch (terms_[i].kind()) {
      case Term::Kind::Null: s.has_null = true; break;
      case Term::Kind::None: s.has_none = true; break;
      case Term::Kind::Some: s.some_arg = find(inner_of_[static_cast<int>(i)]); break;
      case Term::Kind::Symbol: break;
      }
    }
    return s;
  }

  static bool shape_clash(const Shape& s) {
    int kinds = (s.has_null ? 1 : 0) + (s.has_none ? 1 : 0) +
                (s.some_arg >= 0 ? 1 : 0);
    return kinds > 1;
  }

  bool any_class_clashes() {
    std::set<int> roots;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      roots.insert(find(static_cast<int>(i)));
    for (int r : roots)
      if (shape_clash(shape_of(r))) return true;
    return false;
  }

  bool neq_separates(int ca, int cb) {
    for (const Fact& f : pc_.facts()) {
      if (f.rel != Fact::Rel::Neq) continue;
      int l = find(index_.at(f.lhs)), r = find(index_.at(f.rhs));
      if ((l == ca && r == cb) || (l == cb && r == ca)) return true;
    }
    return false;
  }

  /// True iff every model separates the two classes: a Neq fact joins them,
  /// their definite constructor forms differ, or (some vs some) their
  /// arguments are provably distinct.
  bool provably_distinct(int ca, int cb,
                         std::set<std::pair<int, int>>& visiting) {
    if (ca == cb) return false;
    auto key = std::minmax(ca, cb);
    if (!visiting.insert(key).second) return false;
    if (neq_separates(ca, cb)) return true;
    Shape sa = shape_of(ca), sb = shape_of(cb);
    auto kind_of = [](const Shape& s) {
      if (s.has_null) return 1;
      if (s.has_none) return 2;
      if (s.some_arg >= 0) return 3;
      return 0; // symbols only: unconstrained
    };
    int ka = kind_of(sa), kb = kind_of(sb);
    if (ka != 0 && kb != 0 && ka != kb) return true;
    if (ka == 3 && kb == 3)
      return provably_distinct(sa.some_arg, sb.some_arg, visiting);
    return false;
  }

  bool any_neq_violated() {
    for (const Fact& f : pc_.facts()) {
      if (f.rel != Fact::Rel::Neq) continue;
      if (find(index_.at(f.lhs)) == find(index_.at(f.rhs))) return true;
    }
    return false;
  }

private:
  const PathCondition& pc_;
  std::map<Term, int> index_;
  std::vector<Term> terms_;
  std::vector<int> parent_;
  std::vector<int> inner_of_;
  std::vector<int> some_ids_;

  void merge(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return;
    // Smaller term becomes the representative (stable across runs).
    if (compare(terms_[ry], terms_[rx]) < 0) std::swap(rx, ry);
    parent_[ry] = rx;
  }
};

} // namespace

EqResult decide_eq(const PathCondition& pc, const Term& a, const Term& b) {
  Closure cl(pc);
  int ia = cl.intern(a), ib = cl.intern(b);
  cl.run();
  int ca = cl.find(ia), cb = cl.find(ib);
  if (ca == cb) return EqResult::ProvablyEqual;
  std::set<std::pair<int, int>> visiting;
  if (cl.provably_distinct(ca, cb, visiting))
    return EqResult::ProvablyDistinct;
  return EqResult::Unknown;
}

bool is_infeasible(const PathCondition& pc) {
  Closure cl(pc);
  cl.run();
  return cl.any_neq_violated() || cl.any_class_clashes();
}

const char* to_string(EqResult r) {
  switch (r) {
  case EqResult::ProvablyEqual: return "ProvablyEqual";
  case EqResult::ProvablyDistinct: return "ProvablyDistinct";
  case EqResult::Unknown: return "Unknown";
  }
  return "?";
}

std::uint64_t closure_build_count() { return g_closure_builds; }
void reset_closure_build_count() { g_closure_builds = 0; }

} // namespace mirrorvf::logic
