// SPDX-License-Identifier: Apache-2.0
#include "mirrorvf/ast.hpp"

namespace mirrorvf::lang {

AssertP mk_true(SrcLoc loc) {
  return std::make_shared<Assertion>(Assertion{TrueA{}, loc});
}
AssertP mk_points_to(Expr target, Pat pat, SrcLoc loc) {
  return std::make_shared<Assertion>(
      Assertion{PointsToA{std::move(target), std::move(pat)}, loc});
}
AssertP mk_pred_app(std::string name, std::vector<Expr> args, SrcLoc loc) {
  return std::make_shared<Assertion>(
      Assertion{PredAppA{std::move(name), std::move(args)}, loc});
}
AssertP mk_sep_conj(AssertP l, AssertP r, SrcLoc loc) {
  return std::make_shared<Assertion>(
      Assertion{SepConjA{std::move(l), std::move(r)}, loc});
}
AssertP mk_cond(Expr lhs, Expr rhs, AssertP t, AssertP e, SrcLoc loc) {
  return std::make_shared<Assertion>(Assertion{
      CondA{std::move(lhs), std::move(rhs), std::move(t), std::move(e)}, loc});
}

const PredicateDef* Program::find_predicate(const std::string& name) const {
  for (const auto& p : predicates)
    if (p.name == name) return &p;
  return nullptr;
}

const FunctionDef* Program::find_function(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

LocalClass ResolvedProgram::local_class(const std::string& fn,
                                        const std::string& local) const {
  return locals.at(fn).at(local);
}

} // namespace mirrorvf::lang
