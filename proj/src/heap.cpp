// SPDX-License-Identifier: Apache-2.0
#include "mirrorvf/heap.hpp"

namespace mirrorvf::heap {

bool operator==(const Chunk& a, const Chunk& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* pa = std::get_if<PointsToC>(&a.node)) {
    const auto& pb = std::get<PointsToC>(b.node);
    return pa->addr == pb.addr && pa->val == pb.val;
  }
  if (const auto* pa = std::get_if<PointsToMaybeC>(&a.node)) {
    const auto& pb = std::get<PointsToMaybeC>(b.node);
    return pa->addr == pb.addr && pa->init == pb.init;
  }
  const auto& pa = std::get<PredC>(a.node);
  const auto& pb = std::get<PredC>(b.node);
  return pa.name == pb.name && pa.args == pb.args;
}

std::string to_string(const Chunk& c) {
  using logic::to_string;
  if (const auto* p = std::get_if<PointsToC>(&c.node))
    return "points_to(" + to_string(p->addr) + ", " + to_string(p->val) + ")";
  if (const auto* p = std::get_if<PointsToMaybeC>(&c.node))
    return "points_to_(" + to_string(p->addr) + ", " + to_string(p->init) +
           ")";
  const auto& p = std::get<PredC>(c.node);
  std::string out = p.name + "(";
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    if (i) out += ", ";
    out += to_string(p.args[i]);
  }
  return out + ")";
}

SymbolicHeap SymbolicHeap::add_front(Chunk c) const {
  std::vector<Chunk> out;
  out.reserve(chunks_.size() + 1);
  out.push_back(std::move(c));
  out.insert(out.end(), chunks_.begin(), chunks_.end());
  return SymbolicHeap(std::move(out));
}

std::optional<std::pair<Chunk, SymbolicHeap>>
SymbolicHeap::remove_at(std::size_t k) const {
  if (k >= chunks_.size()) return std::nullopt;
  std::vector<Chunk> rest;
  rest.reserve(chunks_.size() - 1);
  for (std::size_t i = 0; i < chunks_.size(); ++i)
    if (i != k) rest.push_back(chunks_[i]);
  return std::make_pair(chunks_[k], SymbolicHeap(std::move(rest)));
}

std::string to_string(const SymbolicHeap& h) {
  std::string out = "[";
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i) out += ", ";
    out += to_string(h.at(i));
  }
  return out + "]";
}

std::string to_string(const GoalPat& p) {
  if (p.is_binder()) return "?" + p.binder;
  return logic::to_string(*p.term);
}

std::string to_string(const ChunkGoal& g) {
  switch (g.kind) {
  case ChunkGoal::Kind::PointsTo:
    return "points_to(" + logic::to_string(g.addr) + ", " +
           to_string(g.value) + ")";
  case ChunkGoal::Kind::PointsToMaybe:
    return "points_to_(" + logic::to_string(g.addr) + ", " +
           to_string(g.value) + ")";
  case ChunkGoal::Kind::Pred: {
    std::string out = g.pred + "(";
    for (std::size_t i = 0; i < g.args.size(); ++i) {
      if (i) out += ", ";
      out += to_string(g.args[i]);
    }
    return out + ")";
  }
  }
  return "?";
}

namespace {

bool match_pat(const logic::PathCondition& pc, const GoalPat& pat,
               const Term& chunk_term, Env& env) {
  if (pat.is_binder()) {
    env[pat.binder] = chunk_term;
    return true;
  }
  return logic::decide_eq(pc, *pat.term, chunk_term) ==
         logic::EqResult::ProvablyEqual;
}

} // namespace

std::optional<Env> match_chunk(const logic::PathCondition& pc, const Chunk& c,
                               const ChunkGoal& goal, const Env& env) {
  Env out = env;
  switch (goal.kind) {
  case ChunkGoal::Kind::PointsTo: {
    const auto* p = std::get_if<PointsToC>(&c.node);
    if (!p) return std::nullopt;
    if (logic::decide_eq(pc, goal.addr, p->addr) !=
        logic::EqResult::ProvablyEqual)
      return std::nullopt;
    if (!match_pat(pc, goal.value, p->val, out)) return std::nullopt;
    return out;
  }
  case ChunkGoal::Kind::PointsToMaybe: {
    const auto* p = std::get_if<PointsToMaybeC>(&c.node);
    if (!p) return std::nullopt;
    if (logic::decide_eq(pc, goal.addr, p->addr) !=
        logic::EqResult::ProvablyEqual)
      return std::nullopt;
    if (!match_pat(pc, goal.value, p->init, out)) return std::nullopt;
    return out;
  }
  case ChunkGoal::Kind::Pred: {
    const auto* p = std::get_if<PredC>(&c.node);
    if (!p || p->name != goal.pred) return std::nullopt;
    if (p->args.size() != goal.args.size()) return std::nullopt;
    for (std::size_t i = 0; i < goal.args.size(); ++i)
      if (!match_pat(pc, goal.args[i], p->args[i], out)) return std::nullopt;
    return out;
  }
  }
  return std::nullopt;
}

} // namespace mirrorvf::heap
