// SPDX-License-Identifier: Apache-2.0
//
// Concrete reference interpreter and undefined-behavior detector. Cells
// live in a map from abstract addresses (allocated 1, 2, 3, ...; 0 is
// null and never allocated) to init states. The three UB classes it can
// observe: dereferencing null, touching an address that was never
// allocated, and reading an allocated but uninitialized cell.

#include "mirrorvf/interp.hpp"

#include <map>
#include <optional>

namespace mirrorvf::interp {

const char* to_string(UbKind k) {
  switch (k) {
  case UbKind::NullDeref: return "NullDeref";
  case UbKind::UnallocatedAccess: return "UnallocatedAccess";
  case UbKind::UninitRead: return "UninitRead";
  }
  return "?";
}

std::string to_string(const Outcome& o) {
  switch (o.kind) {
  case Outcome::Kind::Returned:
    return "Returned(" + std::to_string(o.value) + ")";
  case Outcome::Kind::Aborted: return "Aborted";
  case Outcome::Kind::Ub: return std::string("UB(") + to_string(o.ub) + ")";
  case Outcome::Kind::OutOfFuel: return "OutOfFuel";
  }
  return "?";
}

namespace {

struct CellState {
  bool init = false;
  std::uint64_t value = 0;
};

/// How a statement sequence ended; FellThrough lets the caller continue
/// with the rest of the enclosing block (or synthesize a null return at
/// the end of a function body).
struct Flow {
  enum class Kind { FellThrough, Returned, Aborted, Ub, OutOfFuel };
  Kind kind = Kind::FellThrough;
  std::uint64_t value = 0;
  UbKind ub = UbKind::NullDeref;

  static Flow fell_through() { return {}; }
  static Flow returned(std::uint64_t v) {
    return {Kind::Returned, v, UbKind::NullDeref};
  }
};

class Interp {
public:
  Interp(const lang::ResolvedProgram& rp, std::uint64_t fuel, RunStats* stats)
      : rp_(rp), fuel_(fuel), stats_(stats) {}

  Outcome run() {
    const lang::FunctionDef* main_fn = rp_.find_function("main");
    Flow f = call(*main_fn, {});
    switch (f.kind) {
    case Flow::Kind::Returned:
    case Flow::Kind::FellThrough:
      return {Outcome::Kind::Returned, f.value, UbKind::NullDeref};
    case Flow::Kind::Aborted:
      return {Outcome::Kind::Aborted, 0, UbKind::NullDeref};
    case Flow::Kind::Ub:
      return {Outcome::Kind::Ub, 0, f.ub};
    case Flow::Kind::OutOfFuel:
      return {Outcome::Kind::OutOfFuel, 0, UbKind::NullDeref};
    }
    return {};
  }

private:
  const lang::ResolvedProgram& rp_;
  std::uint64_t fuel_;
  RunStats* stats_;
  std::map<std::uint64_t, CellState> cells_;
  std::uint64_t next_addr_ = 1;

  struct LocalSlot {
    bool addressed = false;
    std::uint64_t value_or_addr = 0;
  };
  using Frame = std::map<std::string, LocalSlot>;

  std::uint64_t allocate() {
    std::uint64_t a = next_addr_++;
    cells_[a] = CellState{};
    if (stats_) stats_->allocated.push_back(a);
    return a;
  }

  static Flow ub(UbKind kind) {
    return {Flow::Kind::Ub, 0, kind};
  }

  bool pay() {
    if (fuel_ == 0) return false;
    --fuel_;
    if (stats_) ++stats_->steps;
    return true;
  }

  std::uint64_t eval(const Frame& frame, const lang::Expr& e) const {
    switch (e.kind) {
    case lang::Expr::Kind::Null:
      return 0;
    case lang::Expr::Kind::Var:
    case lang::Expr::Kind::AddrOf:
      return frame.at(e.name).value_or_addr;
    }
    return 0;
  }

  Flow call(const lang::FunctionDef& fn, std::vector<std::uint64_t> args) {
    Frame frame;
    for (std::size_t i = 0; i < fn.params.size(); ++i)
      frame[fn.params[i]] = {false, args[i]};
    Flow f = exec_block(fn.body, frame);
    if (f.kind == Flow::Kind::FellThrough) return Flow::returned(0);
    return f;
  }

  Flow exec_block(const std::vector<lang::Stmt>& body, Frame& frame) {
    for (const lang::Stmt& s : body) {
      Flow f = exec_stmt(s, frame);
      if (f.kind != Flow::Kind::FellThrough) return f;
    }
    return Flow::fell_through();
  }

  Flow exec_stmt(const lang::Stmt& s, Frame& frame) {
    // Ghost statements are erased at runtime and cost nothing.
    if (std::holds_alternative<lang::GhostOpenS>(s.node) ||
        std::holds_alternative<lang::GhostCloseS>(s.node))
      return Flow::fell_through();
    if (!pay()) return {Flow::Kind::OutOfFuel, 0, UbKind::NullDeref};

    if (const auto* let = std::get_if<lang::LetValueS>(&s.node)) {
      frame[let->name] = {false, eval(frame, *let->init)};
      return Flow::fell_through();
    }
    if (const auto* let = std::get_if<lang::LetAddressedS>(&s.node)) {
      std::optional<std::uint64_t> init;
      if (let->init) init = eval(frame, *let->init);
      std::uint64_t addr = allocate();
      frame[let->name] = {true, addr};
      if (init) cells_[addr] = {true, *init};
      return Flow::fell_through();
    }
    if (const auto* let = std::get_if<lang::LetDerefS>(&s.node)) {
      std::uint64_t p = eval(frame, let->target);
      if (p == 0) return ub(UbKind::NullDeref);
      auto it = cells_.find(p);
      if (it == cells_.end()) return ub(UbKind::UnallocatedAccess);
      if (!it->second.init) return ub(UbKind::UninitRead);
      frame[let->name] = {false, it->second.value};
      return Flow::fell_through();
    }
    if (const auto* w = std::get_if<lang::WriteDerefS>(&s.node)) {
      std::uint64_t p = eval(frame, w->target);
      std::uint64_t v = eval(frame, w->value);
      if (p == 0) return ub(UbKind::NullDeref);
      auto it = cells_.find(p);
      if (it == cells_.end()) return ub(UbKind::UnallocatedAccess);
      it->second = {true, v};
      return Flow::fell_through();
    }
    if (const auto* ifs = std::get_if<lang::IfNullS>(&s.node)) {
      if (eval(frame, ifs->scrutinee) == 0)
        return exec_block(ifs->then_body, frame);
      return exec_block(ifs->else_body, frame);
    }
    if (const auto* c = std::get_if<lang::CallS>(&s.node)) {
      const lang::FunctionDef* callee = rp_.find_function(c->callee);
      std::vector<std::uint64_t> args;
      args.reserve(c->args.size());
      for (const auto& e : c->args) args.push_back(eval(frame, e));
      Flow f = call(*callee, std::move(args));
      if (f.kind != Flow::Kind::Returned) return f;
      if (c->bind) frame[*c->bind] = {false, f.value};
      return Flow::fell_through();
    }
    if (const auto* r = std::get_if<lang::ReturnS>(&s.node))
      return Flow::returned(eval(frame, r->value));
    if (std::holds_alternative<lang::AbortS>(s.node))
      return {Flow::Kind::Aborted, 0, UbKind::NullDeref};
    return Flow::fell_through();
  }
};

} // namespace

Outcome run_main(const lang::ResolvedProgram& rp, std::uint64_t fuel,
                 RunStats* stats) {
  return Interp(rp, fuel, stats).run();
}

} // namespace mirrorvf::interp
