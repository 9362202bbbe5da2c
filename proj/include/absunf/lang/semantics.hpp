#pragma once

#include <compare>
#include <vector>

#include "absunf/lang/program.hpp"

namespace absunf::lang {

using LocVec = std::vector<LocId>;

/// One location per thread plus a value for every declared variable.
struct ConcreteState {
  LocVec locs;
  std::vector<Value> vals;

  friend auto operator<=>(const ConcreteState&, const ConcreteState&) = default;
  friend bool operator==(const ConcreteState&, const ConcreteState&) = default;
};

struct ConcreteStateHash {
  std::size_t operator()(const ConcreteState& s) const noexcept;
};

Value eval(const Expr& e, std::span<const Value> vals);
bool eval(const Cond& c, std::span<const Value> vals);

ConcreteState initial_state(const Program& p);

/// Edges of a desugared program that can fire at `s`. Assertions never block.
std::vector<EdgeId> enabled(const Program& p, const ConcreteState& s);

bool is_enabled(const Program& p, const ConcreteState& s, EdgeId e);

/// All successors of firing `e` at `s`. Throws std::logic_error when `e` is
/// not enabled at `s`.
std::vector<ConcreteState> concrete_step(const Program& p, const ConcreteState& s, EdgeId e);

/// True when `e` is an assertion whose condition is false at `s`.
bool violates_assert(const Program& p, const ConcreteState& s, EdgeId e);

}  // namespace absunf::lang
