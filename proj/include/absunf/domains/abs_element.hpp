#pragma once

#include <map>
#include <string>
#include <vector>

#include "absunf/domains/interval.hpp"
#include "absunf/lang/program.hpp"
#include "absunf/lang/semantics.hpp"

namespace absunf::domains {

using lang::LocVec;

/// One interval per program variable, indexed by VarId.
using Env = std::vector<Interval>;

bool leq(const Env& a, const Env& b);
Env join(const Env& a, const Env& b);
std::optional<Env> meet(const Env& a, const Env& b);
Env widen(const Env& a, const Env& b);

/// Bottom, or a disjunction of interval environments keyed by control state.
/// The map is ordered so iteration, printing and hashing are deterministic.
class AbsElement {
 public:
  using Map = std::map<LocVec, Env>;

  AbsElement() = default;  // bottom
  static AbsElement bottom() { return {}; }
  static AbsElement single(LocVec locs, Env env);

  bool is_bottom() const { return entries_.empty(); }
  const Map& entries() const { return entries_; }
  const Env* find(const LocVec& locs) const;
  std::size_t size() const { return entries_.size(); }

  /// Joins `env` into the entry at `locs`. Returns true if the element grew.
  bool join_in(const LocVec& locs, const Env& env);
  /// Overwrites the entry at `locs`.
  void set(const LocVec& locs, Env env) { entries_[locs] = std::move(env); }

  std::size_t hash() const;

  friend bool operator==(const AbsElement&, const AbsElement&) = default;

 private:
  Map entries_;
};

struct AbsElementHash {
  std::size_t operator()(const AbsElement& a) const { return a.hash(); }
};

/// Pointwise order: every entry of `a` exists in `b` with a smaller env.
/// Throws std::invalid_argument when envs differ in width.
bool leq(const AbsElement& a, const AbsElement& b);
AbsElement join(const AbsElement& a, const AbsElement& b);
AbsElement meet(const AbsElement& a, const AbsElement& b);
AbsElement widen(const AbsElement& a, const AbsElement& b);

/// Membership view of concretisation.
bool contains(const AbsElement& a, const lang::ConcreteState& s);

/// Abstraction of a single initial state.
AbsElement initial_element(const lang::Program& p);

std::string to_string(const lang::Program& p, const AbsElement& a);
std::string to_string(const lang::Program& p, const Env& env);

}  // namespace absunf::domains
