#pragma once

#include <set>

#include "absunf/domains/abs_element.hpp"

namespace absunf::domains {

Interval eval(const lang::Expr& e, const Env& env);

/// Narrows `env` to the values that may satisfy `c`. Non-relational: each
/// comparison refines the variables under it one at a time, conjunctions
/// repeat until nothing changes (bounded), disjunctions join their branches.
/// Returns nullopt when no value can satisfy `c`.
std::optional<Env> refine(const lang::Cond& c, Env env);

struct ApplyResult {
  AbsElement out;
  bool may_fail = false;  // assertion edges only
};

/// Interval transformer of edge `e` of a desugared program. Entries whose
/// location for the edge's thread is not its source are dropped, the rest
/// are filtered and updated and then re-keyed at the target location.
/// Assertions keep their input unchanged and set `may_fail` when the
/// negated condition is satisfiable somewhere.
ApplyResult apply_edge(const lang::Program& p, lang::EdgeId e, const AbsElement& d);

inline AbsElement apply(const lang::Program& p, lang::EdgeId e, const AbsElement& d) {
  return apply_edge(p, e, d).out;
}

using ConcreteElement = std::set<lang::ConcreteState>;

/// Exact image of `s` under edge `e` of a desugared program.
ConcreteElement collecting_apply(const lang::Program& p, lang::EdgeId e, const ConcreteElement& s);

}  // namespace absunf::domains
