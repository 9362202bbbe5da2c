#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "absunf/pes/pes.hpp"
#include "absunf/unfolder/tla.hpp"

namespace absunf::unfolder {

using pes::Config;
using pes::EventId;

enum class CutoffPolicy {
  strict,     // smaller local configuration required
  non_strict  // equal size also prunes; incomplete, kept for mutation tests
};

struct UnfoldOptions {
  bool use_tla = true;
  bool use_cutoffs = true;
  unsigned widening_level = 15;
  std::size_t event_cap = 20000;
  std::size_t config_cap = 200000;
  /// Candidates with |[e]| above this are not added (bounded unfolding).
  std::optional<std::size_t> max_depth;
  CutoffPolicy cutoff_policy = CutoffPolicy::strict;
  bool check_axioms = false;
};

/// Buckets of (state([e]), |[e]|) for non-cutoff events, keyed by edge.
class CutoffTable {
 public:
  explicit CutoffTable(CutoffPolicy policy = CutoffPolicy::strict) : policy_(policy) {}

  /// True when a stored entry for `label` covers `state` with a smaller
  /// depth. Otherwise records the pair and returns false.
  bool is_cutoff(pes::Label label, const AbsElement& state, std::size_t depth);
  std::size_t size() const;

 private:
  CutoffPolicy policy_;
  std::map<pes::Label, std::vector<std::pair<AbsElement, std::size_t>>> buckets_;
};

struct UnfoldStats {
  std::size_t events = 0;
  std::size_t cutoffs = 0;
  std::size_t configurations = 0;
  std::size_t expansions = 0;
  std::size_t tla_calls = 0;
  std::size_t tla_memo_hits = 0;
  std::size_t rejected = 0;         // candidates disabled at their own history
  std::size_t late_admissions = 0;  // admitted after a larger event
  std::size_t depth_pruned = 0;
  double seconds = 0;
};

struct UnfoldResult {
  std::shared_ptr<const lang::Program> program;  // desugared
  indep::Partition partition;
  UnfoldOptions options;
  pes::Pes pes;
  std::vector<AbsElement> event_state;  // state([e]) by event id
  std::map<Config, AbsElement> configs;  // every cutoff-free configuration found
  std::set<AssertId> warnings;
  UnfoldStats stats;
  bool complete = true;
  std::string incomplete_reason;

  const AbsElement& state(const Config& c) const { return configs.at(c); }
  std::size_t cutoff_count() const { return stats.cutoffs; }
};

/// Removes independent maximal events from `c` until every maximal event is
/// dependent with `f`.
Config mkevent(const pes::Pes& pes, pes::Label f, const Config& c);

/// Refused when cutoffs are requested on a relation marked as violated.
class UnfoldRefused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Builds the abstract unfolding of a desugared program. Events are admitted
/// in order of |[e]|; configurations are enumerated explicitly.
UnfoldResult unfold(std::shared_ptr<const lang::Program> p, const indep::IndepRelation& r, const UnfoldOptions& opts);

/// f ∘ tla(thread of f), or plain f without thread-local analysis.
AbsElement collapsed_apply(const UnfoldResult& res, const ThreadLocalAnalysis* tla, lang::EdgeId f,
                           const AbsElement& d);

/// Meet over the states of all interleavings of `c`, each folded from d0
/// through the collapsed transformers.
AbsElement state_by_interleavings(const UnfoldResult& res, const ThreadLocalAnalysis* tla, const Config& c,
                                  std::size_t cap = 5040);

/// Element covering every local continuation of `state(c)`: the
/// thread-local fixpoints of all threads applied in turn.
AbsElement cover(const UnfoldResult& res, const ThreadLocalAnalysis* tla, const AbsElement& state);

}  // namespace absunf::unfolder
