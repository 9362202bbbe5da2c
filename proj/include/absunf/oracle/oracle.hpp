#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include <omp.h>

#include "absunf/unfolder/unfolder.hpp"

namespace absunf::oracle {

using lang::ConcreteState;
using pes::Config;

struct ReachCaps {
  std::size_t max_states = 200000;
};

struct Violation {
  lang::AssertId assert_id = 0;
  std::vector<lang::EdgeId> run;  // edges from the initial state, ending with the assertion
};

struct ReachReport {
  std::vector<ConcreteState> states;  // sorted
  std::map<lang::AssertId, std::vector<lang::EdgeId>> violated;  // shortest witness per assertion
  bool truncated = false;
};

/// Breadth-first enumeration of the interleaving semantics of a desugared
/// program. Exact unless `truncated`.
ReachReport enumerate_reach_concrete(const lang::Program& p, const ReachCaps& caps = {});

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-bottom elements reachable with at most `depth` transformer
/// applications from the initial element, without duplicates, in
/// discovery order.
template <domains::AnalysisInstance I>
std::vector<typename I::Element> enumerate_reach_abstract(const I& in, std::size_t depth, std::size_t cap = 100000) {
  using E = typename I::Element;
  std::vector<E> out{in.initial()};
  std::unordered_multimap<std::size_t, std::size_t> index{{in.hash(in.initial()), 0}};
  std::size_t layer_begin = 0;
  for (std::size_t k = 0; k < depth; ++k) {
    std::size_t layer_end = out.size();
    for (std::size_t x = layer_begin; x < layer_end; ++x) {
      for (std::size_t f = 0; f < in.transformer_count(); ++f) {
        E next = in.apply(f, out[x]);
        if (in.is_bottom(next)) continue;
        auto h = in.hash(next);
        bool dup = false;
        for (auto [it, end] = index.equal_range(h); it != end; ++it)
          if (out[it->second] == next) {
            dup = true;
            break;
          }
        if (dup) continue;
        if (out.size() >= cap) throw CapExceeded("abstract reach cap exceeded");
        index.emplace(h, out.size());
        out.push_back(std::move(next));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

struct CompletenessReport {
  std::vector<std::size_t> uncovered;  // indices into the element list
  std::size_t checked = 0;
};

/// Elements not covered (⊑) by the state of any configuration of the
/// prefix. Serial reference and OpenMP variant.
CompletenessReport check_d_complete_serial(const unfolder::UnfoldResult& res,
                                           const std::vector<domains::AbsElement>& elems);
CompletenessReport check_d_complete(const unfolder::UnfoldResult& res, const std::vector<domains::AbsElement>& elems);

struct SoundnessReport {
  std::vector<std::size_t> uncovered_states;  // indices into rr.states
  std::vector<lang::AssertId> missed_asserts;  // violated concretely, no warning
  std::size_t checked = 0;
};

/// Every reachable concrete state lies in the cover of some configuration
/// and every concretely violated assertion is among the warnings.
SoundnessReport check_sound_cover_serial(const unfolder::UnfoldResult& res, const ReachReport& rr);
SoundnessReport check_sound_cover(const unfolder::UnfoldResult& res, const ReachReport& rr);

/// Configurations of the prefix whose interleavings contain `run`. A sound
/// unfolding yields exactly one for every non-bottom run.
std::vector<Config> representatives(const unfolder::UnfoldResult& res, const std::vector<pes::Label>& run);

/// The configuration holding `run`, built event by event: each step takes
/// the event for (label, mkevent(label, C)). Throws std::runtime_error when
/// no such event exists.
Config representative_config(const unfolder::UnfoldResult& res, const std::vector<pes::Label>& run);

/// Non-bottom transformer sequences of the (collapsed) instance up to `len`.
template <domains::AnalysisInstance I>
std::vector<std::vector<pes::Label>> enumerate_runs(const I& in, std::size_t len, std::size_t cap = 200000) {
  std::vector<std::vector<pes::Label>> out;
  std::vector<pes::Label> run;
  auto rec = [&](auto&& self, const typename I::Element& d) -> void {
    if (!run.empty()) {
      if (out.size() >= cap) throw CapExceeded("run enumeration cap exceeded");
      out.push_back(run);
    }
    if (run.size() == len) return;
    for (std::size_t f = 0; f < in.transformer_count(); ++f) {
      auto next = in.apply(f, d);
      if (in.is_bottom(next)) continue;
      run.push_back(f);
      self(self, next);
      run.pop_back();
    }
  };
  rec(rec, in.initial());
  return out;
}

struct CommutationFailure {
  std::size_t state = 0;  // index into rr.states
  lang::EdgeId a = 0;
  lang::EdgeId b = 0;
  bool enabledness = false;  // otherwise the two orders reach different states
};

/// Checks both commutation clauses of statement independence for every
/// related pair at every reachable state.
std::vector<CommutationFailure> check_statement_commutation_serial(const lang::Program& p,
                                                                   const indep::IndepRelation& r,
                                                                   const ReachReport& rr);
std::vector<CommutationFailure> check_statement_commutation(const lang::Program& p, const indep::IndepRelation& r,
                                                            const ReachReport& rr);

/// Reference saturation of the unfolding definition (no thread-local
/// analysis, no cutoffs): repeatedly add every event <f, C> with f enabled
/// at state(C) and every maximal event of C dependent with f. Events are
/// bounded by `max_depth`.
template <domains::AnalysisInstance I>
pes::Pes saturate(const I& in, const indep::IndepRelation& r, std::size_t max_depth, std::size_t cap = 5000) {
  pes::Pes pes(r);
  auto state_of = [&](const Config& c) {
    auto d = in.initial();
    for (auto e : c) d = in.apply(pes.event(e).label, d);
    return d;
  };
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& c : pes.configurations()) {
      if (c.size() >= max_depth) continue;
      auto d = state_of(c);
      if (in.is_bottom(d)) continue;
      for (std::size_t f = 0; f < in.transformer_count(); ++f) {
        if (in.is_bottom(in.apply(f, d))) continue;
        bool all_dependent = true;
        for (auto e : pes.maximal(c))
          if (r.independent(f, pes.event(e).label)) all_dependent = false;
        if (!all_dependent || pes.find(f, c)) continue;
        if (pes.size() >= cap) throw CapExceeded("saturation cap exceeded");
        pes.add_event(f, c);
        grew = true;
      }
    }
  }
  return pes;
}

}  // namespace absunf::oracle
