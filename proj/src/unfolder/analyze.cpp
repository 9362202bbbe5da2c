#include "absunf/unfolder/analyze.hpp"

#include <unordered_set>

namespace absunf::unfolder {

std::vector<indep::Violation<AbsElement>> check_respects_independence(const lang::Program& p,
                                                                       const indep::Partition& part,
                                                                       const ThreadLocalAnalysis* tla,
                                                                       const indep::IndepRelation& r,
                                                                       const std::vector<AbsElement>& samples) {
  indep::IndepRelation globals(r.transformer_count(), r.mode());
  for (auto [f, g] : r.pairs())
    if (tla == nullptr || (!part.is_local[f] && !part.is_local[g])) globals.add(f, g);
  CollapsedInstance in(p, part, tla);
  return indep::check_weak_independence(in, globals, samples);
}

std::vector<AbsElement> sample_reach(const CollapsedInstance& in, std::size_t depth, std::size_t cap) {
  std::vector<AbsElement> out{in.initial()};
  std::unordered_set<AbsElement, domains::AbsElementHash> seen{in.initial()};
  std::size_t begin = 0;
  for (std::size_t k = 0; k < depth && out.size() < cap; ++k) {
    std::size_t end = out.size();
    for (std::size_t x = begin; x < end && out.size() < cap; ++x)
      for (std::size_t f = 0; f < in.transformer_count() && out.size() < cap; ++f) {
        if (!in.is_transformer(f)) continue;
        auto next = in.apply(f, out[x]);
        if (next.is_bottom() || !seen.insert(next).second) continue;
        out.push_back(std::move(next));
      }
    begin = end;
  }
  return out;
}

Analysis analyze(const lang::Program& source, const AnalysisOptions& opts) {
  Analysis a;
  a.program = std::make_shared<const lang::Program>(lang::desugar_mutexes(source));
  const auto& p = *a.program;
  a.relation = indep::build_independence(p, opts.mode);
  auto part = indep::classify_transformers(p, a.relation);
  UnfoldOptions uo = opts.unfold;
  if (uo.use_cutoffs) {
    std::unique_ptr<ThreadLocalAnalysis> tla;
    if (uo.use_tla) tla = std::make_unique<ThreadLocalAnalysis>(p, part, uo.widening_level);
    CollapsedInstance in(p, part, tla.get());
    auto samples = sample_reach(in, opts.sample_depth, opts.sample_cap);
    a.respect_violations = check_respects_independence(p, part, tla.get(), a.relation, samples).size();
    if (a.respect_violations > 0) {
      uo.use_cutoffs = false;
      a.cutoffs_downgraded = true;
      a.diagnostic = std::to_string(a.respect_violations) +
                     " sampled pairs do not commute under the relation; cutoffs disabled";
    }
  }
  a.result = unfold(a.program, a.relation, uo);
  return a;
}

}  // namespace absunf::unfolder
