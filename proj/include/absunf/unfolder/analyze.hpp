#pragma once

#include <memory>
#include <string>
#include <vector>

#include "absunf/unfolder/unfolder.hpp"

namespace absunf::unfolder {

/// Independent pairs of global transformers that do not commute once each
/// is composed after its thread's local analysis, over `samples`. With
/// `tla` null this is the plain weak-independence check.
std::vector<indep::Violation<AbsElement>> check_respects_independence(const lang::Program& p,
                                                                       const indep::Partition& part,
                                                                       const ThreadLocalAnalysis* tla,
                                                                       const indep::IndepRelation& r,
                                                                       const std::vector<AbsElement>& samples);

/// Breadth-first sample of the collapsed reach: at most `cap` elements, at
/// most `depth` steps from the initial element.
std::vector<AbsElement> sample_reach(const CollapsedInstance& in, std::size_t depth, std::size_t cap);

struct AnalysisOptions {
  indep::Mode mode = indep::Mode::heap;
  UnfoldOptions unfold;
  std::size_t sample_depth = 4;
  std::size_t sample_cap = 500;
};

struct Analysis {
  std::shared_ptr<const lang::Program> program;  // desugared
  indep::IndepRelation relation;
  std::size_t respect_violations = 0;
  bool cutoffs_downgraded = false;
  std::string diagnostic;
  UnfoldResult result;
};

/// Desugars, builds the relation for `opts.mode`, validates it on a reach
/// sample and unfolds. Cutoffs are switched off with a diagnostic when the
/// sample shows a violation.
Analysis analyze(const lang::Program& source, const AnalysisOptions& opts);

}  // namespace absunf::unfolder
