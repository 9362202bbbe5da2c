#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "absunf/domains/instance.hpp"
#include "absunf/indep/independence.hpp"

namespace absunf::unfolder {

using domains::AbsElement;
using lang::AssertId;
using lang::ThreadId;

/// Worklist fixpoint of one thread's local transformers. Joins per control
/// state, widens a control state once it has changed `widening_level`
/// times, then runs a few descending rounds d ⊔ post(x) to recover bounds
/// lost by widening. Results are memoised per (thread, element).
class ThreadLocalAnalysis {
 public:
  struct Result {
    AbsElement out;
    std::vector<AssertId> may_fail;  // local assertions not entailed by `out`
    unsigned updates = 0;            // changed entries during the ascending phase
  };

  ThreadLocalAnalysis(const lang::Program& p, const indep::Partition& part, unsigned widening_level);

  /// Memoised and safe to call concurrently.
  Result operator()(ThreadId i, const AbsElement& d) const;
  /// Uncached computation.
  Result compute(ThreadId i, const AbsElement& d) const;

  std::size_t invocations() const { return invocations_; }
  std::size_t memo_hits() const { return hits_; }

 private:
  const lang::Program* p_;
  unsigned w_;
  // local edges by thread and source location
  std::vector<std::vector<std::vector<lang::EdgeId>>> local_out_;
  std::vector<std::vector<lang::EdgeId>> local_asserts_;
  mutable std::mutex mu_;
  mutable std::vector<std::unordered_map<AbsElement, Result, domains::AbsElementHash>> memo_;
  mutable std::size_t invocations_ = 0;
  mutable std::size_t hits_ = 0;
};

/// The instance unfolded when thread-local analysis is on: each global edge
/// f of thread i becomes f ∘ tla(i). Local edges are not transformers of
/// this instance and map everything to bottom, so edge ids remain valid
/// transformer indices. With `tla` null this is the plain interval instance.
class CollapsedInstance {
 public:
  using Element = AbsElement;

  CollapsedInstance(const lang::Program& p, const indep::Partition& part, const ThreadLocalAnalysis* tla)
      : p_(&p), part_(&part), tla_(tla), init_(domains::initial_element(p)) {}

  Element initial() const { return init_; }
  std::size_t transformer_count() const { return p_->edge_count(); }
  ThreadId thread_of(std::size_t f) const { return p_->edge(static_cast<lang::EdgeId>(f)).thread; }
  Element apply(std::size_t f, const Element& d) const;
  bool is_bottom(const Element& d) const { return d.is_bottom(); }
  bool leq(const Element& a, const Element& b) const { return domains::leq(a, b); }
  Element meet(const Element& a, const Element& b) const { return domains::meet(a, b); }
  std::size_t hash(const Element& d) const { return d.hash(); }
  std::string describe(const Element& d) const { return domains::to_string(*p_, d); }

  bool uses_tla() const { return tla_ != nullptr; }
  bool is_transformer(std::size_t f) const { return tla_ == nullptr || !part_->is_local[f]; }

 private:
  const lang::Program* p_;
  const indep::Partition* part_;
  const ThreadLocalAnalysis* tla_;
  AbsElement init_;
};

static_assert(domains::AnalysisInstance<CollapsedInstance>);

}  // namespace absunf::unfolder
