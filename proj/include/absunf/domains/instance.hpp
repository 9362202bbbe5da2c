#pragma once

#include <concepts>
#include <functional>
#include <string>
#include <vector>

#include "absunf/domains/semantics.hpp"

namespace absunf::domains {

/// A lattice with an initial element and a finite family of bottom-strict,
/// monotone transformers, each owned by one thread. Transformers are named
/// by their index.
template <class I>
concept AnalysisInstance = requires(const I& in, const typename I::Element& d, std::size_t f) {
  { in.initial() } -> std::convertible_to<typename I::Element>;
  { in.transformer_count() } -> std::convertible_to<std::size_t>;
  { in.thread_of(f) } -> std::convertible_to<lang::ThreadId>;
  { in.apply(f, d) } -> std::convertible_to<typename I::Element>;
  { in.is_bottom(d) } -> std::convertible_to<bool>;
  { in.leq(d, d) } -> std::convertible_to<bool>;
  { in.meet(d, d) } -> std::convertible_to<typename I::Element>;
  { in.hash(d) } -> std::convertible_to<std::size_t>;
  { in.describe(d) } -> std::convertible_to<std::string>;
};

/// Interval analysis over the edges of a desugared program.
class IntervalInstance {
 public:
  using Element = AbsElement;

  explicit IntervalInstance(const lang::Program& p) : p_(&p), init_(initial_element(p)) {}
  IntervalInstance(const lang::Program& p, AbsElement init) : p_(&p), init_(std::move(init)) {}

  const lang::Program& program() const { return *p_; }
  Element initial() const { return init_; }
  std::size_t transformer_count() const { return p_->edge_count(); }
  lang::ThreadId thread_of(std::size_t f) const { return p_->edge(static_cast<lang::EdgeId>(f)).thread; }
  Element apply(std::size_t f, const Element& d) const { return domains::apply(*p_, static_cast<lang::EdgeId>(f), d); }
  bool is_bottom(const Element& d) const { return d.is_bottom(); }
  bool leq(const Element& a, const Element& b) const { return domains::leq(a, b); }
  Element meet(const Element& a, const Element& b) const { return domains::meet(a, b); }
  std::size_t hash(const Element& d) const { return d.hash(); }
  std::string describe(const Element& d) const { return to_string(*p_, d); }

 private:
  const lang::Program* p_;
  AbsElement init_;
};

/// Collecting semantics: sets of concrete states.
class CollectingInstance {
 public:
  using Element = ConcreteElement;

  explicit CollectingInstance(const lang::Program& p) : p_(&p), init_{lang::initial_state(p)} {}
  CollectingInstance(const lang::Program& p, ConcreteElement init) : p_(&p), init_(std::move(init)) {}

  Element initial() const { return init_; }
  std::size_t transformer_count() const { return p_->edge_count(); }
  lang::ThreadId thread_of(std::size_t f) const { return p_->edge(static_cast<lang::EdgeId>(f)).thread; }
  Element apply(std::size_t f, const Element& d) const {
    return collecting_apply(*p_, static_cast<lang::EdgeId>(f), d);
  }
  bool is_bottom(const Element& d) const { return d.empty(); }
  bool leq(const Element& a, const Element& b) const;
  Element meet(const Element& a, const Element& b) const;
  std::size_t hash(const Element& d) const;
  std::string describe(const Element& d) const;

 private:
  const lang::Program* p_;
  ConcreteElement init_;
};

/// An instance given by explicit functions on interval elements; used to
/// state small hand-written analyses that no program produces.
class FunctionInstance {
 public:
  using Element = AbsElement;
  using Fn = std::function<AbsElement(const AbsElement&)>;

  FunctionInstance(AbsElement init, std::vector<Fn> fns, std::vector<lang::ThreadId> threads)
      : init_(std::move(init)), fns_(std::move(fns)), threads_(std::move(threads)) {}

  Element initial() const { return init_; }
  std::size_t transformer_count() const { return fns_.size(); }
  lang::ThreadId thread_of(std::size_t f) const { return threads_.at(f); }
  Element apply(std::size_t f, const Element& d) const { return d.is_bottom() ? d : fns_.at(f)(d); }
  bool is_bottom(const Element& d) const { return d.is_bottom(); }
  bool leq(const Element& a, const Element& b) const { return domains::leq(a, b); }
  Element meet(const Element& a, const Element& b) const { return domains::meet(a, b); }
  std::size_t hash(const Element& d) const { return d.hash(); }
  std::string describe(const Element& d) const;

 private:
  AbsElement init_;
  std::vector<Fn> fns_;
  std::vector<lang::ThreadId> threads_;
};

static_assert(AnalysisInstance<IntervalInstance>);
static_assert(AnalysisInstance<CollectingInstance>);
static_assert(AnalysisInstance<FunctionInstance>);

}  // namespace absunf::domains
