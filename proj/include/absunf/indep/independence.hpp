#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <omp.h>

#include "absunf/domains/instance.hpp"
#include "absunf/lang/program.hpp"

namespace absunf::indep {

using lang::EdgeId;
using lang::ThreadId;
using lang::VarId;

/// Global variables an edge may read and write.
struct ActionSet {
  std::set<VarId> reads;
  std::set<VarId> writes;

  friend bool operator==(const ActionSet&, const ActionSet&) = default;
};

ActionSet actions_of(const lang::Program& p, const lang::Edge& e);

enum class Mode { sync, heap };

const char* mode_name(Mode m);

/// Symmetric, irreflexive relation over transformer indices 0..n-1.
class IndepRelation {
 public:
  IndepRelation() = default;
  IndepRelation(std::size_t n, Mode mode) : n_(n), mode_(mode), bits_(n * n, 0) {}

  std::size_t transformer_count() const { return n_; }
  Mode mode() const { return mode_; }

  /// Relates f and g both ways. Throws std::invalid_argument when f == g.
  void add(std::size_t f, std::size_t g);
  bool independent(std::size_t f, std::size_t g) const { return bits_[f * n_ + g] != 0; }
  bool dependent(std::size_t f, std::size_t g) const { return !independent(f, g); }

  /// Unordered pairs f < g.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  std::size_t pair_count() const { return pairs_; }

  /// Set when a sample check found two related transformers that do not
  /// commute; the unfolder refuses cutoffs on such a relation.
  bool violated() const { return violated_; }
  void mark_violated() { violated_ = true; }

 private:
  std::size_t n_ = 0;
  Mode mode_ = Mode::heap;
  std::vector<unsigned char> bits_;
  std::size_t pairs_ = 0;
  bool violated_ = false;
};

/// Cross-thread edges whose action sets do not conflict. In sync mode only
/// mutex ghost variables are considered.
IndepRelation build_independence(const lang::Program& p, Mode mode);

struct Partition {
  std::vector<bool> is_local;                  // by transformer
  std::vector<std::vector<std::size_t>> local;   // by thread
  std::vector<std::vector<std::size_t>> global;  // by thread
};

/// Local transformers are independent of every transformer of every other
/// thread; all others are global.
Partition classify_transformers(const std::vector<ThreadId>& thread_of, std::size_t threads, const IndepRelation& r);
Partition classify_transformers(const lang::Program& p, const IndepRelation& r);

template <class E>
struct Violation {
  std::size_t f = 0;
  std::size_t g = 0;
  std::size_t element = 0;  // index into the sample
  E lhs;                    // f(g(d))
  E rhs;                    // g(f(d))
  bool enabledness = false;  // strong clause failed, lhs/rhs still the two orders
};

namespace detail {

template <domains::AnalysisInstance I>
bool check_one(const I& in, std::size_t f, std::size_t g, std::size_t k, const typename I::Element& d, bool strong,
               Violation<typename I::Element>& out) {
  auto fd = in.apply(f, d), gd = in.apply(g, d);
  auto fgd = in.apply(f, gd), gfd = in.apply(g, fd);
  bool bad_enabled = false;
  if (strong) {
    // f(d) != bottom  ==>  (f(g(d)) != bottom <=> g(d) != bottom), and symmetrically
    if (!in.is_bottom(fd) && in.is_bottom(fgd) != in.is_bottom(gd)) bad_enabled = true;
    if (!in.is_bottom(gd) && in.is_bottom(gfd) != in.is_bottom(fd)) bad_enabled = true;
  }
  if (fgd == gfd && !bad_enabled) return false;
  out = Violation<typename I::Element>{f, g, k, std::move(fgd), std::move(gfd), bad_enabled};
  return true;
}

}  // namespace detail

/// Serial reference: every related pair against every sampled element.
template <domains::AnalysisInstance I>
std::vector<Violation<typename I::Element>> check_weak_independence_serial(
    const I& in, const IndepRelation& r, const std::vector<typename I::Element>& elems, bool strong = false) {
  std::vector<Violation<typename I::Element>> out;
  for (auto [f, g] : r.pairs()) {
    for (std::size_t k = 0; k < elems.size(); ++k) {
      Violation<typename I::Element> v;
      if (detail::check_one(in, f, g, k, elems[k], strong, v)) out.push_back(std::move(v));
    }
  }
  return out;
}

/// OpenMP variant; returns the same list in the same order as the serial one.
template <domains::AnalysisInstance I>
std::vector<Violation<typename I::Element>> check_weak_independence_parallel(
    const I& in, const IndepRelation& r, const std::vector<typename I::Element>& elems, bool strong = false) {
  const auto pairs = r.pairs();
  const long total = static_cast<long>(pairs.size() * elems.size());
  std::vector<std::vector<std::pair<long, Violation<typename I::Element>>>> found(
      static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel for schedule(dynamic, 16)
  for (long job = 0; job < total; ++job) {
    auto [f, g] = pairs[static_cast<std::size_t>(job) / elems.size()];
    std::size_t k = static_cast<std::size_t>(job) % elems.size();
    Violation<typename I::Element> v;
    if (detail::check_one(in, f, g, k, elems[k], strong, v))
      found[static_cast<std::size_t>(omp_get_thread_num())].emplace_back(job, std::move(v));
  }
  std::vector<std::pair<long, Violation<typename I::Element>>> all;
  for (auto& part : found)
    for (auto& x : part) all.push_back(std::move(x));
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Violation<typename I::Element>> out;
  for (auto& x : all) out.push_back(std::move(x.second));
  return out;
}

template <domains::AnalysisInstance I>
std::vector<Violation<typename I::Element>> check_weak_independence(const I& in, const IndepRelation& r,
                                                                    const std::vector<typename I::Element>& elems) {
  return check_weak_independence_parallel(in, r, elems);
}

/// Weak commutation plus the enabledness clause of full independence.
template <domains::AnalysisInstance I>
std::vector<Violation<typename I::Element>> check_independence(const I& in, const IndepRelation& r,
                                                               const std::vector<typename I::Element>& elems) {
  return check_weak_independence_parallel(in, r, elems, true);
}

}  // namespace absunf::indep
