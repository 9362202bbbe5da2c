#include "absunf/unfolder/tla.hpp"

#include <set>

#include "absunf/domains/semantics.hpp"

namespace absunf::unfolder {

namespace {

constexpr int kDescendingRounds = 8;

}  // namespace

ThreadLocalAnalysis::ThreadLocalAnalysis(const lang::Program& p, const indep::Partition& part,
                                         unsigned widening_level)
    : p_(&p), w_(widening_level), memo_(p.thread_count()) {
  local_out_.resize(p.thread_count());
  local_asserts_.resize(p.thread_count());
  for (const auto& t : p.threads()) local_out_[t.id].resize(t.location_count);
  for (const auto& e : p.edges()) {
    if (!part.is_local[e.id]) continue;
    local_out_[e.thread][e.src].push_back(e.id);
    if (std::holds_alternative<lang::Assert>(e.stmt)) local_asserts_[e.thread].push_back(e.id);
  }
}

ThreadLocalAnalysis::Result ThreadLocalAnalysis::operator()(ThreadId i, const AbsElement& d) const {
  {
    std::lock_guard lock(mu_);
    ++invocations_;
    auto it = memo_[i].find(d);
    if (it != memo_[i].end()) {
      ++hits_;
      return it->second;
    }
  }
  Result r = compute(i, d);
  std::lock_guard lock(mu_);
  memo_[i].emplace(d, r);
  return r;
}

ThreadLocalAnalysis::Result ThreadLocalAnalysis::compute(ThreadId i, const AbsElement& d) const {
  Result res;
  if (d.is_bottom()) return res;
  const auto& out = local_out_.at(i);
  auto post = [&](const lang::LocVec& locs, const domains::Env& env) {
    AbsElement r;
    for (auto f : out[locs[i]]) {
      auto next = domains::apply(*p_, f, AbsElement::single(locs, env));
      for (const auto& [l2, e2] : next.entries()) r.join_in(l2, e2);
    }
    return r;
  };

  AbsElement acc = d;
  std::map<lang::LocVec, unsigned> changes;
  std::set<lang::LocVec> work;
  for (const auto& [locs, env] : d.entries()) work.insert(locs);
  while (!work.empty()) {
    lang::LocVec locs = *work.begin();
    work.erase(work.begin());
    const AbsElement succ = post(locs, *acc.find(locs));
    for (const auto& [l2, e2] : succ.entries()) {
      const domains::Env* old = acc.find(l2);
      if (old == nullptr) {
        acc.set(l2, e2);
        work.insert(l2);
        ++res.updates;
        continue;
      }
      domains::Env next = domains::join(*old, e2);
      if (next == *old) continue;
      if (changes[l2]++ >= w_) next = domains::widen(*old, next);
      acc.set(l2, std::move(next));
      work.insert(l2);
      ++res.updates;
    }
  }

  for (int round = 0; round < kDescendingRounds; ++round) {
    AbsElement next = d;
    for (const auto& [locs, env] : acc.entries()) {
      const AbsElement succ = post(locs, env);
      for (const auto& [l2, e2] : succ.entries()) next.join_in(l2, e2);
    }
    if (next == acc) break;
    acc = std::move(next);
  }

  for (auto f : local_asserts_[i])
    if (domains::apply_edge(*p_, f, acc).may_fail)
      res.may_fail.push_back(std::get<lang::Assert>(p_->edge(f).stmt).id);
  res.out = std::move(acc);
  return res;
}

AbsElement CollapsedInstance::apply(std::size_t f, const AbsElement& d) const {
  const auto id = static_cast<lang::EdgeId>(f);
  if (tla_ == nullptr) return domains::apply(*p_, id, d);
  if (part_->is_local[f] || d.is_bottom()) return {};
  return domains::apply(*p_, id, (*tla_)(p_->edge(id).thread, d).out);
}

}  // namespace absunf::unfolder
