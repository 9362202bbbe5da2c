#include "absunf/unfolder/unfolder.hpp"

#include <chrono>
#include <queue>

#include "absunf/domains/semantics.hpp"

namespace absunf::unfolder {

bool CutoffTable::is_cutoff(pes::Label label, const AbsElement& state, std::size_t depth) {
  auto& bucket = buckets_[label];
  for (const auto& [d, k] : bucket) {
    bool smaller = policy_ == CutoffPolicy::strict ? k < depth : k <= depth;
    if (smaller && domains::leq(state, d)) return true;
  }
  bucket.emplace_back(state, depth);
  return false;
}

std::size_t CutoffTable::size() const {
  std::size_t n = 0;
  for (const auto& [l, b] : buckets_) n += b.size();
  return n;
}

Config mkevent(const pes::Pes& pes, pes::Label f, const Config& c) {
  Config h = c;
  for (;;) {
    Config drop;
    for (EventId e : pes.maximal(h))
      if (pes.relation().independent(f, pes.event(e).label)) drop.push_back(e);
    if (drop.empty()) return h;
    Config rest;
    std::set_difference(h.begin(), h.end(), drop.begin(), drop.end(), std::back_inserter(rest));
    h = std::move(rest);
  }
}

AbsElement collapsed_apply(const UnfoldResult& res, const ThreadLocalAnalysis* tla, lang::EdgeId f,
                           const AbsElement& d) {
  CollapsedInstance in(*res.program, res.partition, res.options.use_tla ? tla : nullptr);
  return in.apply(f, d);
}

AbsElement state_by_interleavings(const UnfoldResult& res, const ThreadLocalAnalysis* tla, const Config& c,
                                  std::size_t cap) {
  CollapsedInstance in(*res.program, res.partition, res.options.use_tla ? tla : nullptr);
  std::optional<AbsElement> acc;
  for (const auto& seq : res.pes.interleavings(c, cap)) {
    AbsElement d = in.initial();
    for (auto f : seq) d = in.apply(f, d);
    acc = acc ? domains::meet(*acc, d) : d;
  }
  return acc ? *acc : in.initial();
}

AbsElement cover(const UnfoldResult& res, const ThreadLocalAnalysis* tla, const AbsElement& state) {
  if (!res.options.use_tla || tla == nullptr) return state;
  AbsElement d = state;
  for (ThreadId i = 0; i < res.program->thread_count(); ++i) d = (*tla)(i, d).out;
  return d;
}

namespace {

struct Item {
  std::size_t size;
  int kind;  // 0: expand a configuration, 1: admit a candidate event
  std::size_t seq;
  Config conf;
  pes::Label label = 0;

  bool operator>(const Item& o) const { return std::tie(size, kind, seq) > std::tie(o.size, o.kind, o.seq); }
};

class Unfolder {
 public:
  Unfolder(std::shared_ptr<const lang::Program> p, const indep::IndepRelation& r, const UnfoldOptions& opts)
      : cutoffs_(opts.cutoff_policy) {
    res_.program = std::move(p);
    res_.options = opts;
    res_.partition = indep::classify_transformers(*res_.program, r);
    res_.pes = pes::Pes(r);
    if (opts.use_tla) tla_ = std::make_unique<ThreadLocalAnalysis>(*res_.program, res_.partition, opts.widening_level);
    const auto& prog = *res_.program;
    candidates_.resize(prog.thread_count());
    for (const auto& e : prog.edges())
      if (!opts.use_tla || !res_.partition.is_local[e.id]) candidates_[e.thread].push_back(e.id);
  }

  UnfoldResult run() {
    auto start = std::chrono::steady_clock::now();
    add_config({}, domains::initial_element(*res_.program));
    while (!queue_.empty() && res_.complete) {
      Item it = queue_.top();
      queue_.pop();
      if (it.kind == 0)
        expand(it.conf);
      else
        admit(it.label, it.conf);
    }
    if (tla_) {
      res_.stats.tla_calls = tla_->invocations();
      res_.stats.tla_memo_hits = tla_->memo_hits();
    }
    res_.stats.events = res_.pes.size();
    res_.stats.configurations = res_.configs.size();
    res_.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res_.options.check_axioms) res_.pes.check_axioms();
    return std::move(res_);
  }

 private:
  AbsElement local_closure(ThreadId i, const AbsElement& d) {
    if (!tla_) return d;
    auto r = (*tla_)(i, d);
    for (auto a : r.may_fail) res_.warnings.insert(a);
    return r.out;
  }

  domains::ApplyResult step(pes::Label f, const AbsElement& d) {
    const auto& e = res_.program->edge(static_cast<lang::EdgeId>(f));
    auto r = domains::apply_edge(*res_.program, e.id, local_closure(e.thread, d));
    if (r.may_fail) res_.warnings.insert(std::get<lang::Assert>(e.stmt).id);
    return r;
  }

  void add_config(Config c, AbsElement state) {
    if (res_.configs.size() >= res_.options.config_cap) {
      stop("configuration cap reached");
      return;
    }
    auto [it, inserted] = res_.configs.emplace(c, std::move(state));
    if (!inserted) return;
    for (EventId e : c) containing_[e].push_back(&*it);
    queue_.push(Item{c.size() + 1, 0, seq_++, std::move(c)});
  }

  void stop(const char* why) {
    res_.complete = false;
    res_.incomplete_reason = why;
  }

  void expand(const Config& c) {
    ++res_.stats.expansions;
    const AbsElement& st = res_.configs.at(c);
    for (ThreadId i = 0; i < res_.program->thread_count(); ++i) {
      AbsElement local = local_closure(i, st);
      for (auto f : candidates_[i]) {
        auto r = domains::apply_edge(*res_.program, f, local);
        if (r.out.is_bottom()) continue;
        if (r.may_fail) res_.warnings.insert(std::get<lang::Assert>(res_.program->edge(f).stmt).id);
        Config h = mkevent(res_.pes, f, c);
        if (res_.options.max_depth && h.size() + 1 > *res_.options.max_depth) {
          ++res_.stats.depth_pruned;
          continue;
        }
        if (!seen_.emplace(f, h).second) continue;
        queue_.push(Item{h.size() + 1, 1, seq_++, std::move(h), f});
      }
    }
  }

  void admit(pes::Label f, const Config& h) {
    auto r = step(f, res_.configs.at(h));
    if (r.out.is_bottom()) {
      ++res_.stats.rejected;
      return;
    }
    if (res_.pes.size() >= res_.options.event_cap) {
      stop("event cap reached");
      return;
    }
    const std::size_t depth = h.size() + 1;
    if (depth < max_admitted_) ++res_.stats.late_admissions;
    max_admitted_ = std::max(max_admitted_, depth);

    EventId e = res_.pes.add_event(f, h).id;
    containing_.emplace_back();
    res_.event_state.push_back(r.out);
    if (res_.options.use_cutoffs && cutoffs_.is_cutoff(f, r.out, depth)) {
      res_.pes.set_cutoff(e);
      ++res_.stats.cutoffs;
      return;
    }
    // Every known configuration containing the history and compatible
    // with e grows by e. Collect first: add_config mutates the map.
    std::vector<std::pair<Config, const AbsElement*>> grow;
    auto consider = [&](const Config& c, const AbsElement& st) {
      if (!pes::subset(h, c)) return;
      bool clash = false;
      for (EventId x : c)
        if (res_.pes.direct_conflict(x, e)) {
          clash = true;
          break;
        }
      if (!clash) grow.emplace_back(c, &st);
    };
    if (h.empty()) {
      for (const auto& [c, st] : res_.configs) consider(c, st);
    } else {
      // scan the configurations holding the rarest history event
      EventId rare = h.front();
      for (EventId x : h)
        if (containing_[x].size() < containing_[rare].size()) rare = x;
      for (const auto* entry : containing_[rare]) consider(entry->first, entry->second);
    }
    for (auto& [c, st] : grow) {
      AbsElement next = c == h ? r.out : step(f, *st).out;
      add_config(pes::insert(c, e), std::move(next));
      if (!res_.complete) return;
    }
  }

  UnfoldResult res_;
  std::unique_ptr<ThreadLocalAnalysis> tla_;
  CutoffTable cutoffs_;
  std::vector<std::vector<pes::Label>> candidates_;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue_;
  std::set<std::pair<pes::Label, Config>> seen_;
  std::vector<std::vector<const std::pair<const Config, AbsElement>*>> containing_;  // by event
  std::size_t seq_ = 0;
  std::size_t max_admitted_ = 0;
};

}  // namespace

UnfoldResult unfold(std::shared_ptr<const lang::Program> p, const indep::IndepRelation& r, const UnfoldOptions& opts) {
  if (!p->desugared()) throw std::invalid_argument("unfold requires a desugared program");
  if (opts.use_cutoffs && r.violated())
    throw UnfoldRefused("cutoffs need a weak independence; the relation has known violations");
  if (opts.event_cap == 0 || opts.config_cap == 0) throw std::invalid_argument("caps must be positive");
  return Unfolder(std::move(p), r, opts).run();
}

}  // namespace absunf::unfolder
