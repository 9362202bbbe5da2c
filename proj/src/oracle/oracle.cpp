#include "absunf/oracle/oracle.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "absunf/lang/semantics.hpp"

namespace absunf::oracle {

ReachReport enumerate_reach_concrete(const lang::Program& p, const ReachCaps& caps) {
  struct Node {
    ConcreteState s;
    std::size_t parent;
    lang::EdgeId via;
  };
  std::vector<Node> nodes;
  std::unordered_map<ConcreteState, std::size_t, lang::ConcreteStateHash> index;
  auto witness = [&](std::size_t n, lang::EdgeId last) {
    std::vector<lang::EdgeId> run{last};
    for (; n != 0; n = nodes[n].parent) run.push_back(nodes[n].via);
    std::reverse(run.begin(), run.end());
    return run;
  };

  ReachReport out;
  auto s0 = lang::initial_state(p);
  index.emplace(s0, 0);
  nodes.push_back(Node{std::move(s0), 0, 0});
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const ConcreteState s = nodes[n].s;
    for (auto e : lang::enabled(p, s)) {
      if (lang::violates_assert(p, s, e)) {
        auto id = std::get<lang::Assert>(p.edge(e).stmt).id;
        if (!out.violated.count(id)) out.violated.emplace(id, witness(n, e));
      }
      for (auto& next : lang::concrete_step(p, s, e)) {
        if (index.count(next)) continue;
        if (nodes.size() >= caps.max_states) {
          out.truncated = true;
          continue;
        }
        index.emplace(next, nodes.size());
        nodes.push_back(Node{std::move(next), n, e});
      }
    }
  }
  out.states.reserve(nodes.size());
  for (auto& nd : nodes) out.states.push_back(std::move(nd.s));
  std::sort(out.states.begin(), out.states.end());
  return out;
}

namespace {

std::vector<const domains::AbsElement*> config_states(const unfolder::UnfoldResult& res) {
  std::vector<const domains::AbsElement*> out;
  out.reserve(res.configs.size());
  for (const auto& [c, st] : res.configs) out.push_back(&st);
  return out;
}

bool covered(const std::vector<const domains::AbsElement*>& states, const domains::AbsElement& d) {
  if (d.is_bottom()) return true;
  for (const auto* st : states)
    if (domains::leq(d, *st)) return true;
  return false;
}

std::vector<domains::AbsElement> covers(const unfolder::UnfoldResult& res) {
  std::optional<unfolder::ThreadLocalAnalysis> tla;
  if (res.options.use_tla) tla.emplace(*res.program, res.partition, res.options.widening_level);
  std::vector<domains::AbsElement> out;
  out.reserve(res.configs.size());
  for (const auto& [c, st] : res.configs) out.push_back(unfolder::cover(res, tla ? &*tla : nullptr, st));
  return out;
}

bool contained(const std::vector<domains::AbsElement>& cov, const ConcreteState& s) {
  for (const auto& d : cov)
    if (domains::contains(d, s)) return true;
  return false;
}

std::vector<lang::AssertId> missed(const unfolder::UnfoldResult& res, const ReachReport& rr) {
  std::vector<lang::AssertId> out;
  for (const auto& [id, run] : rr.violated)
    if (!res.warnings.count(id)) out.push_back(id);
  return out;
}

}  // namespace

CompletenessReport check_d_complete_serial(const unfolder::UnfoldResult& res,
                                           const std::vector<domains::AbsElement>& elems) {
  auto states = config_states(res);
  CompletenessReport out;
  for (std::size_t k = 0; k < elems.size(); ++k) {
    ++out.checked;
    if (!covered(states, elems[k])) out.uncovered.push_back(k);
  }
  return out;
}

CompletenessReport check_d_complete(const unfolder::UnfoldResult& res, const std::vector<domains::AbsElement>& elems) {
  auto states = config_states(res);
  std::vector<unsigned char> hit(elems.size(), 0);
  const long n = static_cast<long>(elems.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long k = 0; k < n; ++k) hit[static_cast<std::size_t>(k)] = covered(states, elems[static_cast<std::size_t>(k)]);
  CompletenessReport out;
  out.checked = elems.size();
  for (std::size_t k = 0; k < elems.size(); ++k)
    if (!hit[k]) out.uncovered.push_back(k);
  return out;
}

SoundnessReport check_sound_cover_serial(const unfolder::UnfoldResult& res, const ReachReport& rr) {
  auto cov = covers(res);
  SoundnessReport out;
  for (std::size_t k = 0; k < rr.states.size(); ++k) {
    ++out.checked;
    if (!contained(cov, rr.states[k])) out.uncovered_states.push_back(k);
  }
  out.missed_asserts = missed(res, rr);
  return out;
}

SoundnessReport check_sound_cover(const unfolder::UnfoldResult& res, const ReachReport& rr) {
  auto cov = covers(res);
  std::vector<unsigned char> hit(rr.states.size(), 0);
  const long n = static_cast<long>(rr.states.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long k = 0; k < n; ++k) hit[static_cast<std::size_t>(k)] = contained(cov, rr.states[static_cast<std::size_t>(k)]);
  SoundnessReport out;
  out.checked = rr.states.size();
  for (std::size_t k = 0; k < hit.size(); ++k)
    if (!hit[k]) out.uncovered_states.push_back(k);
  out.missed_asserts = missed(res, rr);
  return out;
}

namespace {

// Is `run` the label sequence of some topological sort of c? Events with
// equal labels are causally ordered, so at most one minimal candidate fits.
bool has_interleaving(const pes::Pes& pes, const Config& c, const std::vector<pes::Label>& run) {
  if (c.size() != run.size()) return false;
  std::vector<bool> done(c.size(), false);
  for (auto f : run) {
    bool found = false;
    for (std::size_t k = 0; k < c.size() && !found; ++k) {
      if (done[k] || pes.event(c[k]).label != f) continue;
      bool ready = true;
      for (std::size_t j = 0; j < c.size() && ready; ++j)
        if (!done[j] && j != k && pes.causes(c[j], c[k])) ready = false;
      if (ready) done[k] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::vector<Config> representatives(const unfolder::UnfoldResult& res, const std::vector<pes::Label>& run) {
  std::vector<Config> out;
  for (const auto& [c, st] : res.configs)
    if (has_interleaving(res.pes, c, run)) out.push_back(c);
  return out;
}

Config representative_config(const unfolder::UnfoldResult& res, const std::vector<pes::Label>& run) {
  Config c;
  for (auto f : run) {
    auto e = res.pes.find(f, unfolder::mkevent(res.pes, f, c));
    if (!e) throw std::runtime_error("no representative: missing event for transformer " + std::to_string(f));
    c = pes::insert(c, *e);
  }
  return c;
}

namespace {

std::set<ConcreteState> post(const lang::Program& p, const std::set<ConcreteState>& from, lang::EdgeId e) {
  std::set<ConcreteState> out;
  for (const auto& s : from)
    if (lang::is_enabled(p, s, e))
      for (auto& n : lang::concrete_step(p, s, e)) out.insert(std::move(n));
  return out;
}

bool commute_at(const lang::Program& p, const ConcreteState& s, lang::EdgeId a, lang::EdgeId b,
                CommutationFailure& out) {
  // enabledness: firing one never changes whether the other is enabled
  for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
    if (!lang::is_enabled(p, s, x)) continue;
    bool before = lang::is_enabled(p, s, y);
    for (const auto& n : lang::concrete_step(p, s, x))
      if (lang::is_enabled(p, n, y) != before) {
        out.enabledness = true;
        return false;
      }
  }
  if (!lang::is_enabled(p, s, a) || !lang::is_enabled(p, s, b)) return true;
  const std::set<ConcreteState> one{s};
  if (post(p, post(p, one, a), b) != post(p, post(p, one, b), a)) {
    out.enabledness = false;
    return false;
  }
  return true;
}

}  // namespace

std::vector<CommutationFailure> check_statement_commutation_serial(const lang::Program& p,
                                                                   const indep::IndepRelation& r,
                                                                   const ReachReport& rr) {
  std::vector<CommutationFailure> out;
  for (auto [a, b] : r.pairs())
    for (std::size_t k = 0; k < rr.states.size(); ++k) {
      CommutationFailure f{k, static_cast<lang::EdgeId>(a), static_cast<lang::EdgeId>(b), false};
      if (!commute_at(p, rr.states[k], f.a, f.b, f)) out.push_back(f);
    }
  return out;
}

std::vector<CommutationFailure> check_statement_commutation(const lang::Program& p, const indep::IndepRelation& r,
                                                            const ReachReport& rr) {
  const auto pairs = r.pairs();
  const std::size_t m = rr.states.size();
  const long total = static_cast<long>(pairs.size() * m);
  std::vector<std::vector<std::pair<long, CommutationFailure>>> found(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel for schedule(dynamic, 64)
  for (long job = 0; job < total; ++job) {
    auto [a, b] = pairs[static_cast<std::size_t>(job) / m];
    std::size_t k = static_cast<std::size_t>(job) % m;
    CommutationFailure f{k, static_cast<lang::EdgeId>(a), static_cast<lang::EdgeId>(b), false};
    if (!commute_at(p, rr.states[k], f.a, f.b, f))
      found[static_cast<std::size_t>(omp_get_thread_num())].emplace_back(job, f);
  }
  std::vector<std::pair<long, CommutationFailure>> all;
  for (auto& part : found) all.insert(all.end(), part.begin(), part.end());
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<CommutationFailure> out;
  for (auto& x : all) out.push_back(x.second);
  return out;
}

}  // namespace absunf::oracle
