#include "absunf/pes/pes.hpp"

#include <algorithm>
#include <functional>

namespace absunf::pes {

Config insert(Config c, EventId e) {
  auto it = std::lower_bound(c.begin(), c.end(), e);
  if (it == c.end() || *it != e) c.insert(it, e);
  return c;
}

bool subset(const Config& a, const Config& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

Pes::Added Pes::add_event(Label label, const Config& history) {
  if (!is_configuration(history)) throw std::invalid_argument("event history is not a configuration");
  if (label >= r_.transformer_count()) throw std::invalid_argument("event label out of range");
  Config max = maximal(history);
  if (auto it = index_.find({label, max}); it != index_.end()) return {it->second, true};
  Event e;
  e.id = static_cast<EventId>(events_.size());
  e.label = label;
  e.causes = max;
  e.local = insert(history, e.id);
  index_.emplace(std::make_pair(label, std::move(max)), e.id);
  events_.push_back(std::move(e));
  return {events_.back().id, false};
}

std::optional<EventId> Pes::find(Label label, const Config& history) const {
  auto it = index_.find({label, maximal(history)});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Pes::causes(EventId a, EventId b) const {
  if (a == b) return false;
  const auto& l = events_.at(b).local;
  return std::binary_search(l.begin(), l.end(), a);
}

bool Pes::direct_conflict(EventId a, EventId b) const {
  if (a == b) return false;
  if (r_.independent(events_.at(a).label, events_.at(b).label)) return false;
  return !causes(a, b) && !causes(b, a);
}

bool Pes::conflict(EventId a, EventId b) const {
  for (EventId x : events_.at(a).local)
    for (EventId y : events_.at(b).local)
      if (direct_conflict(x, y)) return true;
  return false;
}

bool Pes::is_configuration(const Config& c) const {
  if (!std::is_sorted(c.begin(), c.end()) || std::adjacent_find(c.begin(), c.end()) != c.end())
    throw std::invalid_argument("configuration must be a sorted set");
  for (EventId e : c) {
    if (e >= events_.size()) throw std::invalid_argument("unknown event id");
    for (EventId x : events_[e].causes)
      if (!std::binary_search(c.begin(), c.end(), x)) return false;
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (direct_conflict(c[i], c[j])) return false;
  return true;
}

Config Pes::maximal(const Config& c) const {
  // In a causally closed set every non-maximal event is an immediate cause
  // of some member.
  bool closed = true;
  std::vector<EventId> covered;
  for (EventId e : c)
    for (EventId x : events_.at(e).causes) {
      if (!std::binary_search(c.begin(), c.end(), x)) closed = false;
      covered.push_back(x);
    }
  Config out;
  if (closed) {
    std::sort(covered.begin(), covered.end());
    std::set_difference(c.begin(), c.end(), covered.begin(), covered.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  for (EventId e : c) {
    bool is_max = true;
    for (EventId f : c)
      if (f > e && causes(e, f)) {
        is_max = false;
        break;
      }
    if (is_max) out.push_back(e);
  }
  return out;
}

Config Pes::closure(const Config& c) const {
  Config out;
  for (EventId e : c) {
    Config merged;
    const auto& l = events_.at(e).local;
    std::set_union(out.begin(), out.end(), l.begin(), l.end(), std::back_inserter(merged));
    out = std::move(merged);
  }
  return out;
}

std::vector<EventId> Pes::one_sort(const Config& c) const { return c; }

std::vector<std::vector<EventId>> Pes::linearisations(const Config& c, std::size_t cap) const {
  std::vector<std::vector<EventId>> out;
  std::vector<EventId> seq;
  std::vector<bool> used(c.size(), false);
  std::function<void()> rec = [&]() {
    if (seq.size() == c.size()) {
      if (out.size() >= cap) throw ResourceError("interleaving cap exceeded");
      out.push_back(seq);
      return;
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (used[i]) continue;
      bool ready = true;
      for (EventId x : events_[c[i]].causes)
        if (std::find(seq.begin(), seq.end(), x) == seq.end()) {
          ready = false;
          break;
        }
      if (!ready) continue;
      used[i] = true;
      seq.push_back(c[i]);
      rec();
      seq.pop_back();
      used[i] = false;
    }
  };
  rec();
  return out;
}

std::vector<std::vector<Label>> Pes::interleavings(const Config& c, std::size_t cap) const {
  std::vector<std::vector<Label>> out;
  for (const auto& seq : linearisations(c, cap)) {
    std::vector<Label> labels;
    for (EventId e : seq) labels.push_back(events_[e].label);
    out.push_back(std::move(labels));
  }
  return out;
}

namespace {

// Backtracking over events in id order, which is a topological order.
struct ConfigSearch {
  const Pes& pes;
  std::size_t cap;
  bool only_maximal;
  std::vector<Config> out;
  Config current;

  bool addable(EventId e) const {
    for (EventId x : pes.event(e).causes)
      if (!std::binary_search(current.begin(), current.end(), x)) return false;
    for (EventId x : current)
      if (pes.direct_conflict(x, e)) return false;
    return true;
  }

  void run(EventId next) {
    if (next == pes.size()) {
      if (only_maximal) {
        for (EventId e = 0; e < pes.size(); ++e)
          if (!std::binary_search(current.begin(), current.end(), e) && addable(e)) return;
      }
      if (out.size() >= cap) throw ResourceError("configuration cap exceeded");
      out.push_back(current);
      return;
    }
    if (addable(next)) {
      current.push_back(next);
      run(next + 1);
      current.pop_back();
    }
    run(next + 1);
  }
};

}  // namespace

std::vector<Config> Pes::maximal_configurations(std::size_t cap) const {
  ConfigSearch s{*this, cap, true, {}, {}};
  s.run(0);
  return s.out;
}

std::vector<Config> Pes::configurations(std::size_t cap) const {
  ConfigSearch s{*this, cap, false, {}, {}};
  s.run(0);
  return s.out;
}

std::vector<std::pair<EventId, EventId>> Pes::direct_conflicts() const {
  std::vector<std::pair<EventId, EventId>> out;
  for (EventId a = 0; a < events_.size(); ++a)
    for (EventId b = a + 1; b < events_.size(); ++b)
      if (direct_conflict(a, b)) out.emplace_back(a, b);
  return out;
}

void Pes::check_axioms() const {
  for (const auto& e : events_) {
    for (EventId c : e.local)
      if (c > e.id) throw std::logic_error("cause created after its effect");
    if (!is_configuration(e.local)) throw std::logic_error("local configuration is not a configuration");
    if (maximal(e.local) != Config{e.id}) throw std::logic_error("event is not the maximum of its local configuration");
    Config hist(e.local.begin(), e.local.end() - 1);
    if (maximal(hist) != e.causes) throw std::logic_error("immediate causes differ from maximal history");
  }
  for (EventId a = 0; a < events_.size(); ++a) {
    if (conflict(a, a)) throw std::logic_error("self conflict");
    for (EventId b = 0; b < events_.size(); ++b) {
      if (conflict(a, b) != conflict(b, a)) throw std::logic_error("asymmetric conflict");
      if (causes(a, b) && causes(b, a)) throw std::logic_error("causality cycle");
    }
  }
}

std::optional<std::vector<EventId>> match_events(const Pes& a, const Pes& b) {
  std::vector<EventId> map;
  for (const auto& e : a.events()) {
    Config hist;
    for (EventId c : e.causes) hist.push_back(map[c]);
    std::sort(hist.begin(), hist.end());
    if (!b.is_configuration(b.closure(hist))) return std::nullopt;
    auto m = b.find(e.label, b.closure(hist));
    if (!m || b.event(*m).causes != hist) return std::nullopt;
    map.push_back(*m);
  }
  return map;
}

bool is_prefix(const Pes& a, const Pes& b) {
  auto map = match_events(a, b);
  if (!map) return false;
  for (EventId x = 0; x < a.size(); ++x)
    for (EventId y = 0; y < a.size(); ++y) {
      if (a.causes(x, y) != b.causes((*map)[x], (*map)[y])) return false;
      if (a.direct_conflict(x, y) != b.direct_conflict((*map)[x], (*map)[y])) return false;
    }
  return true;
}

}  // namespace absunf::pes
