#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "absunf/indep/independence.hpp"

namespace absunf::pes {

using EventId = std::uint32_t;
using Label = std::size_t;  // transformer index

/// Sorted, duplicate-free set of event ids.
using Config = std::vector<EventId>;

struct Event {
  EventId id = 0;
  Label label = 0;
  Config causes;  // immediate causes, the maximal events of the history
  Config local;   // [e], including the event itself
  bool cutoff = false;

  std::size_t depth() const { return local.size(); }
};

/// Thrown when an enumeration would exceed its configured cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Labelled prime event structure over transformer labels. Direct conflict
/// between two events is intrinsic to the pair (dependent labels, neither
/// causes the other) and is computed on demand; hereditary conflict is
/// closed over causes on query. Events are unique by (label, causes).
class Pes {
 public:
  Pes() = default;
  explicit Pes(indep::IndepRelation r) : r_(std::move(r)) {}

  struct Added {
    EventId id;
    bool duplicate;
  };

  /// Adds the event (label, history). `history` must be a configuration.
  Added add_event(Label label, const Config& history);
  std::optional<EventId> find(Label label, const Config& history) const;

  std::size_t size() const { return events_.size(); }
  const Event& event(EventId e) const { return events_.at(e); }
  const std::vector<Event>& events() const { return events_; }
  const indep::IndepRelation& relation() const { return r_; }

  void set_cutoff(EventId e, bool on = true) { events_.at(e).cutoff = on; }

  /// a < b
  bool causes(EventId a, EventId b) const;
  bool direct_conflict(EventId a, EventId b) const;
  bool conflict(EventId a, EventId b) const;

  bool is_configuration(const Config& c) const;
  const Config& local_config(EventId e) const { return events_.at(e).local; }
  /// <-maximal events of `c`.
  Config maximal(const Config& c) const;
  /// Closure of `c` under causes.
  Config closure(const Config& c) const;

  /// Events of `c` in an order compatible with causality (ascending id).
  std::vector<EventId> one_sort(const Config& c) const;
  /// Label sequences of all topological sorts. Throws ResourceError past `cap`.
  std::vector<std::vector<Label>> interleavings(const Config& c, std::size_t cap = 5040) const;
  /// Every topological sort of `c` as event sequences.
  std::vector<std::vector<EventId>> linearisations(const Config& c, std::size_t cap = 5040) const;

  /// All inclusion-maximal configurations. Throws ResourceError past `cap`.
  std::vector<Config> maximal_configurations(std::size_t cap = 100000) const;
  /// All configurations. Throws ResourceError past `cap`.
  std::vector<Config> configurations(std::size_t cap = 100000) const;

  /// Unordered direct-conflict pairs a < b.
  std::vector<std::pair<EventId, EventId>> direct_conflicts() const;

  /// Debug check of the structural axioms; throws std::logic_error.
  void check_axioms() const;

 private:
  indep::IndepRelation r_;
  std::vector<Event> events_;
  std::map<std::pair<Label, Config>, EventId> index_;
};

/// Prefix order, matching events by (label, immediate causes).
bool is_prefix(const Pes& a, const Pes& b);

/// The event of `b` matching each event of `a`, or nullopt if some event
/// has no match.
std::optional<std::vector<EventId>> match_events(const Pes& a, const Pes& b);

Config insert(Config c, EventId e);
bool subset(const Config& a, const Config& b);

}  // namespace absunf::pes
