#include <random>

#include "doctest.h"

#include "absunf/pes/pes.hpp"

using namespace absunf;
using namespace absunf::pes;

namespace {

// Relation over n labels where every pair is independent except `dep`.
indep::IndepRelation all_but(std::size_t n, std::vector<std::pair<Label, Label>> dep) {
  indep::IndepRelation r(n, indep::Mode::heap);
  for (Label a = 0; a < n; ++a)
    for (Label b = a + 1; b < n; ++b)
      if (std::find(dep.begin(), dep.end(), std::make_pair(a, b)) == dep.end()) r.add(a, b);
  return r;
}

// Nine events numbered from 0; event k carries label k.
// 1 < 2; 4 < 5 < 6; 4,7 < 8; 1 # 4, 1 # 7, 1 # 9, 4 # 9; 3 independent of all.
Pes nine_events() {
  Pes p(all_but(9, {{0, 1}, {0, 3}, {0, 6}, {0, 8}, {3, 4}, {4, 5}, {3, 7}, {6, 7}, {3, 8}}));
  p.add_event(0, {});
  p.add_event(1, {0});
  p.add_event(2, {});
  p.add_event(3, {});
  p.add_event(4, {3});
  p.add_event(5, {3, 4});
  p.add_event(6, {});
  p.add_event(7, {3, 6});
  p.add_event(8, {});
  return p;
}

}  // namespace

TEST_CASE("adding events") {
  Pes p(all_but(2, {{0, 1}}));
  auto a = p.add_event(0, {});
  CHECK_FALSE(a.duplicate);
  CHECK(p.event(a.id).causes.empty());
  CHECK(p.event(a.id).depth() == 1);
  auto b = p.add_event(1, {a.id});
  CHECK(p.causes(a.id, b.id));
  CHECK_FALSE(p.causes(b.id, a.id));
  auto dup = p.add_event(1, {a.id});
  CHECK(dup.duplicate);
  CHECK(dup.id == b.id);
  auto c = p.add_event(1, {});
  CHECK(p.direct_conflict(a.id, c.id));
  CHECK(p.conflict(b.id, c.id));
  CHECK(p.direct_conflict(b.id, c.id));  // same label, unordered
  CHECK_THROWS_AS(p.add_event(0, {a.id, c.id}), std::invalid_argument);
  CHECK_THROWS_AS(p.add_event(0, {7}), std::invalid_argument);
  p.check_axioms();
}

TEST_CASE("two dependent events with incomparable histories conflict") {
  Pes p(all_but(2, {{0, 1}}));
  auto gi = p.add_event(0, {});
  auto gj = p.add_event(1, {});
  CHECK(p.direct_conflict(gi.id, gj.id));
  CHECK(p.direct_conflict(gj.id, gi.id));
  auto after = p.add_event(1, {gi.id});
  CHECK(p.causes(gi.id, after.id));
}

TEST_CASE("configurations and local configurations") {
  auto p = nine_events();
  p.check_axioms();
  CHECK(p.is_configuration({}));
  CHECK(p.is_configuration({0, 1}));
  CHECK(p.local_config(1) == Config{0, 1});
  CHECK(p.local_config(7) == Config{3, 6, 7});
  CHECK(p.local_config(0) == Config{0});
  CHECK_FALSE(p.is_configuration({0, 3}));
  CHECK_FALSE(p.is_configuration({1}));
  CHECK_THROWS_AS(p.is_configuration({42}), std::invalid_argument);
  CHECK(p.conflict(1, 7));
  CHECK_FALSE(p.conflict(3, 6));
  for (EventId e = 0; e < p.size(); ++e) CHECK(p.is_configuration(p.local_config(e)));
  CHECK(p.maximal({0, 1, 2}) == Config{1, 2});
}

TEST_CASE("maximal configurations") {
  auto p = nine_events();
  auto max = p.maximal_configurations();
  REQUIRE(max.size() == 3);
  CHECK(max[0] == Config{0, 1, 2});
  CHECK(max[1] == Config{2, 3, 4, 5, 6, 7});
  CHECK(max[2] == Config{2, 6, 8});

  CHECK(Pes(all_but(1, {})).maximal_configurations() == std::vector<Config>{{}});
  Pes pair(all_but(2, {{0, 1}}));
  pair.add_event(0, {});
  pair.add_event(1, {});
  CHECK(pair.maximal_configurations().size() == 2);
  CHECK(pair.configurations().size() == 3);
  CHECK_THROWS_AS(p.maximal_configurations(2), ResourceError);
}

TEST_CASE("interleavings") {
  Pes chain(all_but(2, {{0, 1}}));
  chain.add_event(0, {});
  chain.add_event(1, {0});
  CHECK(chain.interleavings({0, 1}).size() == 1);

  Pes two(all_but(2, {}));
  two.add_event(0, {});
  two.add_event(1, {});
  CHECK(two.interleavings({0, 1}).size() == 2);

  auto p = nine_events();
  auto il = p.interleavings({0, 1, 2});
  std::vector<std::vector<Label>> expect{{0, 1, 2}, {0, 2, 1}, {2, 0, 1}};
  CHECK(il == expect);

  Pes wide(all_but(8, {}));
  for (Label l = 0; l < 8; ++l) wide.add_event(l, {});
  CHECK_THROWS_AS(wide.interleavings({0, 1, 2, 3, 4, 5, 6, 7}, 1000), ResourceError);
}

TEST_CASE("prefix order") {
  auto p = nine_events();
  CHECK(is_prefix(p, p));

  Pes part(p.relation());
  part.add_event(3, {});
  part.add_event(6, {});
  part.add_event(7, {0, 1});
  CHECK(is_prefix(part, p));
  CHECK_FALSE(is_prefix(p, part));

  // an event whose history is missing from the larger structure
  Pes odd(p.relation());
  odd.add_event(4, {});
  CHECK_FALSE(is_prefix(odd, p));
}

TEST_CASE("random structures satisfy the axioms") {
  std::mt19937 rng(3);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 6;
    indep::IndepRelation r(n, indep::Mode::heap);
    for (Label a = 0; a < n; ++a)
      for (Label b = a + 1; b < n; ++b)
        if (rng() % 2) r.add(a, b);
    Pes p(r);
    for (int k = 0; k < 25; ++k) {
      auto confs = p.configurations();
      const auto& c = confs[rng() % confs.size()];
      p.add_event(rng() % n, c);
    }
    p.check_axioms();
    for (const auto& c : p.maximal_configurations()) CHECK(p.is_configuration(c));
  }
}
