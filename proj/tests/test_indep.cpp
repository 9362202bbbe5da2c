#include "doctest.h"
#include "gen.hpp"
#include "worked_examples.hpp"

#include "absunf/indep/independence.hpp"

using namespace absunf;
using namespace absunf::indep;
using domains::Interval;

namespace {

lang::Program load(const char* text) { return lang::desugar_mutexes(lang::parse_program(text)); }

const char* kCounters = R"(
global g = 0;
thread { local i = 0; i = i + 1; g = g + i; }
thread { local j = 0; j = j + 1; g = g + j; assert(g <= 250); }
)";

}  // namespace

TEST_CASE("action sets") {
  auto p = load(kCounters);
  // thread 0: i = i + 1 (0), g = g + i (1)
  CHECK(actions_of(p, p.edge(0)) == ActionSet{});
  CHECK(actions_of(p, p.edge(1)) == ActionSet{{0}, {0}});
  CHECK(actions_of(p, p.edge(4)) == ActionSet{{0}, {}});

  auto q = load("mutex m; global h = 0; thread { lock(m); havoc(h, 0, 1); unlock(m); }");
  VarId m = q.mutex_var(0);
  CHECK(actions_of(q, q.edge(0)) == ActionSet{{m}, {m}});
  CHECK(actions_of(q, q.edge(1)) == ActionSet{{}, {0}});
}

TEST_CASE("relation by mode") {
  auto p = load(kCounters);
  auto heap = build_independence(p, Mode::heap);
  CHECK(heap.dependent(1, 3));  // g = g + i vs g = g + j
  CHECK(heap.dependent(1, 4));  // writer vs the assert reading g
  CHECK(heap.independent(0, 3));
  CHECK(heap.dependent(0, 1));  // same thread
  auto sync = build_independence(p, Mode::sync);
  CHECK(sync.independent(1, 3));

  auto ex1 = load("global x = 0; global y = 0; thread { assume(x == 0); } thread { assume(y == 0); }");
  CHECK(build_independence(ex1, Mode::heap).independent(0, 1));

  auto locks = load("mutex m; global a = 0; thread { lock(m); a = 1; unlock(m); } thread { lock(m); a = 2; unlock(m); }");
  auto s = build_independence(locks, Mode::sync);
  CHECK(s.dependent(0, 3));
  CHECK(s.independent(1, 4));
  CHECK(build_independence(locks, Mode::heap).dependent(1, 4));
}

TEST_CASE("relations are symmetric, irreflexive and cross-thread") {
  for (unsigned seed = 0; seed < 30; ++seed) {
    auto p = lang::desugar_mutexes(lang::parse_program(testgen::ProgramGen(seed).generate()));
    for (auto mode : {Mode::sync, Mode::heap}) {
      auto r = build_independence(p, mode);
      for (EdgeId f = 0; f < p.edge_count(); ++f) {
        CHECK(r.dependent(f, f));
        for (EdgeId g = 0; g < p.edge_count(); ++g) {
          CHECK(r.independent(f, g) == r.independent(g, f));
          if (p.edge(f).thread == p.edge(g).thread) CHECK(r.dependent(f, g));
        }
      }
    }
  }
  IndepRelation r(3, Mode::heap);
  CHECK_THROWS_AS(r.add(1, 1), std::invalid_argument);
}

TEST_CASE("local and global transformers") {
  auto p = load(kCounters);
  auto part = classify_transformers(p, build_independence(p, Mode::heap));
  CHECK(part.local[0] == std::vector<std::size_t>{0});
  CHECK(part.global[0] == std::vector<std::size_t>{1});
  CHECK(part.local[1] == std::vector<std::size_t>{2});
  CHECK(part.global[1] == std::vector<std::size_t>{3, 4});

  auto one = load("global g = 0; thread { g = g + 1; assert(g == 1); }");
  auto single = classify_transformers(one, build_independence(one, Mode::heap));
  CHECK(single.global[0].empty());
  CHECK(single.local[0].size() == 2);
}

TEST_CASE("abstraction breaks independence") {
  auto in = examples::breaks_independence();
  auto v = check_weak_independence(in, examples::both_ways(), {in.initial()});
  REQUIRE(v.size() == 1);
  // f1(f2(d0)) and f2(f1(d0))
  CHECK(v[0].lhs == examples::xy({2, 4}, {6, 8}));
  CHECK(v[0].rhs == examples::xy({2, 4}, {7, 9}));
}

TEST_CASE("abstraction creates independence") {
  auto in = examples::creates_independence();
  auto d0 = in.initial();
  CHECK(in.apply(0, in.apply(1, d0)) == in.apply(1, in.apply(0, d0)));
  CHECK(*in.apply(0, in.apply(1, d0)).find({0, 0}) == domains::Env{Interval{2, 3}});
  CHECK(check_weak_independence(in, examples::both_ways(), {d0}).empty());
  CHECK(check_weak_independence(in, IndepRelation(2, Mode::heap), {d0}).empty());
}

TEST_CASE("mutually disabling assumes are weakly but not fully independent") {
  auto p = load("global x = 0; global y = 0; thread { assume(x == 0); } thread { assume(y == 0); }");
  domains::ConcreteElement d0{{{0, 0}, {0, 1}}, {{0, 0}, {1, 0}}};
  domains::CollectingInstance in(p, d0);
  auto r = build_independence(p, Mode::heap);
  CHECK(check_weak_independence(in, r, {d0}).empty());
  auto strong = check_independence(in, r, {d0});
  REQUIRE(strong.size() == 1);
  CHECK(strong[0].enabledness);
  CHECK(strong[0].lhs.empty());
  CHECK(strong[0].rhs.empty());
}

TEST_CASE("serial and parallel checks agree") {
  for (unsigned seed = 0; seed < 15; ++seed) {
    auto p = lang::desugar_mutexes(lang::parse_program(testgen::ProgramGen(seed).generate()));
    domains::IntervalInstance in(p);
    std::vector<domains::AbsElement> sample{in.initial()};
    for (std::size_t k = 0; k < sample.size() && sample.size() < 40; ++k)
      for (std::size_t f = 0; f < in.transformer_count(); ++f) {
        auto n = in.apply(f, sample[k]);
        if (!n.is_bottom() && std::find(sample.begin(), sample.end(), n) == sample.end()) sample.push_back(n);
      }
    for (auto mode : {Mode::sync, Mode::heap}) {
      auto r = build_independence(p, mode);
      auto a = check_weak_independence_serial(in, r, sample);
      auto b = check_weak_independence_parallel(in, r, sample);
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].f == b[k].f);
        CHECK(a[k].g == b[k].g);
        CHECK(a[k].element == b[k].element);
        CHECK(a[k].lhs == b[k].lhs);
      }
    }
  }
}
