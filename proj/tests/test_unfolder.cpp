#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gen.hpp"

#include "absunf/oracle/oracle.hpp"
#include "absunf/unfolder/analyze.hpp"

using namespace absunf;
using namespace absunf::unfolder;
using domains::Interval;

namespace {

std::string corpus(const std::string& name) {
  std::ifstream in(std::string(ABSUNF_CORPUS_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::shared_ptr<const lang::Program> load(const std::string& text) {
  return std::make_shared<const lang::Program>(lang::desugar_mutexes(lang::parse_program(text)));
}

lang::EdgeId find_edge(const lang::Program& p, lang::ThreadId t, const std::string& text) {
  for (auto e : p.thread(t).edges)
    if (lang::stmt_text(p, p.edge(e).stmt) == text) return e;
  FAIL("no edge " << text);
  return 0;
}

UnfoldResult run(std::shared_ptr<const lang::Program> p, UnfoldOptions o = {},
                 indep::Mode mode = indep::Mode::heap) {
  return unfold(p, indep::build_independence(*p, mode), o);
}

const char* kChain = R"(
global g = 0;
thread { g = 1; g = g + 1; assert(g == 2); }
)";

}  // namespace

TEST_CASE("thread-local analysis on the counter loops") {
  auto p = load(corpus("counters.prog"));
  auto r = indep::build_independence(*p, indep::Mode::heap);
  auto part = indep::classify_transformers(*p, r);
  ThreadLocalAnalysis tla(*p, part, 15);
  auto d0 = domains::initial_element(*p);
  auto gi = find_edge(*p, 0, "g = g + i");
  auto res = tla(0, d0);
  CHECK(domains::leq(d0, res.out));
  CHECK(res.may_fail.empty());
  bool seen = false;
  for (const auto& [locs, env] : res.out.entries()) {
    if (locs[0] != p->edge(gi).src) continue;
    seen = true;
    CHECK(env[*p->find_var("g", std::nullopt)] == Interval{0, 0});
    CHECK(env[*p->find_var("i", 0)] == Interval{0, 100});
  }
  CHECK(seen);
  CHECK(tla(0, d0).out == res.out);
  CHECK(tla.memo_hits() >= 1);
}

TEST_CASE("thread-local analysis without local statements is the identity") {
  auto p = load("global g = 0; thread { g = g + 1; } thread { g = 2; }");
  auto part = indep::classify_transformers(*p, indep::build_independence(*p, indep::Mode::heap));
  ThreadLocalAnalysis tla(*p, part, 15);
  auto d0 = domains::initial_element(*p);
  CHECK(tla(0, d0).out == d0);
  CHECK(tla(1, d0).out == d0);
}

TEST_CASE("widening bounds the number of updates") {
  auto p = load("global g = 0; thread { local c = 0; while (c >= 0) { c = c + 1; } g = c; }");
  auto part = indep::classify_transformers(*p, indep::build_independence(*p, indep::Mode::heap));
  ThreadLocalAnalysis tla(*p, part, 2);
  auto res = tla.compute(0, domains::initial_element(*p));
  auto c = *p->find_var("c", 0);
  bool unbounded = false;
  for (const auto& [locs, env] : res.out.entries())
    if (!env[c].hi_finite()) unbounded = true;
  CHECK(unbounded);
  CHECK(res.updates <= 8);
}

TEST_CASE("collapsed transformers") {
  auto p = load(corpus("counters.prog"));
  auto res = run(p);
  auto r = indep::build_independence(*p, indep::Mode::heap);
  ThreadLocalAnalysis tla(*p, res.partition, 15);
  auto d0 = domains::initial_element(*p);
  auto gi = find_edge(*p, 0, "g = g + i");
  auto out = collapsed_apply(res, &tla, gi, d0);
  REQUIRE_FALSE(out.is_bottom());
  for (const auto& [locs, env] : out.entries()) CHECK(env[*p->find_var("g", std::nullopt)] == Interval{0, 100});
  // local edges are not transformers of the collapsed instance
  auto inc = find_edge(*p, 0, "i = i + 1");
  CHECK(res.partition.is_local[inc]);
  CHECK(collapsed_apply(res, &tla, inc, d0).is_bottom());
  CHECK(res.state({}) == d0);
}

TEST_CASE("mkevent") {
  auto p = load(corpus("counters.prog"));
  auto res = run(p);
  auto gi = find_edge(*p, 0, "g = g + i");
  auto gj = find_edge(*p, 1, "g = g + j");
  auto root = res.pes.find(gi, {});
  REQUIRE(root);
  CHECK(mkevent(res.pes, gj, {*root}) == Config{*root});
  CHECK(mkevent(res.pes, gi, {}) == Config{});

  indep::IndepRelation r(2, indep::Mode::heap);
  r.add(0, 1);
  pes::Pes q(r);
  auto a = q.add_event(0, {}).id;
  CHECK(mkevent(q, 1, {a}) == Config{});
  CHECK(mkevent(q, 0, {a}) == Config{a});
}

TEST_CASE("cutoff table") {
  auto d = AbsElement::single({0}, {Interval{0, 1}});
  auto small = AbsElement::single({0}, {Interval{0, 0}});
  CutoffTable t;
  CHECK_FALSE(t.is_cutoff(3, d, 2));
  CHECK_FALSE(t.is_cutoff(3, d, 2));  // equal depth
  CHECK(t.is_cutoff(3, small, 3));
  CHECK_FALSE(t.is_cutoff(4, small, 3));  // other label
  CHECK_FALSE(t.is_cutoff(3, AbsElement::single({0}, {Interval{0, 5}}), 9));
  CutoffTable loose(CutoffPolicy::non_strict);
  CHECK_FALSE(loose.is_cutoff(3, d, 2));
  CHECK(loose.is_cutoff(3, d, 2));
}

TEST_CASE("single thread unfolds to a chain") {
  auto p = load(kChain);
  // every statement is local, so the local analysis absorbs all of them
  auto collapsed = run(p);
  CHECK(collapsed.pes.size() == 0);
  CHECK(collapsed.warnings.empty());
  UnfoldOptions o;
  o.use_tla = false;
  auto res = run(p, o);
  CHECK(res.complete);
  CHECK(res.warnings.empty());
  REQUIRE(res.pes.size() == 3);
  for (EventId e = 1; e < 3; ++e) CHECK(res.pes.event(e).causes == Config{e - 1});
  CHECK(res.pes.maximal_configurations().size() == 1);
}

TEST_CASE("the counter program") {
  auto res = run(load(corpus("counters.prog")));
  CHECK(res.complete);
  CHECK(res.warnings.empty());
  CHECK(res.pes.maximal_configurations().size() == 3);
  CHECK(res.stats.events == 8);

  auto bug = run(load(corpus("counters_bug.prog")));
  CHECK(bug.warnings.size() == 1);
}

TEST_CASE("cutoffs need a sound relation") {
  auto p = load(corpus("counters.prog"));
  auto r = indep::build_independence(*p, indep::Mode::heap);
  r.mark_violated();
  CHECK_THROWS_AS(unfold(p, r, {}), UnfoldRefused);
  UnfoldOptions o;
  o.use_cutoffs = false;
  CHECK(unfold(p, r, o).complete);
  auto raw = std::make_shared<const lang::Program>(lang::parse_program("mutex m; thread { lock(m); unlock(m); }"));
  CHECK_THROWS_AS(unfold(raw, indep::IndepRelation(2, indep::Mode::heap), {}), std::invalid_argument);
}

TEST_CASE("caps make the result incomplete") {
  auto p = load(corpus("spinlock.prog"));
  UnfoldOptions o;
  o.use_cutoffs = false;
  o.event_cap = 40;
  auto res = run(p, o);
  CHECK_FALSE(res.complete);
  CHECK(res.incomplete_reason == "event cap reached");
  CHECK(res.pes.size() <= 40);
  o.event_cap = 20000;
  o.config_cap = 10;
  auto res2 = run(p, o);
  CHECK_FALSE(res2.complete);
  CHECK(res2.configs.size() <= 10);

  auto with = run(p);
  CHECK(with.complete);
  CHECK(with.stats.cutoffs > 0);
}

TEST_CASE("depth bound") {
  UnfoldOptions o;
  o.use_tla = false;
  o.max_depth = 2;
  auto res = run(load(kChain), o);
  CHECK(res.pes.size() == 2);
  CHECK(res.stats.depth_pruned > 0);
}

TEST_CASE("one interleaving gives the state of a configuration") {
  for (const char* name : {"counters_small.prog", "prodcons.prog", "lazyinit_bug.prog", "race3.prog"}) {
    auto res = run(load(corpus(name)));
    ThreadLocalAnalysis tla(*res.program, res.partition, res.options.widening_level);
    for (const auto& [c, st] : res.configs) {
      INFO(name);
      CHECK(state_by_interleavings(res, &tla, c) == st);
    }
    for (const auto& e : res.pes.events())
      if (!e.cutoff) CHECK_FALSE(res.event_state[e.id].is_bottom());
  }
}

TEST_CASE("respecting independence") {
  auto p = load(corpus("counters.prog"));
  auto r = indep::build_independence(*p, indep::Mode::heap);
  auto part = indep::classify_transformers(*p, r);
  ThreadLocalAnalysis tla(*p, part, 15);
  CollapsedInstance in(*p, part, &tla);
  auto samples = sample_reach(in, 4, 200);
  CHECK(samples.size() > 1);
  CHECK(check_respects_independence(*p, part, &tla, r, samples).empty());

  // without the local analysis this is the weak-independence check
  CollapsedInstance plain(*p, part, nullptr);
  auto raw = sample_reach(plain, 4, 200);
  CHECK(check_respects_independence(*p, part, nullptr, r, raw).size() ==
        indep::check_weak_independence(plain, r, raw).size());

  // sync mode treats the racy writes as local; the collapsed lock
  // transformers then disagree on g and cutoffs are dropped
  AnalysisOptions ao;
  ao.mode = indep::Mode::sync;
  auto a = analyze(lang::parse_program(R"(
global g = 0;
mutex m1;
mutex m2;
thread { g = 1; lock(m1); unlock(m1); }
thread { g = 2; lock(m2); unlock(m2); }
thread { lock(m1); lock(m2); unlock(m2); unlock(m1); }
)"), ao);
  CHECK(a.respect_violations > 0);
  CHECK(a.cutoffs_downgraded);
  CHECK_FALSE(a.result.options.use_cutoffs);
  CHECK_FALSE(a.diagnostic.empty());

  auto ok = analyze(lang::parse_program(corpus("counters.prog")), {});
  CHECK_FALSE(ok.cutoffs_downgraded);
  CHECK(ok.result.options.use_cutoffs);
}

TEST_CASE("agrees with the saturation of the definition") {
  UnfoldOptions o;
  o.use_tla = false;
  o.use_cutoffs = false;
  int compared = 0;
  for (unsigned seed = 0; seed < 40 && compared < 15; ++seed) {
    testgen::GenOptions go;
    go.max_stmts = 2;
    auto p = load(testgen::ProgramGen(seed, go).generate());
    auto r = indep::build_independence(*p, indep::Mode::heap);
    domains::IntervalInstance in(*p);
    pes::Pes ref;
    try {
      ref = oracle::saturate(in, r, 64, 600);
    } catch (const oracle::CapExceeded&) {
      continue;
    }
    auto res = unfold(p, r, o);
    REQUIRE(res.complete);
    INFO("seed " << seed);
    CHECK(res.pes.size() == ref.size());
    CHECK(pes::is_prefix(res.pes, ref));
    CHECK(pes::is_prefix(ref, res.pes));
    ++compared;
  }
  CHECK(compared >= 10);
}
