// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gen.hpp"
#include "worked_examples.hpp"

#include "absunf/oracle/oracle.hpp"
#include "absunf/unfolder/analyze.hpp"

using namespace absunf;
using domains::Interval;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> corpus_files() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(ABSUNF_CORPUS_DIR))
    if (e.path().extension() == ".prog") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what << " (" << detail << ")\n";
  if (!ok) ++failures;
}

constexpr std::size_t kGoldenEvents = 8;

void counters() {
  auto t0 = Clock::now();
  auto a = unfolder::analyze(lang::parse_program(slurp(fs::path(ABSUNF_CORPUS_DIR) / "counters.prog")), {});
  double secs = since(t0);
  const auto& res = a.result;
  const auto& p = *a.program;
  auto maximal = res.pes.maximal_configurations().size();
  std::size_t gi_cutoffs = 0;
  for (const auto& e : res.pes.events()) {
    const auto& edge = p.edge(static_cast<lang::EdgeId>(e.label));
    if (e.cutoff && edge.thread == 0 && lang::stmt_text(p, edge.stmt) == "g = g + i") ++gi_cutoffs;
  }
  std::ostringstream d;
  d << "W=" << res.warnings.size() << " maximal=" << maximal << " E=" << res.stats.events
    << " E_cut=" << res.stats.cutoffs << " cutoffs on g+=i=" << gi_cutoffs << " t=" << secs << "s";
  bool ok = res.complete && res.warnings.empty() && maximal == 3 && res.stats.cutoffs >= 1 && gi_cutoffs >= 1 &&
            secs < 5 && res.stats.events == kGoldenEvents;
  report(1, ok, "counter program reproduction", d.str());

  report(2, res.complete && res.warnings.empty(), "counter program proven safe",
         "W=" + std::to_string(res.warnings.size()));
}

struct Suite {
  std::shared_ptr<const lang::Program> p;
  indep::IndepRelation r;
  unfolder::UnfoldResult res;
};

// Generated programs whose heap relation commutes on the whole abstract reach.
std::vector<Suite> validated_programs(std::size_t want, std::size_t& rejected) {
  std::vector<Suite> out;
  unfolder::UnfoldOptions o;
  o.use_tla = false;
  o.use_cutoffs = false;
  for (unsigned seed = 0; out.size() < want && seed < 400; ++seed) {
    auto p = std::make_shared<const lang::Program>(
        lang::desugar_mutexes(lang::parse_program(testgen::ProgramGen(1000 + seed).generate())));
    auto r = indep::build_independence(*p, indep::Mode::heap);
    domains::IntervalInstance in(*p);
    std::vector<domains::AbsElement> reach;
    try {
      reach = oracle::enumerate_reach_abstract(in, p->edge_count(), 5000);
    } catch (const oracle::CapExceeded&) {
      ++rejected;
      continue;
    }
    if (!indep::check_weak_independence(in, r, reach).empty()) {
      ++rejected;
      continue;
    }
    auto res = unfolder::unfold(p, r, o);
    if (!res.complete) {
      ++rejected;
      continue;
    }
    out.push_back(Suite{p, r, std::move(res)});
  }
  return out;
}

void interleavings_agree(const std::vector<Suite>& suites, std::size_t rejected) {
  auto t0 = Clock::now();
  std::size_t configs = 0, bad_configs = 0, bad_events = 0;
  for (const auto& s : suites) {
    domains::IntervalInstance in(*s.p);
    for (const auto& [c, st] : s.res.configs) {
      if (c.size() > 7) continue;
      ++configs;
      bool same = true;
      for (const auto& seq : s.res.pes.interleavings(c)) {
        auto d = in.initial();
        for (auto f : seq) d = in.apply(f, d);
        if (!(d == st)) same = false;
      }
      if (!same) ++bad_configs;
    }
    for (const auto& e : s.res.pes.events())
      if (s.res.event_state[e.id].is_bottom()) ++bad_events;
  }
  double secs = since(t0);
  std::ostringstream d;
  d << suites.size() << " programs (" << rejected << " skipped), " << configs << " configurations, " << bad_configs
    << " with differing interleavings, " << bad_events << " bottom events, t=" << secs << "s";
  report(3, suites.size() >= 20 && bad_configs == 0 && bad_events == 0 && secs < 60, "interleavings agree", d.str());
}

void unique_representatives(const std::vector<Suite>& suites) {
  std::size_t runs = 0, bad = 0;
  for (const auto& s : suites) {
    domains::IntervalInstance in(*s.p);
    std::map<std::size_t, std::vector<const pes::Config*>> by_size;
    for (const auto& [c, st] : s.res.configs) by_size[c.size()].push_back(&c);
    for (const auto& run : oracle::enumerate_runs(in, 6)) {
      ++runs;
      std::size_t found = 0;
      for (const auto* c : by_size[run.size()]) {
        auto lin = s.res.pes.interleavings(*c);
        if (std::find(lin.begin(), lin.end(), run) != lin.end()) ++found;
      }
      bool built = false;
      try {
        auto rep = oracle::representative_config(s.res, run);
        auto lin = s.res.pes.interleavings(rep);
        built = std::find(lin.begin(), lin.end(), run) != lin.end();
      } catch (const std::exception&) {
      }
      if (found != 1 || !built) ++bad;
    }
  }
  std::ostringstream d;
  d << runs << " runs, " << bad << " without exactly one representative";
  report(4, !suites.empty() && runs > 0 && bad == 0, "unique representative configurations", d.str());
}

void completeness() {
  std::size_t checked = 0, skipped = 0, uncovered = 0, witnesses = 0;
  std::string witness_in;
  for (const auto& f : corpus_files()) {
    auto src = lang::parse_program(slurp(f));
    auto a = unfolder::analyze(src, {});
    if (a.respect_violations > 0 || !a.result.complete) {
      ++skipped;
      continue;
    }
    unfolder::ThreadLocalAnalysis tla(*a.program, a.result.partition, a.result.options.widening_level);
    unfolder::CollapsedInstance in(*a.program, a.result.partition, &tla);
    auto reach = oracle::enumerate_reach_abstract(in, 6);
    ++checked;
    uncovered += oracle::check_d_complete(a.result, reach).uncovered.size();

    unfolder::AnalysisOptions loose;
    loose.unfold.cutoff_policy = unfolder::CutoffPolicy::non_strict;
    auto m = unfolder::analyze(src, loose);
    auto miss = oracle::check_d_complete(m.result, reach).uncovered.size();
    if (miss > 0) {
      ++witnesses;
      witness_in += (witness_in.empty() ? "" : ",") + f.filename().string();
    }
  }
  std::ostringstream d;
  d << checked << " programs (" << skipped << " skipped), " << uncovered << " uncovered elements; non-strict mutant "
    << "incomplete on " << witnesses << (witness_in.empty() ? "" : " [" + witness_in + "]");
  report(5, checked > 0 && uncovered == 0 && witnesses >= 1, "cutoff prefix is complete", d.str());
}

void soundness() {
  auto t0 = Clock::now();
  std::size_t checked = 0, skipped = 0, states = 0, uncovered = 0, missed = 0;
  for (const auto& f : corpus_files()) {
    auto a = unfolder::analyze(lang::parse_program(slurp(f)), {});
    auto rr = oracle::enumerate_reach_concrete(*a.program);
    if (rr.truncated || !a.result.complete) {
      ++skipped;
      continue;
    }
    ++checked;
    states += rr.states.size();
    auto s = oracle::check_sound_cover(a.result, rr);
    uncovered += s.uncovered_states.size();
    missed += s.missed_asserts.size();
  }
  double secs = since(t0);
  std::ostringstream d;
  d << checked << " programs (" << skipped << " not enumerable), " << states << " states, " << uncovered
    << " uncovered, " << missed << " missed assertions, t=" << secs << "s";
  report(6, checked > 0 && uncovered == 0 && missed == 0 && secs < 120, "sound against the concrete oracle", d.str());
}

void examples_() {
  std::vector<std::string> bad;
  // mutually disabling assumes in the collecting semantics
  auto p = lang::desugar_mutexes(
      lang::parse_program("global x = 0; global y = 0; thread { assume(x == 0); } thread { assume(y == 0); }"));
  domains::ConcreteElement d0{{{0, 0}, {0, 1}}, {{0, 0}, {1, 0}}};
  domains::CollectingInstance col(p, d0);
  if (!col.apply(0, col.apply(1, d0)).empty() || !col.apply(1, col.apply(0, d0)).empty())
    bad.push_back("disabling assumes not bottom");

  auto br = examples::breaks_independence();
  auto i0 = br.initial();
  auto f12 = br.apply(0, br.apply(1, i0)), f21 = br.apply(1, br.apply(0, i0));
  if (!(f12 == examples::xy({2, 4}, {6, 8})) || !(f21 == examples::xy({2, 4}, {7, 9})))
    bad.push_back("compositions");
  if (f12 == f21) bad.push_back("compositions commute");
  auto met = br.meet(f12, f21);
  if (!(met == examples::xy({2, 4}, {7, 7}))) {
    const auto* env = met.find({0, 0});
    bad.push_back(env ? "meet has x in " + domains::to_string((*env)[0]) + ", y in " + domains::to_string((*env)[1]) +
                            ", expected y in [7,7]"
                      : "meet is bottom");
  }

  auto cr = examples::creates_independence();
  auto c0 = cr.initial();
  auto a = cr.apply(0, cr.apply(1, c0)), b = cr.apply(1, cr.apply(0, c0));
  if (!(a == b) || !(*a.find({0, 0}) == domains::Env{Interval{2, 3}})) bad.push_back("created independence");

  std::string d;
  for (const auto& s : bad) d += (d.empty() ? "" : "; ") + s;
  report(7, bad.empty(), "worked examples", d.empty() ? "all exact" : d);
}

void spinlock() {
  auto src = lang::parse_program(slurp(fs::path(ABSUNF_CORPUS_DIR) / "spinlock.prog"));
  auto t0 = Clock::now();
  auto on = unfolder::analyze(src, {});
  double secs = since(t0);
  unfolder::AnalysisOptions off;
  off.unfold.use_cutoffs = false;
  off.unfold.event_cap = 2000;
  auto o = unfolder::analyze(src, off);
  std::ostringstream d;
  d << "on: E=" << on.result.stats.events << " E_cut=" << on.result.stats.cutoffs << " t=" << secs
    << "s; off: E=" << o.result.stats.events << " " << (o.result.complete ? "complete" : o.result.incomplete_reason);
  bool ok = on.result.complete && secs < 10 && !o.result.complete && o.result.incomplete_reason == "event cap reached";
  report(8, ok, "cutoffs stop the spinlock", d.str());
}

}  // namespace

int main() {
  counters();
  std::size_t rejected = 0;
  auto suites = validated_programs(24, rejected);
  interleavings_agree(suites, rejected);
  unique_representatives(suites);
  completeness();
  soundness();
  examples_();
  spinlock();
  return failures == 0 ? 0 : 1;
}
