#include "absunf/cli/cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace absunf::cli {

using pes::EventId;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string pos_text(lang::SourcePos p) { return std::to_string(p.line) + ":" + std::to_string(p.column); }

const lang::AssertInfo& assert_info(const lang::Program& p, lang::AssertId id) {
  for (const auto& a : p.asserts())
    if (a.id == id) return a;
  throw std::out_of_range("unknown assertion id");
}

std::string assert_text(const lang::Program& p, lang::AssertId id) {
  return lang::stmt_text(p, p.edge(assert_info(p, id).edge).stmt);
}

int exit_code_of(const unfolder::UnfoldResult& res) {
  if (!res.complete) return exit_incomplete;
  return res.warnings.empty() ? exit_safe : exit_warnings;
}

void format_text(std::ostream& os, const RunConfig& cfg, const unfolder::Analysis& a,
                 const std::optional<OracleSummary>& orc) {
  const auto& res = a.result;
  const auto& p = *a.program;
  os << "program " << cfg.input << "\n";
  os << "P " << p.thread_count() << "  A " << p.asserts().size() << "  t(s) " << std::fixed << std::setprecision(3)
     << res.stats.seconds << "  E " << res.stats.events << "  E_cut " << res.stats.cutoffs << "  W "
     << res.warnings.size() << "\n";
  os << "configurations " << res.stats.configurations << "  mode " << indep::mode_name(a.relation.mode())
     << "  tla " << (res.options.use_tla ? "on" : "off") << "  cutoffs " << (res.options.use_cutoffs ? "on" : "off")
     << "\n";
  if (!a.diagnostic.empty()) os << "note: " << a.diagnostic << "\n";
  if (!res.complete) os << "incomplete: " << res.incomplete_reason << "\n";
  for (auto id : res.warnings) {
    const auto& info = assert_info(p, id);
    os << "warning: assertion " << id << " at " << pos_text(info.pos) << " may fail: " << assert_text(p, id) << "\n";
  }
  if (orc) {
    os << "oracle: " << orc->states << " states" << (orc->truncated ? " (truncated)" : "") << ", "
       << orc->violated.size() << " violated assertions, " << orc->uncovered << " uncovered states, "
       << orc->missed.size() << " missed assertions\n";
  }
  os << "verdict " << (!res.complete ? "incomplete" : res.warnings.empty() ? "safe" : "unsafe") << "\n";
}

void format_machine(std::ostream& os, const RunConfig& cfg, const unfolder::Analysis& a,
                    const std::optional<OracleSummary>& orc) {
  const auto& res = a.result;
  const auto& p = *a.program;
  os << "input=" << cfg.input << "\n";
  os << "mode=" << indep::mode_name(a.relation.mode()) << "\n";
  os << "widening_level=" << res.options.widening_level << "\n";
  os << "tla=" << (res.options.use_tla ? 1 : 0) << "\n";
  os << "cutoffs_enabled=" << (res.options.use_cutoffs ? 1 : 0) << "\n";
  os << "threads=" << p.thread_count() << "\n";
  os << "asserts=" << p.asserts().size() << "\n";
  os << "events=" << res.stats.events << "\n";
  os << "cutoffs=" << res.stats.cutoffs << "\n";
  os << "configurations=" << res.stats.configurations << "\n";
  os << "warnings=" << res.warnings.size() << "\n";
  for (auto id : res.warnings) os << "warning=" << id << "@" << pos_text(assert_info(p, id).pos) << "\n";
  os << "complete=" << (res.complete ? 1 : 0) << "\n";
  if (!res.complete) os << "incomplete_reason=" << res.incomplete_reason << "\n";
  if (a.cutoffs_downgraded) os << "cutoffs_downgraded=1\n";
  if (orc) {
    os << "oracle_states=" << orc->states << "\n";
    os << "oracle_truncated=" << (orc->truncated ? 1 : 0) << "\n";
    os << "oracle_violated=" << orc->violated.size() << "\n";
    os << "oracle_uncovered=" << orc->uncovered << "\n";
    os << "oracle_missed=" << orc->missed.size() << "\n";
  }
  os << "verdict=" << (!res.complete ? "incomplete" : res.warnings.empty() ? "safe" : "unsafe") << "\n";
}

}  // namespace

Report analyze_text(std::string_view source, const RunConfig& cfg) {
  Report rep;
  lang::Program prog;
  try {
    prog = lang::parse_program(source);
  } catch (const std::exception& e) {
    rep.exit_code = exit_usage;
    rep.error = cfg.input + ": " + e.what();
    return rep;
  }
  unfolder::AnalysisOptions opts;
  opts.mode = cfg.mode;
  opts.unfold.widening_level = cfg.widening_level;
  opts.unfold.use_cutoffs = cfg.cutoffs;
  opts.unfold.use_tla = cfg.tla;
  opts.unfold.event_cap = cfg.max_events;
  opts.unfold.config_cap = cfg.max_configs;
  try {
    rep.analysis = unfolder::analyze(prog, opts);
  } catch (const std::invalid_argument& e) {
    rep.exit_code = exit_usage;
    rep.error = e.what();
    return rep;
  }
  const auto& a = *rep.analysis;
  if (cfg.oracle) {
    OracleSummary s;
    auto rr = oracle::enumerate_reach_concrete(*a.program);
    s.states = rr.states.size();
    s.truncated = rr.truncated;
    for (const auto& [id, run] : rr.violated) s.violated.push_back(id);
    auto sc = oracle::check_sound_cover(a.result, rr);
    s.uncovered = sc.uncovered_states.size();
    s.missed = sc.missed_asserts;
    rep.oracle = s;
  }
  std::ostringstream os;
  if (cfg.format == Format::text)
    format_text(os, cfg, a, rep.oracle);
  else
    format_machine(os, cfg, a, rep.oracle);
  rep.output = os.str();
  rep.exit_code = exit_code_of(a.result);
  if (cfg.dot_output) {
    try {
      export_dot(a.result, *cfg.dot_output);
    } catch (const std::exception& e) {
      rep.error = e.what();
      rep.exit_code = exit_usage;
    }
  }
  return rep;
}

Report run_analyze(const RunConfig& cfg) {
  std::string text;
  try {
    text = read_file(cfg.input);
  } catch (const std::exception& e) {
    Report rep;
    rep.exit_code = exit_usage;
    rep.error = e.what();
    return rep;
  }
  return analyze_text(text, cfg);
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

bool immediate_conflict(const pes::Pes& pes, EventId a, EventId b) {
  if (!pes.direct_conflict(a, b)) return false;
  for (EventId x : pes.local_config(a))
    if (x != a && pes.conflict(x, b)) return false;
  for (EventId y : pes.local_config(b))
    if (y != b && pes.conflict(a, y)) return false;
  return true;
}

}  // namespace

void export_dot(const unfolder::UnfoldResult& res, std::ostream& os) {
  const auto& pes = res.pes;
  os << "digraph unfolding {\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  for (const auto& e : pes.events()) {
    const auto& edge = res.program->edge(static_cast<lang::EdgeId>(e.label));
    os << "  e" << e.id << " [label=\"e" << e.id << " t" << edge.thread << ": "
       << dot_escape(lang::stmt_text(*res.program, edge.stmt)) << "\"";
    if (e.cutoff) os << ", style=striped, fillcolor=\"white:gray\"";
    os << "];\n";
  }
  for (const auto& e : pes.events())
    for (EventId c : e.causes) os << "  e" << c << " -> e" << e.id << ";\n";
  for (auto [a, b] : pes.direct_conflicts())
    if (immediate_conflict(pes, a, b))
      os << "  e" << a << " -> e" << b << " [style=dashed, dir=none, constraint=false];\n";
  os << "}\n";
}

void export_dot(const unfolder::UnfoldResult& res, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  export_dot(res, out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Expectation parse_expectation(std::string_view text) {
  Expectation ex;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "verdict") {
      if (val != "safe" && val != "unsafe") throw std::invalid_argument("verdict must be safe or unsafe");
      ex.verdict = val;
    } else if (key == "warnings") {
      ex.warnings = std::stoul(val);
    } else if (key == "min_warnings") {
      ex.min_warnings = std::stoul(val);
    } else if (key == "events") {
      ex.events = std::stoul(val);
    } else if (key == "complete") {
      ex.complete = val == "1";
    } else {
      throw std::invalid_argument("unknown expectation key " + key);
    }
  }
  return ex;
}

CorpusReport run_corpus(const std::filesystem::path& dir, const RunConfig& base) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".prog") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  CorpusReport out;
  for (const auto& f : files) {
    CorpusRow row;
    row.name = f.filename().string();
    RunConfig cfg = base;
    cfg.input = f.string();
    cfg.dot_output.reset();
    auto rep = run_analyze(cfg);
    if (!rep.analysis) {
      row.note = rep.error;
      out.rows.push_back(row);
      continue;
    }
    const auto& res = rep.analysis->result;
    row.threads = rep.analysis->program->thread_count();
    row.asserts = rep.analysis->program->asserts().size();
    row.seconds = res.stats.seconds;
    row.events = res.stats.events;
    row.cutoffs = res.stats.cutoffs;
    row.warnings = res.warnings.size();
    row.complete = res.complete;

    Expectation ex;
    auto side = f;
    side.replace_extension(".expect");
    try {
      if (fs::exists(side)) ex = parse_expectation(read_file(side.string()));
    } catch (const std::exception& e) {
      row.note = "bad expectation: " + std::string(e.what());
      out.rows.push_back(row);
      continue;
    }
    std::vector<std::string> why;
    bool want_complete = ex.complete.value_or(true);
    if (row.complete != want_complete) why.push_back(row.complete ? "complete" : "incomplete");
    if (ex.verdict) {
      bool unsafe = row.warnings > 0;
      if (unsafe != (*ex.verdict == "unsafe")) why.push_back("verdict");
    }
    if (ex.warnings && row.warnings != *ex.warnings) why.push_back("warnings");
    if (ex.min_warnings && row.warnings < *ex.min_warnings) why.push_back("warnings");
    if (ex.events && row.events != *ex.events) why.push_back("events");
    if (rep.oracle && (rep.oracle->uncovered > 0 || !rep.oracle->missed.empty())) why.push_back("oracle");
    row.pass = why.empty();
    for (const auto& w : why) row.note += (row.note.empty() ? "mismatch: " : ", ") + w;
    out.rows.push_back(row);
  }

  std::ostringstream os;
  os << std::left << std::setw(24) << "program" << std::right << std::setw(4) << "P" << std::setw(4) << "A"
     << std::setw(9) << "t(s)" << std::setw(8) << "E" << std::setw(7) << "E_cut" << std::setw(5) << "W"
     << "  result\n";
  for (const auto& r : out.rows) {
    os << std::left << std::setw(24) << r.name << std::right << std::setw(4) << r.threads << std::setw(4)
       << r.asserts << std::setw(9) << std::fixed << std::setprecision(3) << r.seconds << std::setw(8) << r.events
       << std::setw(7) << r.cutoffs << std::setw(5) << r.warnings << "  " << (r.pass ? "PASS" : "FAIL");
    if (!r.complete) os << " (incomplete)";
    if (!r.note.empty()) os << "  " << r.note;
    os << "\n";
    if (!r.pass) out.exit_code = 1;
  }
  out.table = os.str();
  return out;
}

}  // namespace absunf::cli
