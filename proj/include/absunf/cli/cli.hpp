#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "absunf/oracle/oracle.hpp"
#include "absunf/unfolder/analyze.hpp"

namespace absunf::cli {

enum class Format { text, machine };

struct RunConfig {
  std::string input;
  indep::Mode mode = indep::Mode::heap;
  unsigned widening_level = 15;
  bool cutoffs = true;
  bool tla = true;
  std::optional<std::string> dot_output;
  bool oracle = false;
  std::size_t max_events = 20000;
  std::size_t max_configs = 200000;
  Format format = Format::text;
};

enum ExitCode : int { exit_safe = 0, exit_warnings = 1, exit_usage = 2, exit_incomplete = 3 };

struct OracleSummary {
  std::size_t states = 0;
  bool truncated = false;
  std::vector<lang::AssertId> violated;
  std::size_t uncovered = 0;
  std::vector<lang::AssertId> missed;
};

struct Report {
  int exit_code = exit_safe;
  std::string output;  // printed on stdout
  std::string error;   // printed on stderr
  std::optional<unfolder::Analysis> analysis;
  std::optional<OracleSummary> oracle;
};

/// Reads, analyses and formats one program. Never throws for bad input;
/// failures become exit_usage with a message in `error`.
Report run_analyze(const RunConfig& cfg);
Report analyze_text(std::string_view source, const RunConfig& cfg);

/// DOT rendering: events as boxes, immediate causality as solid arcs,
/// immediate conflicts as dashed undirected edges, cutoffs striped.
void export_dot(const unfolder::UnfoldResult& res, std::ostream& os);
void export_dot(const unfolder::UnfoldResult& res, const std::filesystem::path& path);

/// `key=value` lines from a `.expect` sidecar. Recognised keys: verdict
/// (safe|unsafe), warnings, min_warnings, events, complete (0|1).
struct Expectation {
  std::optional<std::string> verdict;
  std::optional<std::size_t> warnings;
  std::optional<std::size_t> min_warnings;
  std::optional<std::size_t> events;
  std::optional<bool> complete;
};

Expectation parse_expectation(std::string_view text);

struct CorpusRow {
  std::string name;
  std::size_t threads = 0;
  std::size_t asserts = 0;
  double seconds = 0;
  std::size_t events = 0;
  std::size_t cutoffs = 0;
  std::size_t warnings = 0;
  bool complete = true;
  bool pass = false;
  std::string note;
};

struct CorpusReport {
  std::vector<CorpusRow> rows;
  int exit_code = 0;  // 1 when any row fails
  std::string table;
};

/// Analyses every `*.prog` in `dir` (sorted by name) with `base` as the
/// configuration and checks each against its `.expect` sidecar. A program
/// without a sidecar passes when the analysis is complete.
CorpusReport run_corpus(const std::filesystem::path& dir, const RunConfig& base);

}  // namespace absunf::cli
