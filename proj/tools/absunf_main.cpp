#include <iostream>

#include <CLI11.hpp>

#include "absunf/cli/cli.hpp"

using namespace absunf;

int main(int argc, char** argv) {
  CLI::App app{"Interval analysis of concurrent programs over event-structure unfoldings"};
  app.require_subcommand(1);

  cli::RunConfig cfg;
  std::string mode = "heap", format = "text";
  bool no_cutoffs = false, no_tla = false;
  std::string dot;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--mode", mode, "independence relation")->check(CLI::IsMember({"sync", "heap"}));
    sub->add_option("--widening-level", cfg.widening_level, "updates before widening")->check(CLI::NonNegativeNumber);
    sub->add_flag("--no-cutoffs", no_cutoffs, "do not prune cutoff events");
    sub->add_flag("--no-tla", no_tla, "unfold local statements too");
    sub->add_flag("--oracle", cfg.oracle, "check against exhaustive concrete enumeration");
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--max-events", cfg.max_events, "event cap")->check(CLI::PositiveNumber);
    sub->add_option("--max-configs", cfg.max_configs, "configuration cap")->check(CLI::PositiveNumber);
  };

  auto* analyze = app.add_subcommand("analyze", "analyse one program");
  analyze->add_option("input", cfg.input, "program file")->required();
  analyze->add_option("--dot", dot, "write the unfolding as a DOT graph");
  common(analyze);

  std::string dir;
  auto* corpus = app.add_subcommand("corpus", "analyse every program in a directory");
  corpus->add_option("dir", dir, "directory of .prog files")->required()->check(CLI::ExistingDirectory);
  common(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cli::exit_usage;
  }

  cfg.mode = mode == "sync" ? indep::Mode::sync : indep::Mode::heap;
  cfg.format = format == "machine" ? cli::Format::machine : cli::Format::text;
  cfg.cutoffs = !no_cutoffs;
  cfg.tla = !no_tla;
  if (!dot.empty()) cfg.dot_output = dot;

  if (*analyze) {
    auto rep = cli::run_analyze(cfg);
    std::cout << rep.output;
    if (!rep.error.empty()) std::cerr << "error: " << rep.error << "\n";
    return rep.exit_code;
  }
  auto rep = cli::run_corpus(dir, cfg);
  std::cout << rep.table;
  return rep.exit_code;
}
