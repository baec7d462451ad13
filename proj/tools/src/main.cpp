#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "weldkit/version.hpp"
#include "weldkit_cli/commands.hpp"

namespace {

using weldkit::cli::RunConfig;

void add_common(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--format", config.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, weldkit::cli::Format>{{"json", weldkit::cli::Format::json},
                                                      {"text", weldkit::cli::Format::text}}));
  cmd->add_option("--seed", config.seed, "Seed for randomized commands");
}

void add_length(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--max-length", config.max_length, "Largest residue length (default: component count)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--mode", config.mode, "Residue indeterminacy")
      ->transform(CLI::CheckedTransformer(std::map<std::string, weldkit::ResidueMode>{
          {"classical", weldkit::ResidueMode::classical}, {"raw", weldkit::ResidueMode::raw}}));
}

void add_search(CLI::App* cmd, RunConfig& config) {
  auto& b = config.bounds;
  cmd->add_option("--search-depth", b.depth, "Steps on a certificate path")->check(CLI::PositiveNumber);
  cmd->add_option("--conj-len", b.conj_len, "Elementary conjugations on a path")->check(CLI::NonNegativeNumber);
  cmd->add_option("--coset-max", b.coset_max, "Coset insertions per component")->check(CLI::NonNegativeNumber);
  cmd->add_option("--h-len", b.h_len, "Length of relator conjugators tried")->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-states", b.max_states, "Search state budget")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", b.threads, "Worker threads (0: available cores)")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  config.stdin_stream = &std::cin;

  CLI::App app{"Welded links as Gauss diagrams: sorting, Milnor residues, reduced peripheral systems"};
  app.set_version_flag("--version", std::string("weldkit ") + weldkit::kVersion);
  app.require_subcommand(1);

  auto* parse = app.add_subcommand("parse", "Validate a Gauss code and print its normal form");
  parse->add_option("input", config.inputs, "Gauss code, file, braid:<s>:<word> or - for stdin");
  add_common(parse, config);

  auto* sort = app.add_subcommand("sort", "Sort a diagram up to welded and SV moves");
  sort->add_option("input", config.inputs, "Gauss code, file, braid:<s>:<word> or - for stdin");
  sort->add_option("--trace", config.trace_path, "Write the move trace as JSON lines");
  add_common(sort, config);

  auto* peripheral = app.add_subcommand("peripheral", "Longitudes of the sorted form over the meridians");
  peripheral->add_option("input", config.inputs, "Gauss code, file, braid:<s>:<word> or - for stdin");
  add_common(peripheral, config);

  auto* milnor = app.add_subcommand("milnor", "Table of Milnor numbers and their residues");
  milnor->add_option("input", config.inputs, "Gauss code, file, braid:<s>:<word> or - for stdin");
  add_common(milnor, config);
  add_length(milnor, config);

  auto* compare = app.add_subcommand("compare", "Decide sv-equivalence within bounds (exit 0/10/20)");
  compare->add_option("inputs", config.inputs, "Two diagrams")->expected(2);
  compare->add_option("--certificate", config.output, "Write the certificate document here when found");
  add_common(compare, config);
  add_length(compare, config);
  add_search(compare, config);

  auto* certify = app.add_subcommand("certify", "Produce a certificate, or check one with --check");
  certify->add_option("inputs", config.inputs, "Two diagrams, or one certificate document with --check");
  certify->add_flag("--check", config.check, "Verify a certificate document");
  certify->add_option("-o,--output", config.output, "Certificate destination (default: stdout)");
  add_common(certify, config);
  add_length(certify, config);
  add_search(certify, config);

  auto* braid = app.add_subcommand("braid", "Gauss diagram of a braid closure");
  braid->add_option("--strands", config.strands, "Strand count")->required()->check(CLI::PositiveNumber);
  braid->add_option("--word", config.braid_word, "Letters such as \"s1 s2^-1\"");
  braid->add_option("letters", config.inputs, "Braid word, if --word is not given");
  add_common(braid, config);

  auto* demo = app.add_subcommand("demo", "Shipped examples: hopf, borromean, hughes, fuzz");
  demo->add_option("name", config.inputs, "Demo name")->required()->expected(1);
  demo->add_option("--fixtures", config.fixtures_dir, "Fixture directory");
  demo->add_option("--count", config.count, "Cases for the fuzz demo")->check(CLI::PositiveNumber);
  demo->add_flag("--allow-substitute", config.allow_substitute, "Run the Hughes demo on substitute fixtures");
  add_common(demo, config);
  add_length(demo, config);
  add_search(demo, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : weldkit::cli::kExitUsage;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  return weldkit::cli::run(config, std::cout, std::cerr);
}
