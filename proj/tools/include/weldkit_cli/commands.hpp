#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "weldkit/equivalence.hpp"
#include "weldkit/gauss_diagram.hpp"
#include "weldkit/magnus.hpp"

namespace weldkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a checked property does not hold
inline constexpr int kExitDistinct = 10;
inline constexpr int kExitUnknown = 20;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnverifiedFixture = 65;
inline constexpr int kExitInternal = 70;

enum class Format { json, text };

// Bad input files, unreadable fixtures and out-of-range options.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  // Gauss code literal, file path, "-" for stdin, or "braid:<strands>:<word>".
  std::vector<std::string> inputs;
  int strands = 0;
  std::string braid_word;
  SearchBounds bounds;
  int max_length = 0;  // 0: component count
  ResidueMode mode = ResidueMode::classical;
  Format format = Format::json;
  std::uint64_t seed = 1;
  int count = 20;
  std::string output;      // file for certificates and traces; empty: stdout
  std::string trace_path;  // sort: JSON-lines trace destination
  bool check = false;      // certify: verify a certificate document
  bool allow_substitute = false;
  std::string fixtures_dir;
  std::istream* stdin_stream = nullptr;
};

struct LoadedInput {
  std::string source;
  GaussDiagram diagram;
};

LoadedInput load_input(const std::string& spec, std::istream* stdin_stream);

// Hughes pair and the other shipped links.
struct BraidFixture {
  std::string name;
  std::string status;  // "transcribed", "derived" or "substitute"
  BraidWord braid;
};

std::vector<BraidFixture> load_fixture_file(const std::string& path);
std::string default_fixtures_dir();

int cmd_parse(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sort(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_peripheral(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_milnor(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_certify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_braid(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_demo(const RunConfig& config, std::ostream& out, std::ostream& err);

// Dispatches on config.subcommand and maps exceptions to exit codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int exit_code_for(const Verdict& v);

}  // namespace weldkit::cli
