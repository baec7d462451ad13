#include "weldkit_cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "weldkit/group.hpp"
#include "weldkit/json_io.hpp"
#include "weldkit/moves.hpp"
#include "weldkit/version.hpp"

#ifndef WELDKIT_FIXTURES_DIR
#define WELDKIT_FIXTURES_DIR "fixtures"
#endif

namespace weldkit::cli {

namespace {

using Json = nlohmann::json;
namespace io = weldkit::json;

std::string read_stream(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  return read_stream(in);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

BraidFixture fixture_from_json(const std::string& name, const Json& j, const std::string& status) {
  BraidFixture f;
  f.name = name;
  f.status = j.value("status", status);
  f.braid = parse_braid_word(j.at("strands").get<int>(), j.at("word").get<std::string>());
  return f;
}

GaussDiagram diagram_from_text(const std::string& raw) {
  const std::string text = trim(raw);
  if (!text.empty() && text.front() == '{') {
    const Json j = Json::parse(text);
    if (j.contains("circles")) return io::diagram_from_json(j);
    if (j.contains("word")) return from_braid_closure(fixture_from_json("input", j, "").braid);
    throw InputError("JSON input is neither a diagram nor a braid");
  }
  return parse_gauss_code(text);
}

std::vector<LoadedInput> inputs_of(const RunConfig& config, std::size_t wanted) {
  std::vector<std::string> specs = config.inputs;
  if (specs.empty() && wanted == 1) specs.push_back("-");
  if (specs.size() != wanted) {
    throw InputError(config.subcommand + " takes " + std::to_string(wanted) + " input(s), got " +
                     std::to_string(specs.size()));
  }
  std::vector<LoadedInput> out;
  for (const auto& s : specs) out.push_back(load_input(s, config.stdin_stream));
  return out;
}

int effective_length(const RunConfig& config, int n) {
  const int cap = std::max(n, 1);
  if (config.max_length < 0) throw InputError("--max-length must be positive");
  if (config.max_length > cap) {
    throw InputError("--max-length " + std::to_string(config.max_length) + " exceeds the component count " +
                     std::to_string(cap));
  }
  return config.max_length == 0 ? cap : config.max_length;
}

void check_bounds(const SearchBounds& b) {
  if (b.conj_len < 0 || b.coset_max < 0 || b.depth < 1 || b.h_len < 0 || b.max_states < 1 || b.threads < 0) {
    throw InputError("search bounds must be positive");
  }
}

Json input_echo(const LoadedInput& in) {
  return {{"source", in.source},
          {"gauss_code", serialize_gauss_code(in.diagram)},
          {"n", in.diagram.n()},
          {"arrows", in.diagram.arrow_count()}};
}

// Threads are left out so reports do not depend on the machine.
Json parameters(const RunConfig& config, std::optional<int> max_length) {
  Json p{{"seed", config.seed}, {"mode", config.mode == ResidueMode::classical ? "classical" : "raw"}};
  if (max_length) p["max_length"] = *max_length;
  Json bounds = io::to_json(config.bounds);
  if (max_length) bounds["max_length"] = *max_length;
  p["bounds"] = std::move(bounds);
  return p;
}

Json report(const RunConfig& config, const std::vector<LoadedInput>& inputs, Json params, Json result) {
  Json echo = Json::array();
  for (const auto& in : inputs) echo.push_back(input_echo(in));
  return {{"schema", std::string("weldkit/report/v") + io::kSchemaVersion},
          {"tool", {{"name", "weldkit"}, {"version", kVersion}}},
          {"command", config.subcommand},
          {"inputs", std::move(echo)},
          {"parameters", std::move(params)},
          {"result", std::move(result)}};
}

void emit(const RunConfig& config, std::ostream& out, const Json& rep, const std::string& text) {
  if (config.format == Format::json) {
    out << rep.dump(2) << "\n";
  } else {
    out << text;
  }
}

std::string format_entry(const MilnorEntry& e) {
  std::ostringstream s;
  s << "mu" << format_multi_index(e.indices, e.target) << " = " << e.mu.to_string() << "  delta "
    << e.delta.to_string() << "  mubar " << e.mubar.to_string();
  return s.str();
}

PeripheralSystem sorted_system(const GaussDiagram& d) { return sorted_longitudes(sort_diagram(d).sorted); }

std::string verdict_text(const Verdict& v) {
  std::ostringstream s;
  s << to_string(v.kind) << ": " << v.reason << "\n";
  if (v.witness) {
    s << "  A: " << format_entry(v.witness->a) << "\n";
    s << "  B: " << format_entry(v.witness->b) << "\n";
  }
  if (v.certificate) {
    s << "  certificate: " << v.certificate->steps.size() << " step(s)";
    std::size_t inserted = 0;
    for (const auto& c : v.certificate->cosets) inserted += c.size();
    s << ", " << inserted << " coset insertion(s)\n";
  }
  s << "  states " << v.stats.states << ", depth " << v.stats.depth_reached << "\n";
  return s.str();
}

std::string fixtures_path(const RunConfig& config, const std::string& file) {
  const std::string dir = config.fixtures_dir.empty() ? default_fixtures_dir() : config.fixtures_dir;
  return (std::filesystem::path(dir) / file).string();
}

const BraidFixture& find_fixture(const std::vector<BraidFixture>& fs, const std::string& name) {
  for (const auto& f : fs) {
    if (f.name == name) return f;
  }
  throw InputError("fixture '" + name + "' not found");
}

LoadedInput fixture_input(const BraidFixture& f) {
  return {"fixture:" + f.name, from_braid_closure(f.braid)};
}

int demo_hopf(const RunConfig& config, std::ostream& out) {
  const auto fs = load_fixture_file(fixtures_path(config, "hopf.json"));
  const LoadedInput plus = fixture_input(find_fixture(fs, "hopf+"));
  const LoadedInput minus = fixture_input(find_fixture(fs, "hopf-"));
  SearchBounds bounds = config.bounds;
  bounds.max_length = 2;
  const Verdict v = sv_equivalent(plus.diagram, minus.diagram, bounds);
  const bool ok = v.kind == Verdict::Kind::distinct && v.witness && v.witness->a.indices == std::vector<int>{1} &&
                  v.witness->a.target == 0 && v.witness->a.mubar == Integer(1) && v.witness->b.mubar == Integer(-1);
  Json result = io::to_json(v);
  result["expected"] = "distinct with mubar(2;1) = 1 vs -1";
  result["as_expected"] = ok;
  std::ostringstream text;
  text << "positive Hopf " << serialize_gauss_code(plus.diagram) << "\nnegative Hopf "
       << serialize_gauss_code(minus.diagram) << "\n"
       << verdict_text(v) << (ok ? "as expected\n" : "NOT as expected\n");
  emit(config, out, report(config, {plus, minus}, parameters(config, 2), std::move(result)), text.str());
  return ok ? kExitOk : kExitFailed;
}

int demo_borromean(const RunConfig& config, std::ostream& out) {
  const auto fs = load_fixture_file(fixtures_path(config, "borromean.json"));
  const LoadedInput link = fixture_input(find_fixture(fs, "borromean"));
  const MilnorTable t = diagram_milnor_table(link.diagram, 3, config.mode);
  bool unlinked = true;
  for (const auto& e : t.entries) {
    if (e.length() == 2 && !e.mubar.is_zero()) unlinked = false;
  }
  const MilnorEntry* triple = t.find({0, 1}, 2);
  const bool ok = unlinked && triple && (triple->mubar == Integer(1) || triple->mubar == Integer(-1));
  Json result{{"table", io::to_json(t)}, {"pairwise_unlinked", unlinked}, {"as_expected", ok}};
  std::ostringstream text;
  text << "Borromean rings " << serialize_gauss_code(link.diagram) << "\n";
  for (const auto& e : t.entries) text << "  " << format_entry(e) << "\n";
  text << (ok ? "linking numbers vanish and |mubar(1,2;3)| = 1\n" : "NOT as expected\n");
  emit(config, out, report(config, {link}, parameters(config, 3), std::move(result)), text.str());
  return ok ? kExitOk : kExitFailed;
}

int demo_hughes(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string path = fixtures_path(config, "hughes.json");
  const auto fs = load_fixture_file(path);
  const BraidFixture& f1 = find_fixture(fs, "H1");
  const BraidFixture& f2 = find_fixture(fs, "H2");
  const bool verified = f1.status == "transcribed" && f2.status == "transcribed";
  if (!verified) {
    err << "error: the Hughes fixtures in " << path << " are marked '" << f1.status << "'/'" << f2.status
        << "', not 'transcribed'.\n"
        << "error: they are not the published braids; results below say nothing about the Hughes links.\n";
    if (!config.allow_substitute) {
      err << "error: rerun with --allow-substitute to exercise the pipeline on them anyway.\n";
      return kExitUnverifiedFixture;
    }
  }
  const LoadedInput h1 = fixture_input(f1);
  const LoadedInput h2 = fixture_input(f2);
  const int top = std::min(4, std::max(h1.diagram.n(), 1));
  const MilnorTable t1 = diagram_milnor_table(h1.diagram, top, config.mode);
  const MilnorTable t2 = diagram_milnor_table(h2.diagram, top, config.mode);
  const bool tables_agree = tables_equal(t1, t2);
  Json verdicts = Json::array();
  bool never_distinct = true;
  std::ostringstream text;
  text << "H1 (" << f1.status << ") " << format_braid_word(f1.braid) << "\nH2 (" << f2.status << ") "
       << format_braid_word(f2.braid) << "\n"
       << "residue tables through length " << top << ": " << (tables_agree ? "equal" : "DIFFERENT") << "\n";
  for (int k = 1; k <= top; ++k) {
    SearchBounds bounds = config.bounds;
    bounds.max_length = k;
    const Verdict v = sv_equivalent(h1.diagram, h2.diagram, bounds);
    if (v.kind == Verdict::Kind::distinct) never_distinct = false;
    Json item = io::to_json(v);
    item["max_length"] = k;
    verdicts.push_back(std::move(item));
    text << "compare at max length " << k << ": " << verdict_text(v);
  }
  const bool ok = tables_agree && never_distinct;
  Json result{{"fixture_status", {f1.status, f2.status}},
              {"tables_equal", tables_agree},
              {"table_h1", io::to_json(t1)},
              {"table_h2", io::to_json(t2)},
              {"verdicts", std::move(verdicts)},
              {"never_distinct", never_distinct},
              {"as_expected", ok}};
  emit(config, out, report(config, {h1, h2}, parameters(config, top), std::move(result)), text.str());
  if (!verified) return kExitUnverifiedFixture;
  return ok ? kExitOk : kExitFailed;
}

// Random diagrams: sorting replays and keeps the residue table, and so does
// every single SV-del.
int demo_fuzz(const RunConfig& config, std::ostream& out) {
  std::mt19937_64 rng(config.seed);
  int failures = 0;
  Json cases = Json::array();
  std::ostringstream text;
  for (int k = 0; k < config.count; ++k) {
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    const int m = std::uniform_int_distribution<int>(0, 12)(rng);
    const GaussDiagram d = random_diagram(rng, n, m);
    const MilnorTable t = diagram_milnor_table(d, n, config.mode);
    const SortResult s = sort_diagram(d);
    bool ok = is_sorted(s.sorted) && verify_trace(s.trace).ok &&
              tables_equal(t, milnor_table(sorted_longitudes(s.sorted), n, config.mode));
    for (const auto& mv : enumerate_moves(d, {MoveKind::sv_del})) {
      ok = ok && tables_equal(t, diagram_milnor_table(apply_move(d, mv), n, config.mode));
    }
    if (!ok) ++failures;
    cases.push_back({{"gauss_code", serialize_gauss_code(d)}, {"sort_steps", s.trace.steps.size()}, {"ok", ok}});
    text << (ok ? "ok   " : "FAIL ") << serialize_gauss_code(d) << "\n";
  }
  text << failures << " failure(s) in " << config.count << " case(s)\n";
  Json result{{"count", config.count}, {"failures", failures}, {"cases", std::move(cases)}};
  emit(config, out, report(config, {}, parameters(config, std::nullopt), std::move(result)), text.str());
  return failures == 0 ? kExitOk : kExitFailed;
}

}  // namespace

std::string default_fixtures_dir() {
  if (const char* env = std::getenv("WELDKIT_FIXTURES")) return env;
  return WELDKIT_FIXTURES_DIR;
}

LoadedInput load_input(const std::string& spec, std::istream* stdin_stream) {
  if (spec == "-") {
    return {"stdin", diagram_from_text(read_stream(stdin_stream ? *stdin_stream : std::cin))};
  }
  if (spec.rfind("braid:", 0) == 0) {
    const auto colon = spec.find(':', 6);
    if (colon == std::string::npos) throw InputError("braid input must look like braid:<strands>:<word>");
    int strands = 0;
    try {
      strands = std::stoi(spec.substr(6, colon - 6));
    } catch (const std::exception&) {
      throw InputError("braid input must look like braid:<strands>:<word>");
    }
    return {spec, from_braid_closure(parse_braid_word(strands, spec.substr(colon + 1)))};
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) return {spec, diagram_from_text(read_file(spec))};
  return {spec, parse_gauss_code(spec)};
}

// Either a single braid object or {"status": ..., "links": {name: braid}}.
std::vector<BraidFixture> load_fixture_file(const std::string& path) {
  const Json j = Json::parse(read_file(path));
  std::vector<BraidFixture> out;
  const std::string status = j.value("status", "");
  if (j.contains("links")) {
    for (const auto& [name, item] : j.at("links").items()) out.push_back(fixture_from_json(name, item, status));
  } else {
    out.push_back(fixture_from_json(j.value("name", path), j, status));
  }
  for (const auto& f : out) {
    if (f.status.empty()) throw InputError("fixture '" + f.name + "' in " + path + " has no status");
  }
  return out;
}

int cmd_parse(const RunConfig& config, std::ostream& out, std::ostream&) {
  const auto in = inputs_of(config, 1);
  const GaussDiagram& d = in[0].diagram;
  Json result{{"gauss_code", serialize_gauss_code(d)},
              {"canonical_key", canonical_key(d)},
              {"diagram", io::to_json(d)},
              {"is_sorted", is_sorted(d)}};
  std::ostringstream text;
  text << serialize_gauss_code(d) << "\n"
       << d.n() << " circle(s), " << d.arrow_count() << " arrow(s)" << (is_sorted(d) ? ", sorted" : "") << "\n";
  emit(config, out, report(config, in, parameters(config, std::nullopt), std::move(result)), text.str());
  return kExitOk;
}

int cmd_sort(const RunConfig& config, std::ostream& out, std::ostream&) {
  const auto in = inputs_of(config, 1);
  const SortResult s = sort_diagram(in[0].diagram);
  const TraceCheck check = verify_trace(s.trace);
  if (!check.ok) throw std::logic_error("sorting trace does not replay: " + check.reason);
  if (!config.trace_path.empty()) write_file(config.trace_path, io::trace_to_jsonl(s.trace));
  std::map<std::string, int> by_kind;
  for (const auto& step : s.trace.steps) by_kind[to_string(step.move.kind)] += 1;
  Json result{{"gauss_code", serialize_gauss_code(s.sorted)},
              {"diagram", io::to_json(s.sorted)},
              {"is_sorted", is_sorted(s.sorted)},
              {"trace_steps", s.trace.steps.size()},
              {"trace_verified", check.ok},
              {"moves", by_kind}};
  std::ostringstream text;
  text << serialize_gauss_code(s.sorted) << "\n" << s.trace.steps.size() << " move(s)";
  for (const auto& [kind, count] : by_kind) text << ", " << kind << " x" << count;
  text << "\n";
  emit(config, out, report(config, in, parameters(config, std::nullopt), std::move(result)), text.str());
  return kExitOk;
}

int cmd_peripheral(const RunConfig& config, std::ostream& out, std::ostream&) {
  const auto in = inputs_of(config, 1);
  const SortResult s = sort_diagram(in[0].diagram);
  const PeripheralSystem p = sorted_longitudes(s.sorted);
  Json result{{"sorted", serialize_gauss_code(s.sorted)},
              {"peripheral", io::to_json(p)},
              {"presentation", io::to_json(reduced_presentation(p))}};
  std::ostringstream text;
  text << "sorted " << serialize_gauss_code(s.sorted) << "\n";
  for (int i = 0; i < p.n; ++i) {
    text << "lambda" << i + 1 << " = " << (p.longitudes[i].empty() ? "1" : format_word(p.longitudes[i]))
         << "  (self-crossings " << p.self_crossings[i] << ")\n";
  }
  emit(config, out, report(config, in, parameters(config, std::nullopt), std::move(result)), text.str());
  return kExitOk;
}

int cmd_milnor(const RunConfig& config, std::ostream& out, std::ostream&) {
  const auto in = inputs_of(config, 1);
  const int length = effective_length(config, in[0].diagram.n());
  const MilnorTable t = diagram_milnor_table(in[0].diagram, length, config.mode);
  std::ostringstream text;
  for (const auto& e : t.entries) text << format_entry(e) << "\n";
  emit(config, out, report(config, in, parameters(config, length), {{"table", io::to_json(t)}}), text.str());
  return kExitOk;
}

int exit_code_for(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::equivalent:
      return kExitOk;
    case Verdict::Kind::distinct:
      return kExitDistinct;
    case Verdict::Kind::unknown:
      return kExitUnknown;
  }
  return kExitInternal;
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream&) {
  check_bounds(config.bounds);
  const auto in = inputs_of(config, 2);
  if (in[0].diagram.n() != in[1].diagram.n()) throw InputError("inputs have different component counts");
  const int length = effective_length(config, in[0].diagram.n());
  SearchBounds bounds = config.bounds;
  bounds.max_length = length;
  const PeripheralSystem a = sorted_system(in[0].diagram);
  const PeripheralSystem b = sorted_system(in[1].diagram);
  const Verdict v = search_certificate(a, b, bounds);
  if (v.certificate && !config.output.empty()) {
    write_file(config.output, io::certificate_document(a, b, *v.certificate).dump(2) + "\n");
  }
  emit(config, out, report(config, in, parameters(config, length), io::to_json(v)), verdict_text(v));
  return exit_code_for(v);
}

int cmd_certify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.check) {
    check_bounds(config.bounds);
    const auto in = inputs_of(config, 2);
    if (in[0].diagram.n() != in[1].diagram.n()) throw InputError("inputs have different component counts");
    const int length = effective_length(config, in[0].diagram.n());
    SearchBounds bounds = config.bounds;
    bounds.max_length = length;
    const PeripheralSystem a = sorted_system(in[0].diagram);
    const PeripheralSystem b = sorted_system(in[1].diagram);
    const Verdict v = search_certificate(a, b, bounds);
    if (!v.certificate) {
      err << verdict_text(v);
      return exit_code_for(v);
    }
    const std::string doc = io::certificate_document(a, b, *v.certificate).dump(2) + "\n";
    if (config.output.empty()) {
      out << doc;
    } else {
      write_file(config.output, doc);
    }
    return kExitOk;
  }
  std::vector<std::string> specs = config.inputs;
  if (specs.empty()) specs.push_back("-");
  if (specs.size() != 1) throw InputError("certify --check takes one certificate document");
  const std::string text = specs[0] == "-" ? read_stream(config.stdin_stream ? *config.stdin_stream : std::cin)
                                           : read_file(specs[0]);
  const Json doc = Json::parse(text);
  const std::string expected = std::string("weldkit/certificate/v") + io::kSchemaVersion;
  if (doc.value("schema", "") != expected) throw InputError("not a " + expected + " document");
  const PeripheralSystem a = io::peripheral_from_json(doc.at("A"));
  const PeripheralSystem b = io::peripheral_from_json(doc.at("B"));
  const Certificate c = io::certificate_from_json(doc.at("certificate"));
  const bool valid = verify_certificate(a, b, c);
  const Json rep{{"schema", std::string("weldkit/report/v") + io::kSchemaVersion},
                 {"tool", {{"name", "weldkit"}, {"version", kVersion}}},
                 {"command", "certify --check"},
                 {"inputs", Json::array({{{"source", specs[0] == "-" ? "stdin" : specs[0]}}})},
                 {"parameters", Json::object()},
                 {"result", {{"valid", valid}, {"steps", c.steps.size()}}}};
  emit(config, out, rep, valid ? "certificate verifies\n" : "certificate does NOT verify\n");
  return valid ? kExitOk : kExitFailed;
}

int cmd_braid(const RunConfig& config, std::ostream& out, std::ostream&) {
  std::string word = config.braid_word;
  if (word.empty() && config.inputs.size() == 1) word = config.inputs[0];
  if (config.strands < 1) throw InputError("braid needs --strands");
  const BraidWord w = parse_braid_word(config.strands, word);
  const LoadedInput in{"braid:" + std::to_string(config.strands) + ":" + format_braid_word(w), from_braid_closure(w)};
  Json result{{"strands", w.strands},
              {"word", format_braid_word(w)},
              {"gauss_code", serialize_gauss_code(in.diagram)},
              {"diagram", io::to_json(in.diagram)}};
  emit(config, out, report(config, {in}, parameters(config, std::nullopt), std::move(result)),
       serialize_gauss_code(in.diagram) + "\n");
  return kExitOk;
}

int cmd_demo(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.inputs.size() != 1) throw InputError("demo takes one of: hopf, borromean, hughes, fuzz");
  const std::string& name = config.inputs[0];
  if (name == "hopf") return demo_hopf(config, out);
  if (name == "borromean") return demo_borromean(config, out);
  if (name == "hughes") return demo_hughes(config, out, err);
  if (name == "fuzz") return demo_fuzz(config, out);
  throw InputError("unknown demo '" + name + "'");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.subcommand == "parse") return cmd_parse(config, out, err);
    if (config.subcommand == "sort") return cmd_sort(config, out, err);
    if (config.subcommand == "peripheral") return cmd_peripheral(config, out, err);
    if (config.subcommand == "milnor") return cmd_milnor(config, out, err);
    if (config.subcommand == "compare") return cmd_compare(config, out, err);
    if (config.subcommand == "certify") return cmd_certify(config, out, err);
    if (config.subcommand == "braid") return cmd_braid(config, out, err);
    if (config.subcommand == "demo") return cmd_demo(config, out, err);
    err << "error: unknown command '" << config.subcommand << "'\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error at " << e.position() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const DiagramError& e) {
    err << "invalid diagram: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CertificateError& e) {
    err << "malformed certificate: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "bad JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace weldkit::cli
