#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "weldkit_cli/commands.hpp"

namespace weldkit::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_with(RunConfig config, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  config.stdin_stream = &in;
  const int code = run(config, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config_for(const std::string& sub, std::vector<std::string> inputs) {
  RunConfig c;
  c.subcommand = sub;
  c.inputs = std::move(inputs);
  return c;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("weldkit_cli_test_" + name);
}

const std::string kHopfPlus = "braid:2:s1 s1";
const std::string kHopfMinus = "braid:2:s1^-1 s1^-1";

TEST(Cli, ParseReportsNormalForm) {
  const Outcome o = run_with(config_for("parse", {"t7 h9+ / h7+ t9"}));
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["schema"], "weldkit/report/v1");
  EXPECT_EQ(j["result"]["gauss_code"], "t1 h2+ / h1+ t2");
  EXPECT_EQ(j["inputs"][0]["source"], "t7 h9+ / h7+ t9");
}

TEST(Cli, ParseErrorsExitTwo) {
  EXPECT_EQ(run_with(config_for("parse", {"t1 h2+"})).code, kExitUsage);
  EXPECT_EQ(run_with(config_for("parse", {"braid:2:s5"})).code, kExitUsage);
  EXPECT_EQ(run_with(config_for("parse", {"/nonexistent/file.json"})).code, kExitUsage);
  RunConfig c = config_for("milnor", {"t1 h2+ / t2 h1+"});
  c.max_length = 3;
  EXPECT_EQ(run_with(c).code, kExitUsage);
}

TEST(Cli, ReadsStdin) {
  const Outcome o = run_with(config_for("parse", {"-"}), "t1 h2+ / h1+ t2\n");
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(nlohmann::json::parse(o.out)["result"]["gauss_code"], "t1 h2+ / h1+ t2");
}

TEST(Cli, MilnorExample) {
  RunConfig c = config_for("milnor", {"t1 h2+ / t2 h1+"});
  c.max_length = 2;
  const Outcome o = run_with(c);
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto report = nlohmann::json::parse(o.out);
  bool found = false;
  for (const auto& e : report["result"]["table"]["entries"]) {
    if (e["I"].get<std::vector<int>>() == std::vector<int>{2} && e["j"] == 1) found = e["mu"] == 1;
  }
  EXPECT_TRUE(found);
}

TEST(Cli, CompareExitCodesFollowVerdicts) {
  const Outcome distinct = run_with(config_for("compare", {kHopfPlus, kHopfMinus}));
  EXPECT_EQ(distinct.code, kExitDistinct);
  EXPECT_EQ(nlohmann::json::parse(distinct.out)["result"]["witness"]["label"], "(2;1)");

  EXPECT_EQ(run_with(config_for("compare", {kHopfPlus, "t1 h2+ / t2 h1+"})).code, kExitOk);

  // Equivalent pair out of reach of a one-step search.
  RunConfig c = config_for("compare", {"t1 t2 h3+ h4- / t3 h1+ / t4 h2-", "t1 t2 h4- h3+ / t3 h1+ / t4 h2-"});
  c.bounds.depth = 1;
  c.bounds.conj_len = 0;
  c.bounds.coset_max = 0;
  const Outcome unknown = run_with(c);
  EXPECT_EQ(unknown.code, kExitUnknown) << unknown.out;
  c.bounds = SearchBounds{};
  EXPECT_EQ(run_with(c).code, kExitOk);
}

TEST(Cli, ReportsAreByteIdentical) {
  RunConfig c = config_for("compare", {"t1 t2 h3+ h4- / t3 h1+ / t4 h2-", "t1 t2 h4- h3+ / t3 h1+ / t4 h2-"});
  c.bounds.threads = 1;
  const Outcome a = run_with(c);
  c.bounds.threads = 3;
  const Outcome b = run_with(c);
  EXPECT_EQ(a.out, b.out);
  RunConfig fuzz = config_for("demo", {"fuzz"});
  fuzz.seed = 9;
  fuzz.count = 10;
  EXPECT_EQ(run_with(fuzz).out, run_with(fuzz).out);
  fuzz.seed = 10;
  EXPECT_NE(run_with(fuzz).out, run_with(config_for("demo", {"fuzz"})).out);
}

TEST(Cli, CertifyAndCheck) {
  const auto cert = temp_path("cert.json");
  RunConfig c = config_for("certify", {"t1 t2 h3+ h4- / t3 h1+ / t4 h2-", "t1 t2 h4- h3+ / t3 h1+ / t4 h2-"});
  c.output = cert.string();
  ASSERT_EQ(run_with(c).code, kExitOk);

  RunConfig check = config_for("certify", {cert.string()});
  check.check = true;
  const Outcome ok = run_with(check);
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_EQ(nlohmann::json::parse(ok.out)["result"]["valid"], true);

  // Swap A and B's first longitude for something else.
  auto doc = nlohmann::json::parse(std::ifstream(cert));
  doc["A"]["longitudes"][0] = nlohmann::json::array({2, 3});
  std::ofstream(cert) << doc.dump();
  EXPECT_EQ(run_with(check).code, kExitFailed);

  std::ofstream(cert) << R"({"schema": "something/else"})";
  EXPECT_EQ(run_with(check).code, kExitUsage);
  std::filesystem::remove(cert);

  // Distinct pairs produce no certificate.
  EXPECT_EQ(run_with(config_for("certify", {kHopfPlus, kHopfMinus})).code, kExitDistinct);
}

TEST(Cli, SortWritesTrace) {
  const auto trace = temp_path("trace.jsonl");
  RunConfig c = config_for("sort", {"t1 h2+ t3 h1+ / t2 h3+"});
  c.trace_path = trace.string();
  const Outcome o = run_with(c);
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(nlohmann::json::parse(o.out)["result"]["trace_verified"], true);
  std::ifstream in(trace);
  std::string first;
  std::getline(in, first);
  EXPECT_TRUE(nlohmann::json::parse(first).contains("initial"));
  std::filesystem::remove(trace);
}

TEST(Cli, BraidAndTextFormat) {
  RunConfig c = config_for("braid", {});
  c.strands = 2;
  c.braid_word = "s1 s1";
  c.format = Format::text;
  const Outcome o = run_with(c);
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_EQ(o.out, "t1 h2+ / h1+ t2\n");
  c.strands = 0;
  EXPECT_EQ(run_with(c).code, kExitUsage);
}

TEST(Cli, Demos) {
  EXPECT_EQ(run_with(config_for("demo", {"hopf"})).code, kExitOk);
  EXPECT_EQ(run_with(config_for("demo", {"borromean"})).code, kExitOk);
  EXPECT_EQ(run_with(config_for("demo", {"nonsense"})).code, kExitUsage);

  // The shipped Hughes braids are substitutes: loud failure either way.
  const Outcome hughes = run_with(config_for("demo", {"hughes"}));
  EXPECT_EQ(hughes.code, kExitUnverifiedFixture);
  EXPECT_NE(hughes.err.find("substitute"), std::string::npos);
  RunConfig allow = config_for("demo", {"hughes"});
  allow.allow_substitute = true;
  const Outcome forced = run_with(allow);
  EXPECT_EQ(forced.code, kExitUnverifiedFixture);
  EXPECT_EQ(nlohmann::json::parse(forced.out)["result"]["tables_equal"], true);

  RunConfig missing = config_for("demo", {"hughes"});
  missing.fixtures_dir = "/nonexistent";
  EXPECT_EQ(run_with(missing).code, kExitUsage);
}

TEST(Cli, TranscribedFixturesPassTheDemo) {
  // The substitute pair relabelled as transcribed exercises the success path.
  const auto dir = temp_path("fixtures");
  std::filesystem::create_directories(dir);
  auto doc = nlohmann::json::parse(std::ifstream(std::filesystem::path(WELDKIT_FIXTURES_DIR) / "hughes.json"));
  doc["status"] = "transcribed";
  std::ofstream(dir / "hughes.json") << doc.dump();
  RunConfig c = config_for("demo", {"hughes"});
  c.fixtures_dir = dir.string();
  const Outcome o = run_with(c);
  EXPECT_EQ(o.code, kExitOk) << o.err << o.out;
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace weldkit::cli
