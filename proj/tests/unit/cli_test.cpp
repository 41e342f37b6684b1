// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "saturator/cli.hpp"
#include "saturator/presburger.hpp"
#include "saturator/tree_check.hpp"
#include "saturator/zgroup.hpp"
#include "transcripts.hpp"
#include "zgroup_support.hpp"

namespace saturator {
namespace {

using nlohmann::json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kModel = std::string(SATURATOR_SOURCE_DIR) + "/tests/golden/data/two_generators.json";

TEST(Golden, TranscriptsReproduceByteForByte) {
  const auto cases = testing::parse_transcripts(testing::read_text(SATURATOR_SOURCE_DIR "/tests/golden/cli.golden"));
  ASSERT_GE(cases.size(), 20u);
  for (const auto& c : cases) {
    const auto first = testing::run_transcript(SATURATOR_CLI_BINARY, c.command);
    const auto second = testing::run_transcript(SATURATOR_CLI_BINARY, c.command);
    EXPECT_EQ(first.out, c.expected) << "line " << c.line << ": " << c.command;
    EXPECT_EQ(first.exit_code, c.exit_code) << "line " << c.line << ": " << c.command;
    EXPECT_EQ(first.out, second.out) << c.command;
  }
}

TEST(RunCli, UsageOnBadFlags) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {}, {"qe", "--bogus", "x"}, {"frobnicate"}, {"--budget-search", "0", "qe", "0 < 1"}}) {
    const CliRun r = run(args);
    EXPECT_EQ(r.code, kExitInput);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("Usage:"), std::string::npos);
  }
  const CliRun help = run({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("rcf-decide"), std::string::npos);
}

TEST(RunCli, ErrorsAreVersionedJson) {
  const CliRun parse = run({"qe", "E v. (a <"});
  EXPECT_EQ(parse.code, kExitInput);
  const json j = json::parse(parse.out);
  EXPECT_EQ(j["v"], 1);
  EXPECT_EQ(j["error"]["kind"], "parse");

  const CliRun sig = run({"decide", "--sig", "og", "P2(0)"});
  EXPECT_EQ(sig.code, kExitInput);
  EXPECT_EQ(json::parse(sig.out)["error"]["kind"], "input");

  const CliRun open = run({"decide", "--sig", "pr", "a < 1"});
  EXPECT_EQ(open.code, kExitInput);

  const CliRun budget = run({"--budget-search", "3", "type-of", "--model", kModel, "--element", "c2", "--element", "c1",
                             "--context", "c1", "--depth", "30", "--mode", "reduction"});
  EXPECT_EQ(budget.code, kExitBudget);
  EXPECT_EQ(json::parse(budget.out)["error"]["kind"], "budget");
}

TEST(RunCli, EnvironmentBudget) {
  ::setenv("SATURATOR_BUDGET", "3", 1);
  const CliRun r = run({"type-of", "--model", kModel, "--element", "c2", "--element", "c1", "--context", "c1", "--depth",
                        "30", "--mode", "reduction"});
  ::unsetenv("SATURATOR_BUDGET");
  EXPECT_EQ(r.code, kExitBudget);
  const CliRun flag = run({"--budget-search", "100000", "type-of", "--model", kModel, "--element", "c2", "--element",
                           "c1", "--context", "c1", "--depth", "30", "--mode", "reduction"});
  EXPECT_EQ(flag.code, kExitOk);
}

TEST(RunCli, SubcommandsAreThinAdapters) {
  const std::string text = "E v. (P2(v) & a < v & v < b)";
  const json qe = json::parse(run({"qe", "--sig", "pr", text}).out);
  const Qff q = cooper_qe(parse_formula(text, Signature::Presburger));
  EXPECT_EQ(qe["qff"], to_string(q.to_formula()));
  EXPECT_EQ(qe["literals"], q.literal_count());
  EXPECT_EQ(formula_from_json_text(qe["ast"].dump(), Signature::Presburger), q.to_formula());

  const json tree = json::parse(run({"tree-check", "--sig", "pr", "--depth", "5"}).out);
  const TreeReport report = perfect_tree_check(Signature::Presburger, 5);
  EXPECT_EQ(tree["nodes"], report.nodes);
  EXPECT_EQ(tree["checks"], report.checks);
  EXPECT_EQ(tree["status"], "pass");

  const CliRun listed = run({"build-model", "--from", kModel});
  EXPECT_EQ(json::parse(listed.out)["generators"], json::array({"c1", "c2"}));
  EXPECT_EQ(json::parse(listed.out)["model"].dump(), testing::two_generator_model().to_json_text());
}

TEST(RunCli, IncoherentPrefixIsRejectedWithPointer) {
  const CliRun r = run({"build-model", "--generator", "c1@1", "--profile",
                        R"(c1={"kind":"prefix","residues":[{"modulus":"2","residue":"1"},{"modulus":"4","residue":"0"}]})"});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_EQ(json::parse(r.out)["error"]["pointer"], "/residues/1");

  const CliRun cut = run({"extend", "--model", kModel, "--case", "1", "--cut",
                          R"({"upper":"c1","residues":[{"modulus":"3","residue":"1"},{"modulus":"9","residue":"2"}]})"});
  EXPECT_EQ(cut.code, kExitInput);
  EXPECT_EQ(json::parse(cut.out)["error"]["pointer"], "/residues/1");

  const CliRun unknown = run({"extend", "--model", kModel, "--case", "1", "--cut", R"({"upper":"c7"})"});
  EXPECT_EQ(json::parse(unknown.out)["error"]["pointer"], "/upper");
}

TEST(RunCli, WrongCaseIsAPreconditionError) {
  const CliRun r = run({"extend", "--model", kModel, "--case", "1", "--cut", R"({"lower":"c1"})"});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(json::parse(r.out)["error"]["message"].get<std::string>().find("realized"), std::string::npos);
}

TEST(RunCli, SavedExtensionReplaysDecisions) {
  const auto path = std::filesystem::temp_directory_path() / "saturator_cli_case2.json";
  const CliRun r = run({"extend", "--model", kModel, "--case", "2", "--cut", R"({"lower":"c1","residues":{"kind":"standard","value":"1"}})",
                        "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  const ZModel loaded = ZModel::from_json_text(testing::read_text(path.string()));
  std::filesystem::remove(path);

  const ZModel old = testing::two_generator_model();
  const CaseTwoExtension e = extend_case2(old, testing::realized_cut(old), old.generator(1));
  ASSERT_EQ(loaded.size(), e.model.size());
  std::vector<ModelElement> tuple, loaded_tuple;
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    tuple.push_back(e.model.generator(i));
    loaded_tuple.push_back(loaded.generator(i));
  }
  tuple.push_back(e.realization);
  loaded_tuple.push_back(loaded.add(loaded.generator(1), loaded.generator(2)));
  EXPECT_TRUE(testing::disagreements(type_of(e.model, tuple), type_of(loaded, loaded_tuple), 99).empty());
}

}  // namespace
}  // namespace saturator
