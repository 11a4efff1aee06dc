#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "a1cell/cli.hpp"

using namespace a1cell;
using a1cell::cli::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "a1cell");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), "--json");
  const Outcome o = run(args);
  EXPECT_EQ(o.code, 0) << o.err;
  return json::parse(o.out);
}

} // namespace

TEST(Cli, ClassifyExamples) {
  EXPECT_EQ(run_json({"classify", "A", "2"})["results"]["classification"], "KM2");
  EXPECT_EQ(run_json({"classify", "C", "3"})["results"]["classification"], "KMW2");
  EXPECT_EQ(run_json({"classify", "G", "2"})["results"]["classification"], "KM2");
  const json b2 = run_json({"classify", "B", "2"});
  EXPECT_EQ(b2["inputs"]["type"], "C2");
  EXPECT_EQ(b2["inputs"]["requestedType"], "B2");
  EXPECT_EQ(b2["results"]["classification"], "KMW2");
}

TEST(Cli, ReportSchema) {
  const json r = run_json({"--seed", "17", "classify", "A", "3"});
  for (const char *k : {"schemaVersion", "command", "inputs", "results", "provenance"}) EXPECT_TRUE(r.contains(k)) << k;
  EXPECT_EQ(r["schemaVersion"], cli::kSchemaVersion);
  EXPECT_EQ(r["command"], "classify");
  EXPECT_EQ(r["inputs"]["seed"], 17);
}

TEST(Cli, HomologyExamples) {
  const json g = run_json({"homology", "group", "A", "2", "--real"});
  EXPECT_EQ(g["results"]["degrees"][0]["group"], "Z/2");
  EXPECT_TRUE(g["results"]["tauSweep"]["1"]["invariant"].get<bool>());
  const json pn = run_json({"homology", "pn", "3", "--real"});
  std::vector<std::string> groups;
  for (const auto &d : pn["results"]["degrees"]) groups.push_back(d["group"]);
  EXPECT_EQ(groups, (std::vector<std::string>{"Z", "Z/2", "0", "Z"}));
  const json milnor = run_json({"homology", "--milnor", "group", "C", "2"});
  EXPECT_EQ(milnor["results"]["degrees"][0]["freeRank"], 1);
  EXPECT_EQ(milnor["results"]["degrees"][0]["torsion"].size(), 0u);
  const json flag = run_json({"homology", "flag", "C", "3"});
  EXPECT_EQ(flag["results"]["degrees"][1]["symbolic"], "Gm^2 + KMW1");
  const json sl2 = run_json({"homology", "--complex", "sl2"});
  EXPECT_EQ(sl2["results"]["degrees"][1]["symbolic"], "KMW2");
  EXPECT_EQ(sl2["results"]["degrees"][1]["group"], "0");
}

TEST(Cli, HomologyMatricesAndFixedSigns) {
  const json p = run_json({"classify", "A", "2"});
  const std::string tau = p["results"]["tauSymbols"][0];
  const json g = run_json({"--signs", tau + "=-1", "homology", "--matrices", "group", "A", "2"});
  EXPECT_EQ(g["results"]["degrees"][0]["group"], "Z/2");
  EXPECT_EQ(g["results"]["tauSweep"]["1"]["assignments"], 1);
  ASSERT_TRUE(g["results"].contains("matrices"));
  EXPECT_EQ(g["results"]["matrices"].size(), 2u);
}

TEST(Cli, Pi3AndTable) {
  const json p = run_json({"pi3", "E", "8"});
  EXPECT_EQ(p["results"]["group"], "Z");
  EXPECT_TRUE(p["results"]["leftInjective"].get<bool>());
  EXPECT_EQ(p["results"]["leftRank"], 35);
  const json t = run_json({"table", "--max-rank", "8"});
  for (const auto &row : t["results"]["rows"]) {
    const bool c = row["symplectic"].get<bool>();
    EXPECT_EQ(row["classification"], c ? "KMW2" : "KM2") << row["type"];
    EXPECT_EQ(row["realPi1"], c ? "Z" : "Z/2") << row["type"];
    EXPECT_EQ(row["pi3"], "Z");
    EXPECT_EQ(row["suslinH1Rank"], 1);
  }
}

TEST(Cli, TextOutput) {
  const Outcome o = run({"classify", "C", "2"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("KMW2"), std::string::npos);
  const Outcome t = run({"table", "--max-rank", "2"});
  EXPECT_NE(t.out.find("G2"), std::string::npos);
}

TEST(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run({"classify", "E", "5"}).code, 2);
  EXPECT_EQ(run({"classify", "X", "2"}).code, 2);
  EXPECT_EQ(run({"classify", "A"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"table", "--max-rank", "9"}).code, 2);
  EXPECT_EQ(run({"homology", "pn", "0"}).code, 2);
  EXPECT_EQ(run({"homology", "pn", "3", "--to", "7"}).code, 2);
  EXPECT_EQ(run({"homology", "--real", "--milnor", "pn", "3"}).code, 2);
  EXPECT_EQ(run({"--signs", "-1=1", "homology", "group", "A", "2"}).code, 2);
  EXPECT_EQ(run({"--signs", "tau.9.9=1", "homology", "group", "A", "2"}).code, 2);
  EXPECT_EQ(run({"--signs", "tau.1.2=3", "homology", "group", "A", "2"}).code, 2);
  EXPECT_EQ(run({"pi3", "A", "1"}).code, 2);
  const Outcome o = run({"classify", "D", "2"});
  EXPECT_NE(o.err.find("family D"), std::string::npos);
}

TEST(Cli, HelpExitsWithZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, GuardMapsInvariantViolationsToOne) {
  std::ostringstream err;
  EXPECT_EQ(cli::run_guarded([]() -> int { throw InvariantViolation("composite-zero failed"); }, err), 1);
  EXPECT_NE(err.str().find("composite-zero"), std::string::npos);
  EXPECT_EQ(cli::run_guarded([]() -> int { throw InvalidInput("bad"); }, err), 2);
  EXPECT_EQ(cli::run_guarded([]() -> int { return 0; }, err), 0);
}

TEST(Cli, TableGoldenFile) {
  const Outcome first = run({"--json", "table", "--max-rank", "4"});
  const Outcome second = run({"--json", "table", "--max-rank", "4"});
  ASSERT_EQ(first.code, 0);
  EXPECT_EQ(first.out, second.out);
  std::ifstream in(std::string(A1CELL_GOLDEN_DIR) + "/table_rank4.json");
  ASSERT_TRUE(in) << "missing golden file";
  std::stringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(first.out, golden.str());
}
