#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "hlearn/cli.hpp"
#include "hlearn/complexity.hpp"
#include "hlearn/inconsistency.hpp"
#include "hlearn/io.hpp"

namespace hlearn {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = dispatch(args, out, err);
  return {status, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hlearn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  const std::string reopen_ = testing::data_path("data/reopen/reopen.json");
  const std::string reopen_rho_ = testing::data_path("data/reopen_rho.json");
};

TEST_F(CliTest, ShatterReportsAllPatterns) {
  const auto r = run({"shatter", "--n", "8", "--algo", "gbfs", "--exhaustive"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto doc = Json::parse(r.out);
  EXPECT_EQ(doc.at("result").at("achieved"), 16);
  EXPECT_EQ(doc.at("result").at("pattern_space"), 16);
  EXPECT_EQ(doc.at("manifest").at("subcommand"), "shatter");
}

TEST_F(CliTest, InfeasibleInstanceExitsOne) {
  const auto infeasible = testing::data_path("data/infeasible.json");
  const auto rho = path("rho.json");
  write_file(rho, R"({"values":{"s":"0","a":"0","t":"0"}})");
  EXPECT_EQ(run({"run", "--algo", "gbfs", "--instance", infeasible, "--rho", rho}).status, kExitInvalidInput);
  EXPECT_EQ(run({"validate", "--instance", infeasible}).status, kExitInvalidInput);
  EXPECT_EQ(run({"validate", "--instance", reopen_}).status, kExitOk);
  EXPECT_EQ(run({"opt", "--instance", path("missing.json")}).status, kExitInvalidInput);
}

TEST_F(CliTest, InjectedFaultExitsTwo) {
  const auto r = run({"check-bound", "--sweep", "100", "--max-n", "12", "--inject-fault", "flip-max"});
  EXPECT_EQ(r.status, kExitTheoryViolation);
  EXPECT_NE(r.err.find("theory violation"), std::string::npos);
  EXPECT_EQ(run({"check-bound", "--sweep", "100", "--max-n", "12"}).status, kExitOk);
  EXPECT_EQ(run({"check-bound", "--instance", reopen_, "--rho", reopen_rho_, "--reopen", "false", "--inject-fault",
                 "flip-max"})
                .status,
            kExitTheoryViolation);
}

TEST_F(CliTest, UsageErrorsExit64) {
  EXPECT_EQ(run({}).status, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).status, kExitUsage);
  EXPECT_EQ(run({"shatter", "--n", "8", "--bogus"}).status, kExitUsage);
  EXPECT_EQ(run({"run", "--algo", "dfs", "--instance", reopen_, "--rho", reopen_rho_}).status, kExitUsage);
  EXPECT_EQ(run({"check-bound"}).status, kExitUsage);
  EXPECT_EQ(run({"shatter", "--n", "8", "--format", "xml"}).status, kExitUsage);
  EXPECT_EQ(run({"--help"}).status, kExitOk);
}

TEST_F(CliTest, RunEvalInconsistencyLedgerOnTheFixture) {
  auto r = run({"run", "--algo", "astar", "--reopen", "false", "--instance", reopen_, "--rho", reopen_rho_,
                "--emit-trace", path("trace.json")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(Json::parse(r.out).at("result").at("cost"), "5");
  const auto trace = parse_json(read_file(path("trace.json")));
  EXPECT_EQ(trace.at("snapshots").size(), 5u);

  r = run({"eval", "--measure", "subopt", "--cap", "10", "--algo", "astar", "--reopen", "false", "--instance", reopen_,
           "--rho", reopen_rho_});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(Json::parse(r.out).at("result").at("value"), "1");

  r = run({"inconsistency", "--instance", reopen_, "--rho", reopen_rho_});
  EXPECT_EQ(Json::parse(r.out).at("result").at("delta"), "2");

  r = run({"ledger", "--instance", reopen_, "--rho", reopen_rho_, "--reopen", "true"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(Json::parse(r.out).at("result").at("passed"), true);

  r = run({"opt", "--instance", reopen_});
  EXPECT_EQ(Json::parse(r.out).at("result").at("opt"), "4");
}

TEST_F(CliTest, LearnWritesARhoFile) {
  const auto out = path("learned.json");
  const auto r = run({"learn", "--corpus", testing::data_path("data/chain"), "--init", "given", "--rho-init",
                      testing::data_path("data/chain_rho.json"), "--steps", "2000", "--out", out});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto rho = load_rho(out, testing::chain().labels());
  EXPECT_EQ(inconsistency(testing::chain(), rho).delta, 0);
  EXPECT_TRUE(fs::exists(out + ".manifest.json"));
  EXPECT_EQ(run({"learn", "--corpus", testing::data_path("data/chain"), "--init", "given"}).status, kExitUsage);
}

TEST_F(CliTest, LowerBoundWritesTheFamily) {
  const auto r = run({"lower-bound", "--n", "8", "--subset", "2,3", "--out", path("family")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  for (int i = 1; i <= 4; ++i) EXPECT_TRUE(fs::exists(path("family/x" + std::to_string(i) + ".json")));
  const auto manifest = parse_json(read_file(path("family/manifest.json")));
  EXPECT_EQ(manifest.at("outputs").size(), 5u);
  const auto x2 = load_instance(path("family/x2.json"));
  const auto rho = load_rho(path("family/rho.json"), x2.labels());
  EXPECT_EQ(run_gbfs(x2, rho).cost, 3);
}

TEST_F(CliTest, CensusAndGcosts) {
  ASSERT_EQ(run({"lower-bound", "--n", "6", "--out", path("six")}).status, kExitOk);
  fs::remove(path("six/manifest.json"));
  auto r = run({"census", "--algo", "gbfs", "--corpus", path("six"), "--permutations"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(Json::parse(r.out).at("result").at("order_count"), 720);
  r = run({"census", "--algo", "astar", "--corpus", path("six"), "--samples", "50", "--seed", "3"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(Json::parse(r.out).at("result").at("rho_evaluated"), 50);
  EXPECT_EQ(run({"census", "--algo", "gbfs", "--corpus", path("six"), "--samples", "5"}).status, kExitUsage);

  save_instance(path("gadget.json"), powers_of_two_gadget(4));
  r = run({"gcosts", "--instance", path("gadget.json"), "--format", "csv"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.out.find("v1,5,5,"), std::string::npos);
  EXPECT_NE(r.err.find("manifest: "), std::string::npos);
}

TEST_F(CliTest, GapWritesCsvAndIsReproducible) {
  const auto config = testing::data_path("data/gap_small.json");
  ASSERT_EQ(run({"gap", "--config", config, "--out", path("a.csv"), "--bound-shape", path("shape.csv")}).status,
            kExitOk);
  ASSERT_EQ(run({"gap", "--config", config, "--out", path("b.csv"), "--jobs", "3"}).status, kExitOk);
  const auto a = read_file(path("a.csv"));
  EXPECT_EQ(a, read_file(path("b.csv")));
  EXPECT_EQ(a.substr(0, a.find('\n')), "N,trial,train_inc,heldout_inc,heldout_subopt,max_grid_gap");
  const auto manifest = parse_json(read_file(path("a.csv.manifest.json")));
  EXPECT_EQ(manifest.at("config").at("trials"), 2);
  EXPECT_EQ(manifest.at("inputs").at(0).at("fnv1a64").get<std::string>().size(), 16u);
  EXPECT_TRUE(fs::exists(path("shape.csv")));
}

TEST_F(CliTest, OutputsAreByteIdenticalOnRerun) {
  const std::vector<std::string> base{"shatter", "--n", "12", "--algo", "astar", "--samples", "200", "--seed", "5"};
  auto first = base;
  first.insert(first.end(), {"--out", path("one.json")});
  auto second = base;
  second.insert(second.end(), {"--out", path("two.json"), "--jobs", "4"});
  ASSERT_EQ(run(first).status, kExitOk);
  ASSERT_EQ(run(second).status, kExitOk);
  EXPECT_EQ(read_file(path("one.json")), read_file(path("two.json")));
}

}  // namespace
}  // namespace hlearn
