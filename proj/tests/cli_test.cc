#include "nzflow/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "naive.h"
#include "nzflow/formats.h"
#include "nzflow/testkit.h"

namespace nzflow {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nzflow_cli_" + std::string(::testing::UnitTest::GetInstance()
                                            ->current_test_info()
                                            ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

TEST_F(Cli, SolveThenVerifyAllModes) {
  const std::string graph = file("p.nzf", graph_to_string(naive::petersen()));
  const Result solved = run({"solve", graph, "--root", "3"});
  ASSERT_EQ(solved.code, cli::kOk) << solved.err;
  const std::string flow = file("p.flow", solved.out);
  for (const char* mode : {"group", "theorem2", "k6"}) {
    const Result v = run({"verify", graph, flow, "--mode", mode});
    EXPECT_EQ(v.code, cli::kOk) << mode << ": " << v.err;
  }
}

TEST_F(Cli, SolveFromStdinMachineFormat) {
  const Result r = run({"solve", "-", "--format", "machine", "--trace", "--debug-verify"},
                       graph_to_string(naive::k4()));
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const FlowDocument doc = parse_flow_string(r.out);
  EXPECT_EQ(doc.root, VertexId{0});
  EXPECT_EQ(doc.edges.size(), 6u);
  EXPECT_FALSE(doc.trace.empty());
}

TEST_F(Cli, PathGraphIsStructural) {
  const Result r = run({"solve", "-"}, "p nzf 3 2\ne 0 1\ne 1 2\n");
  EXPECT_EQ(r.code, cli::kStructural);
  EXPECT_NE(r.err.find("bridge"), std::string::npos);
  EXPECT_NE(r.err.find('0'), std::string::npos);
}

TEST_F(Cli, MalformedHeaderIsInputError) {
  EXPECT_EQ(run({"solve", "-"}, "p graph 3\n").code, cli::kInputError);
  EXPECT_EQ(run({"solve"}).code, cli::kInputError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kInputError);
  EXPECT_EQ(run({"solve", (dir_ / "missing").string()}).code, cli::kInputError);
}

TEST_F(Cli, TamperedF3FailsVerification) {
  const std::string graph = file("t.nzf", graph_to_string(naive::triangle()));
  const Result solved = run({"solve", graph});
  ASSERT_EQ(solved.code, cli::kOk);
  FlowDocument doc = parse_flow_string(solved.out);
  doc.edges[1].pair.f3 = doc.edges[1].pair.f3 + Z3Elem(1);
  doc.edges[1].z6.reset();
  doc.edges[1].int6.reset();
  const std::string flow = file("t.flow", flow_to_string(doc, FlowFormat::kText));
  const Result v = run({"verify", graph, flow, "--mode", "group"});
  EXPECT_EQ(v.code, cli::kVerifyFailed);
  EXPECT_NE(v.err.find("vertex"), std::string::npos);
}

TEST_F(Cli, FlowForAnotherGraph) {
  const std::string tri = file("t.nzf", graph_to_string(naive::triangle()));
  const std::string k4 = file("k.nzf", graph_to_string(naive::k4()));
  const std::string flow = file("t.flow", run({"solve", tri}).out);
  EXPECT_EQ(run({"verify", k4, flow}).code, cli::kInputError);
}

TEST_F(Cli, ConvertRecomputesColumns) {
  const std::string graph = file("k.nzf", graph_to_string(naive::k4()));
  const FlowDocument solved = parse_flow_string(run({"solve", graph}).out);
  FlowDocument bare = solved;
  for (FlowRecord& r : bare.edges) {
    r.z6.reset();
    r.int6.reset();
  }
  const std::string flow = file("bare.flow", flow_to_string(bare, FlowFormat::kText));
  const Result c = run({"convert", graph, flow});
  ASSERT_EQ(c.code, cli::kOk) << c.err;
  EXPECT_EQ(parse_flow_string(c.out), solved);

  FlowDocument wrong = solved;
  wrong.edges[0].z6 = wrong.edges[0].z6.value() + Z6Elem(1);
  const std::string bad = file("bad.flow", flow_to_string(wrong, FlowFormat::kText));
  EXPECT_EQ(run({"convert", graph, bad}).code, cli::kVerifyFailed);
}

TEST_F(Cli, GenIsDeterministic) {
  const Result a = run({"gen", "-n", "50", "--extra-ears", "10", "--seed", "9"});
  const Result b = run({"gen", "-n", "50", "--extra-ears", "10", "--seed", "9"});
  ASSERT_EQ(a.code, cli::kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(parse_graph_string(a.out), testkit::random_2ec_multigraph(50, 10, 9));
}

TEST_F(Cli, OracleAndGuards) {
  const Result ok = run({"oracle", "-"}, graph_to_string(naive::triangle()));
  EXPECT_EQ(ok.code, cli::kOk);
  EXPECT_NE(ok.out.find("holds"), std::string::npos);
  const Result path = run({"oracle", "-"}, "p nzf 2 1\ne 0 1\n");
  EXPECT_EQ(path.code, cli::kStructural);
  const Result big = run({"oracle", "-", "--guard-edges", "4"}, graph_to_string(naive::k4()));
  EXPECT_EQ(big.code, cli::kStructural);
}

TEST_F(Cli, BenchRowsPerSizeAndSeed) {
  const Result r = run({"bench", "--sizes", "10,20", "--seeds", "1,2", "--repetitions", "1"});
  ASSERT_EQ(r.code, cli::kOk);
  std::istringstream lines(r.out);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 5u);
}

}  // namespace
}  // namespace nzflow
