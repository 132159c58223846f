#include "polytree_cli/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include <gtest/gtest.h>

#include "polytree/gen.hpp"
#include "polytree/scoreio.hpp"
#include "polytree_cli/bench.hpp"
#include "test_support.hpp"

namespace polytree::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const char* base = std::getenv("POLYTREE_TEST_TMP");
    dir_ = fs::path(base ? base : fs::temp_directory_path().string()) /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string file(const std::string& name, const std::string& text) const {
    write_text_file(path(name), text);
    return path(name);
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  nlohmann::json record() const { return nlohmann::json::parse(out_.str()); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, SolveAllEmpty) {
  const auto scores = file("tiny.jkl", "2\nA 1\n0 0\nB 1\n0 0\n");
  EXPECT_EQ(run({"solve", "--scores", scores, "--algo", "dp"}), kExitOk);
  EXPECT_EQ(record()["score"], 0.0);
  EXPECT_TRUE(record()["arcs"].empty());
}

TEST_F(CliTest, SolveRefusesLargeWithoutForce) {
  std::string text = "30\n";
  for (int i = 0; i < 30; ++i) text += "X" + std::to_string(i) + " 1\n0 0\n";
  const auto scores = file("big.jkl", text);
  EXPECT_EQ(run({"solve", "--scores", scores, "--algo", "dp"}), kExitRefused);
  EXPECT_NE(err_.str().find("refused"), std::string::npos);
}

TEST_F(CliTest, PrunedMatchesFull) {
  GenConfig cfg;
  cfg.n = 9;
  cfg.seed = 17;
  const auto scores = file("suite.jkl", write_scores(random_instance(cfg)));
  ASSERT_EQ(run({"solve", "--scores", scores, "--algo", "dp"}), kExitOk);
  const auto full = record();
  ASSERT_EQ(run({"solve", "--scores", scores, "--algo", "dp-pruned", "--slack", "2"}), kExitOk);
  EXPECT_EQ(record()["score"], full["score"]);
  EXPECT_EQ(record()["algorithm"], "dp-pruned");
}

TEST_F(CliTest, SolveComponentBoundNeedsBrute) {
  const auto scores = file("hub.jkl", write_scores(adversarial_hub(5, 10, 9)));
  EXPECT_EQ(run({"solve", "--scores", scores, "--max-component-arcs", "2"}), kExitRefused);
  ASSERT_EQ(run({"solve", "--scores", scores, "--algo", "brute", "--max-component-arcs", "2"}),
            kExitOk);
  EXPECT_EQ(record()["score"], 27.0);
  ASSERT_EQ(run({"solve", "--scores", scores, "--algo", "brute", "--connected"}), kExitOk);
  EXPECT_EQ(record()["arcs"].size(), 5u);
}

TEST_F(CliTest, ApproxGreedyReportsBound) {
  const auto scores = file("hub.jkl", write_scores(adversarial_hub(5, 10, 9)));
  ASSERT_EQ(run({"approx", "--scores", scores, "--algo", "greedy", "--audit"}), kExitOk);
  EXPECT_EQ(record()["score"], 10.0);
  EXPECT_EQ(record()["ratio_bound"], 6.0);
}

TEST_F(CliTest, ApproxDensitySingleArcs) {
  GenConfig cfg;
  cfg.n = 7;
  cfg.seed = 5;
  const auto scores = file("r.jkl", write_scores(random_instance(cfg)));
  ASSERT_EQ(run({"approx", "--scores", scores, "--algo", "density", "--max-component-arcs", "1"}),
            kExitOk);
  std::set<std::string> touched;
  for (const auto& arc : record()["arcs"]) {
    EXPECT_TRUE(touched.insert(arc[0].get<std::string>()).second);
    EXPECT_TRUE(touched.insert(arc[1].get<std::string>()).second);
  }
  EXPECT_EQ(record()["ratio_bound"], 2.0);
  EXPECT_EQ(run({"approx", "--scores", scores, "--algo", "density"}), kExitError);
}

TEST_F(CliTest, ApproxAdditive) {
  const auto plain = file("plain.jkl", write_scores(polytree::testing::v_structure_example()));
  EXPECT_EQ(run({"approx", "--scores", plain, "--algo", "additive"}), kExitError);
  EXPECT_NE(err_.str().find("additive"), std::string::npos);
  const auto add = file("add.jkl", write_scores(adversarial_indegree(10, 9)));
  ASSERT_EQ(run({"approx", "--scores", add, "--algo", "additive", "--max-indegree", "1"}),
            kExitOk);
  EXPECT_EQ(record()["score"], 10.0);
  EXPECT_EQ(record()["ratio_bound"], 2.0);
}

TEST_F(CliTest, ReduceTriangleThenSolve) {
  const auto graph = file("triangle.graph", "3 3\n0 1\n1 2\n0 2\n");
  const auto out = path("tri.jkl");
  ASSERT_EQ(run({"reduce", "indset", "--in", graph, "--out", out}), kExitOk);
  EXPECT_TRUE(fs::exists(out + ".cert.json"));
  const auto cert = nlohmann::json::parse(read_text_file(out + ".cert.json"));
  EXPECT_EQ(cert["kind"], "independent_set");
  ASSERT_EQ(run({"solve", "--scores", out, "--algo", "dp"}), kExitOk);
  EXPECT_EQ(record()["score"], 1.0);
}

TEST_F(CliTest, ReduceSetPartitionToStdout) {
  const auto fam = file("f.sets", "2 2 2\n1 0\n1 1\n");
  ASSERT_EQ(run({"reduce", "setpart", "--in", fam, "--epsilon-inv", "2"}), kExitOk);
  EXPECT_EQ(parse_scores(out_.str()).n(), 4u);
  EXPECT_EQ(run({"reduce", "setpart", "--in", fam, "--epsilon-inv", "0"}), kExitError);
}

TEST_F(CliTest, GenIsByteIdentical) {
  ASSERT_EQ(run({"gen", "--n", "6", "--seed", "7"}), kExitOk);
  const std::string first = out_.str();
  ASSERT_EQ(run({"gen", "--n", "6", "--seed", "7"}), kExitOk);
  EXPECT_EQ(out_.str(), first);
  ASSERT_EQ(run({"gen", "--n", "6", "--seed", "8"}), kExitOk);
  EXPECT_NE(out_.str(), first);
  ASSERT_EQ(run({"gen", "--kind", "hub", "--hub-k", "5"}), kExitOk);
  EXPECT_EQ(parse_scores(out_.str()), adversarial_hub(5, 10, 9));
  EXPECT_EQ(run({"gen", "--n", "3", "--max-parent-size", "3"}), kExitError);
}

TEST_F(CliTest, NormalizationWarnings) {
  const auto shifted = file("s.jkl", "2\nA 1\n-3 0\nB 2\n0 0\n2 1 A\n");
  ASSERT_EQ(run({"solve", "--scores", shifted}), kExitOk);
  EXPECT_NE(err_.str().find("shifted"), std::string::npos);
  const auto missing = file("m.jkl", "2\nA 1\n1 1 B\nB 1\n0 0\n");
  ASSERT_EQ(run({"solve", "--scores", missing}), kExitOk);
  EXPECT_NE(err_.str().find("inserted"), std::string::npos);
  EXPECT_EQ(record()["score"], 1.0);
  EXPECT_EQ(run({"solve", "--scores", missing, "--no-normalize"}), kExitError);
}

TEST_F(CliTest, ParseErrorsExitOne) {
  const auto bad = file("bad.jkl", "2\nA 1\n0.0 0\nB 1\n1.0 1 C\n");
  EXPECT_EQ(run({"solve", "--scores", bad}), kExitError);
  EXPECT_NE(err_.str().find("line 5"), std::string::npos);
  EXPECT_EQ(run({"solve", "--scores", path("nope.jkl")}), kExitError);
  EXPECT_EQ(run({"frobnicate"}), kExitError);
  EXPECT_EQ(run({"--help"}), kExitOk);
}

TEST_F(CliTest, OutFlagAndNoTiming) {
  const auto scores = file("hub.jkl", write_scores(adversarial_hub(3, 10, 9)));
  const auto a = path("a.json");
  const auto b = path("b.json");
  ASSERT_EQ(run({"solve", "--scores", scores, "--no-timing", "--out", a}), kExitOk);
  ASSERT_EQ(run({"solve", "--scores", scores, "--no-timing", "--out", b}), kExitOk);
  EXPECT_TRUE(out_.str().empty());
  EXPECT_EQ(read_text_file(a), read_text_file(b));
  EXPECT_EQ(nlohmann::json::parse(read_text_file(a))["runtime_ms"], 0.0);
}

TEST_F(CliTest, BenchSmallRowsWithinBounds) {
  const auto rows = run_bench_suite("small", false);
  ASSERT_FALSE(rows.empty());
  for (const auto& r : rows) {
    EXPECT_LE(r.score, r.opt) << r.instance << " " << r.algo;
    if (r.bound) {
      EXPECT_LE(r.ratio, *r.bound) << r.instance << " " << r.algo;
    } else {
      EXPECT_EQ(r.ratio, 1.0) << r.instance << " " << r.algo;
    }
  }
  const auto csv = path("bench.csv");
  ASSERT_EQ(run({"bench", "--suite", "small", "--no-timing", "--out", csv}), kExitOk);
  const std::string text = read_text_file(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "instance,n,algo,score,opt,ratio,states_visited,runtime_ms");
  EXPECT_EQ(text, write_bench_csv(rows));
  EXPECT_THROW(run_bench_suite("huge"), std::exception);
}

}  // namespace
}  // namespace polytree::cli
