#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "vsar/dataset.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  fs::path dir;

  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir = fs::temp_directory_path() / (std::string("vsar_cli_") + info->name() + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  CliResult run(const std::string& args, const std::string& env = "") const {
    const auto out = dir / "stdout.txt";
    const auto err = dir / "stderr.txt";
    const std::string cmd = env + " \"" VSAR_CLI_PATH "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }
  std::string path(const char* name) const { return (dir / name).string(); }
};

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n' ? 1 : 0;
  return n;
}

TEST_F(Cli, GenWritesRequestedPuzzlesAndManifest) {
  const auto r = run("gen --config center --n 10 --seed 1 --json --out " + path("a.jsonl"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(slurp(path("a.jsonl"))), 10u);
  const auto manifest = vsar::Json::parse(r.out);
  EXPECT_EQ(manifest["total"].get<int>(), 10);
  EXPECT_EQ(manifest["counts"]["center"].get<int>(), 10);
  EXPECT_EQ(manifest["run_config"]["seeds"]["generator"].get<int>(), 1);
}

TEST_F(Cli, GenIsByteIdentical) {
  ASSERT_EQ(run("gen --config all --n 2 --seed 3 --out " + path("a.jsonl")).code, 0);
  ASSERT_EQ(run("gen --config all --n 2 --seed 3 --out " + path("b.jsonl")).code, 0);
  EXPECT_EQ(slurp(path("a.jsonl")), slurp(path("b.jsonl")));
}

TEST_F(Cli, GenWithZeroPuzzles) {
  const auto r = run("gen --config center --n 0 --seed 1 --out " + path("e.jsonl"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(slurp(path("e.jsonl")).empty());
  EXPECT_NE(r.out.find("wrote 0 puzzles"), std::string::npos);
}

TEST_F(Cli, GenUnwritablePathIsAnIoError) {
  EXPECT_EQ(run("gen --config center --n 1 --out " + path("missing/dir/x.jsonl")).code, 2);
}

TEST_F(Cli, SeedEnvironmentOverridesDefault) {
  ASSERT_EQ(run("gen --config u-d --n 2 --out " + path("env.jsonl"), "VSAR_SEED=9").code, 0);
  ASSERT_EQ(run("gen --config u-d --n 2 --seed 9 --out " + path("flag.jsonl")).code, 0);
  EXPECT_EQ(slurp(path("env.jsonl")), slurp(path("flag.jsonl")));
}

TEST_F(Cli, SolveReportsRulesAndScores) {
  ASSERT_EQ(run("gen --config center --n 2 --seed 5 --out " + path("c.jsonl")).code, 0);
  const auto r = run("solve --json " + path("c.jsonl"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = vsar::Json::parse(r.out);
  ASSERT_EQ(rep["puzzles"].size(), 2u);
  for (const auto& p : rep["puzzles"]) {
    EXPECT_TRUE(p["correct"].get<bool>());
    EXPECT_EQ(p["attributes"].size(), 3u);
    EXPECT_EQ(p["scores"].size(), 8u);
  }
  EXPECT_EQ(rep["run_config"]["eta"].get<double>(), 0.0);
}

TEST_F(Cli, SolveNamesCorruptedLines) {
  ASSERT_EQ(run("gen --config center --n 2 --seed 5 --out " + path("c.jsonl")).code, 0);
  {
    std::ofstream os(path("c.jsonl"), std::ios::app);
    os << "{\"config\": \"center\"\n";
  }
  const auto r = run("solve " + path("c.jsonl"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find(":3:"), std::string::npos) << r.err;
  EXPECT_NE(r.out.find("puzzle 1"), std::string::npos);
}

TEST_F(Cli, SolveEchoesNoiseLevel) {
  ASSERT_EQ(run("gen --config center --n 1 --seed 5 --out " + path("c.jsonl")).code, 0);
  const auto r = run("solve --eta 0.3 --json " + path("c.jsonl"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(vsar::Json::parse(r.out)["run_config"]["eta"].get<double>(), 0.3);
}

TEST_F(Cli, EvalFormatsAgree) {
  ASSERT_EQ(run("gen --config center --config l-r --n 3 --seed 2 --out " + path("d.jsonl")).code, 0);
  const auto j = run("eval --json " + path("d.jsonl"));
  const auto c = run("eval --csv " + path("d.jsonl"));
  const auto t = run("eval " + path("d.jsonl"));
  ASSERT_EQ(j.code, 0);
  ASSERT_EQ(c.code, 0);
  ASSERT_EQ(t.code, 0);
  const auto rep = vsar::Json::parse(j.out);
  EXPECT_EQ(rep["average"]["puzzles"].get<int>(), 6);
  EXPECT_NE(c.out.find("average,6,"), std::string::npos) << c.out;
  EXPECT_NE(t.out.find("average"), std::string::npos);
  EXPECT_EQ(run("eval --json " + path("d.jsonl")).out, j.out);
}

TEST_F(Cli, EvalEmptyAndMissing) {
  { std::ofstream os(path("empty.jsonl")); }
  const auto r = run("eval --json " + path("empty.jsonl"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(vsar::Json::parse(r.out)["average"]["puzzles"].get<int>(), 0);
  EXPECT_EQ(run("eval " + path("nope.jsonl")).code, 2);
}

TEST_F(Cli, InvalidArgumentsAreDataErrors) {
  EXPECT_EQ(run("gen --config nowhere --n 1 --out " + path("x.jsonl")).code, 1);
  EXPECT_EQ(run("eval --dim 10 " + path("x.jsonl")).code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
}

}  // namespace
