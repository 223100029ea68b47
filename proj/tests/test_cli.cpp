#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "quadrank/gen.hpp"
#include "quadrank/matrix_io.hpp"

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, bool merge_stderr = true) {
  const std::string cmd = std::string(QUADRANK_BIN) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("quadrank_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(Cli, GenWritesFile) {
  auto r = run("gen P:6 -o " + path("p6.mat"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "P_6: N=15 p=3\n");
  auto m = quadrank::read_matrix_file(path("p6.mat"));
  EXPECT_EQ(m.rows(), 15u);
  EXPECT_EQ(m.to_rational(), quadrank::matrix_P(6).matrix);
}

TEST_F(Cli, GenToStdoutRoundTrips) {
  auto r = run("gen fawziQ:2,3,4", false);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, quadrank::format_matrix(quadrank::fawzi_Q({2, 3, 4})));
  auto again = run("gen fawziQ:2,3,4", false);
  EXPECT_EQ(again.out, r.out);
}

TEST_F(Cli, GenOverCap) {
  auto r = run("gen corM:20");
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(contains(r.out, "DimensionCap"));
  EXPECT_EQ(run("gen nonsense").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
}

TEST_F(Cli, Certify) {
  run("gen P:6 -o " + path("p6.mat"));
  auto r = run("certify " + path("p6.mat"));
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "CERTIFIED rootrank >= 8 (all sign patterns)"));

  auto x = run("certify --crosscheck 50 " + path("p6.mat"));
  EXPECT_EQ(x.status, 0);
  EXPECT_TRUE(contains(x.out, "50 samples, min sampled rank"));
  EXPECT_TRUE(contains(x.out, ">= 8"));

  auto kv = run("certify P:6 --format kv");
  EXPECT_EQ(kv.status, 0);
  EXPECT_TRUE(contains(kv.out, "bound: 8"));
  EXPECT_TRUE(contains(kv.out, "size_bound:"));
}

TEST_F(Cli, CertifyRefuses) {
  run("gen corB:3 -o " + path("b3.mat"));
  auto r = run("certify " + path("b3.mat"));
  EXPECT_EQ(r.status, 1);
  EXPECT_TRUE(contains(r.out, "DiagonalNotPrimeForm"));
}

TEST_F(Cli, CertifyBadFile) {
  std::ofstream(path("bad.mat")) << "field:\nrows: 2\ncols: 2\n1;2\n";
  EXPECT_EQ(run("certify " + path("bad.mat")).status, 2);
}

TEST_F(Cli, Brute) {
  run("gen fawziQ:2,3,4 -o " + path("q234.mat"));
  auto r = run("brute " + path("q234.mat"));
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "min sqrt-rank = 3 (exhausted)"));

  run("gen P:4 -o " + path("p4.mat"));
  EXPECT_TRUE(contains(run("brute " + path("p4.mat")).out, "min sqrt-rank = 4"));

  run("gen P:8 -o " + path("p8.mat"));
  auto big = run("brute " + path("p8.mat"));
  EXPECT_EQ(big.status, 3);
  EXPECT_TRUE(contains(big.out, "required"));
}

TEST_F(Cli, Sigma) {
  auto r = run("sigma 4");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "sigma_4 (16x16)"));
  EXPECT_TRUE(contains(r.out, "anticommutation OK, squares OK"));
  EXPECT_EQ(run("sigma 11").status, 2);
}

TEST_F(Cli, Extension) {
  auto r = run("extension P:6 --d 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "rank(C) >= 120, conclude k*4 >= 8"));
}

TEST_F(Cli, ExtensionWithDecompositionFile) {
  auto w = quadrank::matrix_P(6).matrix;
  std::ofstream f(path("bs.txt"));
  f << quadrank::format_matrix(quadrank::RationalMatrix(15, 15, quadrank::Rational(3, 5)))
    << quadrank::format_matrix(quadrank::RationalMatrix(15, 15, quadrank::Rational(4, 5)));
  for (int i = 0; i < 2; ++i) f << quadrank::format_matrix(quadrank::RationalMatrix(15, 15));
  f.close();
  auto r = run("extension P:6 --d 2 --decomposition " + path("bs.txt"));
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "conclude k*4 >= 8"));
}

TEST_F(Cli, Bounds) {
  auto r = run("bounds IP:3");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "rank                  7"));
  EXPECT_TRUE(contains(r.out, "prank >=              3"));
  auto f = run("bounds corF:5 --format kv");
  EXPECT_EQ(f.status, 0);
  EXPECT_TRUE(contains(f.out, "rank_plus_upper: 10"));
}
