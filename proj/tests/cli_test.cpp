#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperdyn/exactnum.hpp"
#include "hyperdyn/symbolic.hpp"
#include "hyperdyn/toral.hpp"
#include "hyperdyn/tools/cli.hpp"
#include "hyperdyn/tools/pgm.hpp"
#include "support.hpp"

namespace hyperdyn::tools {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string trimmed(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("hyperdyn_cli_" + std::to_string(testing::test_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, DocumentedExamples) {
  EXPECT_EQ(trimmed(cli({"cat", "pow", "-n", "2"}).out), "[[5,3],[3,2]]");
  EXPECT_EQ(trimmed(cli({"cat", "period", "-p", "(1/2,1/2)"}).out), "3");
  EXPECT_EQ(trimmed(cli({"shift", "primitive", "--sft", "adler-weiss"}).out), "2");
}

TEST(Cli, ScalarCommands) {
  EXPECT_EQ(trimmed(cli({"cat", "apply", "-p", "(1/5, 2/5)"}).out), "(4/5, 3/5)");
  EXPECT_EQ(trimmed(cli({"cat", "apply", "-p", "(4/5, 3/5)", "-n", "-1"}).out), "(1/5, 2/5)");
  EXPECT_EQ(trimmed(cli({"cat", "fixcount", "-n", "6"}).out), "320");
  EXPECT_EQ(trimmed(cli({"cat", "order", "-m", "5"}).out), "10");
  EXPECT_EQ(trimmed(cli({"shift", "count", "--sft", "full2", "-n", "12"}).out), "4096");
  EXPECT_EQ(trimmed(cli({"shift", "member", "--sft", "adler-weiss", "-s", "(02310)* . (02310)*"}).out),
            "true");
  EXPECT_EQ(trimmed(cli({"hs", "apply", "-p", "(1/2, 1/6)"}).out), "(1/6, 1/2)");
  EXPECT_EQ(trimmed(cli({"hs", "encode", "-p", "(3/4, 3/4)", "-k", "2"}).out), "11.111");
  EXPECT_EQ(trimmed(cli({"hs", "periodic", "-w", "1"}).out), "(3/4, 3/4)");
  EXPECT_EQ(trimmed(cli({"ultra", "recur", "-p", "(1/2, 1/2)", "--horizon", "20"}).out),
            "3,6,9,12,15,18");
  EXPECT_EQ(trimmed(cli({"ultra", "idem", "-p", "(1/5, 2/5)"}).out), "true");
}

TEST(Cli, JsonReports) {
  const auto stable = nlohmann::json::parse(
      cli({"prox", "check", "-x", "(1/3 + 3/2 - 1/2*sqrt5, 1/3)", "-y", "(1/3, 1/3)"}).out);
  EXPECT_EQ(stable["kind"], "ProximalStable");
  EXPECT_EQ(stable["leaf_slope"], "-1/2 - 1/2*sqrt5");
  const auto none = nlohmann::json::parse(cli({"prox", "check", "-x", "(1/2, 0)", "-y", "(0, 0)"}).out);
  EXPECT_EQ(none["kind"], "NotProximal");
  EXPECT_TRUE(none["certificate"].is_null());

  const auto rect = nlohmann::json::parse(cli({"hs", "decode", "-w", "1.1"}).out);
  EXPECT_EQ(rect["x_lo"], "2/3");
  EXPECT_EQ(rect["x_hi"], "1");
  EXPECT_EQ(rect["y_lo"], "2/3");
  EXPECT_EQ(rect["address"], "1.1");

  const auto probe = nlohmann::json::parse(
      cli({"ultra", "probe", "-p", "(1/2, 1/2)", "--start", "3", "--step", "3", "--count", "6"}).out);
  EXPECT_EQ(probe["verdict"], "converged");
  EXPECT_EQ(probe["limit"][0], 0.5);

  const auto mix = nlohmann::json::parse(
      cli({"shift", "mix", "-u", "011", "-v", "100", "--format", "json"}).out);
  EXPECT_EQ(mix["n_star"], 2);
}

TEST(Cli, SlopeCsv) {
  const std::string csv = cli({"ultra", "slope", "--n-max", "2"}).out;
  std::istringstream in(csv);
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_EQ(header, "n,ratio_exact,ratio_float,error_float,bound_float");
  EXPECT_EQ(row1.substr(0, 10), "1,1/2,0.5,");
  EXPECT_EQ(row2.substr(0, 10), "2,3/5,0.6,");
  const std::string inverse = cli({"ultra", "slope", "--n-max", "1", "--inverse"}).out;
  EXPECT_NE(inverse.find("1,-1/2,-0.5,"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"cat"}).code, kExitUsage);
  EXPECT_EQ(cli({"cat", "pow"}).code, kExitUsage);
  EXPECT_EQ(cli({"cat", "pow", "-n", "x"}).code, kExitUsage);
  EXPECT_EQ(cli({"cat", "period", "-p", "(1/2"}).code, kExitUsage);
  EXPECT_EQ(cli({"cat", "pow", "-n", "2", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(cli({"cat", "pow", "-n", "-1", "--matrix", "[[2,0],[0,1]]"}).code, kExitDomain);
  EXPECT_EQ(cli({"cat", "period", "-p", "(sqrt5, 0)"}).code, kExitDomain);
  const Invocation escape = cli({"hs", "apply", "-p", "(1/2, 1/2)"});
  EXPECT_EQ(escape.code, kExitDomain);
  EXPECT_NE(escape.err.find("escapes"), std::string::npos);
  EXPECT_EQ(cli({"shift", "count", "--sft", "/nonexistent/sft.txt", "-n", "2"}).code, kExitUsage);
  EXPECT_EQ(cli({"cat", "pow", "-n", "2", "--format", "csv"}).code, kExitUsage);
  EXPECT_EQ(cli({"cat", "pow", "--help"}).code, kExitOk);
  EXPECT_EQ(cli({"hs", "prox", "--help"}).code, kExitOk);
}

TEST(Cli, ExactOutputsRoundTrip) {
  for (int trial = 0; trial < 40; ++trial) {
    const TorusPoint p = testing::random_point();
    const long long n = testing::uniform(-6, 6);
    const Invocation r = cli({"cat", "apply", "-p", p.to_string(), "-n", std::to_string(n)});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const TorusPoint q = TorusPoint::parse(trimmed(r.out));
    EXPECT_EQ(q, cat_apply(mat_pow(cat_matrix(), n), p));
    const Invocation back = cli({"cat", "apply", "-p", q.to_string(), "-n", std::to_string(-n)});
    EXPECT_EQ(TorusPoint::parse(trimmed(back.out)), p);
  }
  for (int n = -5; n <= 5; ++n) {
    const Invocation r = cli({"cat", "pow", "-n", std::to_string(n)});
    EXPECT_EQ(IntMat2::parse(trimmed(r.out)), mat_pow(cat_matrix(), n));
  }
  const std::string orbit = cli({"cat", "orbit", "-p", "(1/2, 1/2)", "--to", "3"}).out;
  EXPECT_EQ(orbit,
            "n,x,y,x_float,y_float\n"
            "0,\"1/2\",\"1/2\",0.5,0.5\n"
            "1,\"1/2\",\"0\",0.5,0\n"
            "2,\"0\",\"1/2\",0,0.5\n"
            "3,\"1/2\",\"1/2\",0.5,0.5\n");
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args = {"hs", "prox", "-x", "(01)* . 1 (0)*", "-y", "(1)* . (0)*"};
  EXPECT_EQ(cli(args).out, cli(args).out);
  const std::vector<std::string> probe = {"ultra", "probe", "-p", "(3/2 - 1/2*sqrt5, 0)"};
  EXPECT_EQ(cli(probe).out, cli(probe).out);
}

TEST(Cli, OutputFileIsWrittenWhole) {
  TempDir dir;
  const fs::path out = dir / "pow.json";
  ASSERT_EQ(cli({"cat", "pow", "-n", "3", "--format", "json", "--out", out.string()}).code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(read_file(out))["matrix"], "[[13,8],[8,5]]");
  EXPECT_FALSE(fs::exists(dir / "pow.json.tmp"));
}

TEST(Cli, BatchRunner) {
  TempDir dir;
  write_file(dir / "ok.cfg", "# period of a rational point\ncommand = cat period\np = (1/5, 2/5)\nformat = json\noutput = " +
                                 (dir / "out.json").string() + "\n");
  const Invocation ok = cli({"run", (dir / "ok.cfg").string()});
  ASSERT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_EQ(nlohmann::json::parse(read_file(dir / "out.json"))["period"], 2);

  write_file(dir / "unknown.cfg", "command = cat period\np = (1/2, 1/2)\ncolour = red\n");
  EXPECT_EQ(cli({"run", (dir / "unknown.cfg").string()}).code, kExitUsage);
  write_file(dir / "dup.cfg", "command = cat period\np = (1/2, 1/2)\np = (0, 0)\n");
  EXPECT_EQ(cli({"run", (dir / "dup.cfg").string()}).code, kExitUsage);
  write_file(dir / "nocmd.cfg", "p = (1/2, 1/2)\n");
  EXPECT_EQ(cli({"run", (dir / "nocmd.cfg").string()}).code, kExitUsage);
  write_file(dir / "domain.cfg", "command = cat period\npoint = (sqrt5, 0)\n");
  EXPECT_EQ(cli({"run", (dir / "domain.cfg").string()}).code, kExitDomain);
  EXPECT_EQ(cli({"run", (dir / "missing.cfg").string()}).code, kExitUsage);
}

TEST(ExperimentConfig, ToArgs) {
  const auto cfg = ExperimentConfig::parse("command = shift mix\nsft = adler-weiss\nu = 02\nn-max = 8\n");
  EXPECT_EQ(cfg.to_args(), (std::vector<std::string>{"shift", "mix", "--sft", "adler-weiss", "-u",
                                                     "02", "--n-max", "8"}));
  EXPECT_THROW(ExperimentConfig::parse("command = cat pow\n -n = 2\n"), ParseError);
  EXPECT_THROW(ExperimentConfig::parse("command cat pow\n"), ParseError);
}

TEST(Pgm, RoundTrip8And16Bit) {
  for (int side : {7, 101}) {
    const GrayImage img = index_image(side);
    EXPECT_EQ(img.maxval > 255, side * side > 256);
    std::stringstream buf;
    write_pgm(buf, img);
    EXPECT_EQ(read_pgm(buf), img);
  }
  std::stringstream commented("P5\n# made by hand\n2 1\n255\nAB");
  const GrayImage g = read_pgm(commented);
  EXPECT_EQ(g.at(0, 0), 'A');
  EXPECT_EQ(g.at(1, 0), 'B');
  std::stringstream truncated("P5 2 2 255\nAB");
  EXPECT_THROW(read_pgm(truncated), ParseError);
  std::stringstream ascii("P2 1 1 255\n7");
  EXPECT_THROW(read_pgm(ascii), ParseError);
  std::stringstream big("P5 5000 1 255\n");
  EXPECT_THROW(read_pgm(big), DomainError);
}

TEST(CatImage, IdentityOriginAndRecurrence) {
  const GrayImage img = index_image(5);
  EXPECT_EQ(cat_image(img, 0), img);
  const auto order = static_cast<long long>(matrix_order_mod(cat_matrix(), BigInt(5)));
  EXPECT_EQ(order, 10);
  for (long long n = 1; n < order; ++n) {
    const GrayImage out = cat_image(img, n);
    EXPECT_NE(out, img) << n;
    EXPECT_EQ(out.at(0, 0), img.at(0, 0));
  }
  EXPECT_EQ(cat_image(img, order), img);
  EXPECT_EQ(cat_image(cat_image(img, 3), -3), img);
  EXPECT_EQ(cat_image(cat_image(img, 2), 5), cat_image(img, 7));
}

// pulling back by A^-n moves the pixel at lattice point q to A^n q
TEST(CatImage, MatchesLatticeOracle) {
  const int s = 12;
  const GrayImage img = index_image(s);
  for (long long n : {1, 2, 5}) {
    const GrayImage out = cat_image(img, n);
    for (int j = 0; j < s; ++j) {
      for (int i = 0; i < s; ++i) {
        std::pair<long long, long long> q{i, j};
        for (long long k = 0; k < n; ++k) q = {(2 * q.first + q.second) % s, (q.first + q.second) % s};
        EXPECT_EQ(out.at(static_cast<int>(q.first), static_cast<int>(q.second)), img.at(i, j));
      }
    }
  }
}

TEST(CatImage, CliWritesPgm) {
  TempDir dir;
  const fs::path out = dir / "cat.pgm";
  const Invocation r = cli({"cat", "image", "--index-side", "5", "-n", "10", "--out", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_pgm(out), index_image(5));
  EXPECT_EQ(cli({"cat", "image", "--index-side", "5"}).code, kExitUsage);
  std::ofstream(dir / "wide.pgm", std::ios::binary) << "P5 2 1 255\nAB";
  EXPECT_EQ(cli({"cat", "image", "--in", (dir / "wide.pgm").string(), "--out", out.string()}).code,
            kExitUsage);
}

}  // namespace
}  // namespace hyperdyn::tools
