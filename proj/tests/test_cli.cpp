#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tvwalk/cli.hpp"

using namespace tvwalk::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string body(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line, kept;
  while (std::getline(in, line))
    if (!line.starts_with("#")) kept += line + "\n";
  return kept;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tvwalk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, OrderPrintsTheGroupOrderAndRatio) {
  const Result r = call({"order", "--n", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("order = 20160\n"), std::string::npos);
  EXPECT_NE(r.out.find("ratio = 0.307617188"), std::string::npos);  // 20160 / 65536
}

TEST_F(CliTest, ExactReportsBothMixingTimes) {
  const Result r = call({"exact", "--n", "3", "--eps", "0.25", "--out", path("curve.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("t_mix(0.25) = 6\n"), std::string::npos);
  EXPECT_NE(r.out.find("t_mix2(0.25) = 9\n"), std::string::npos);
  EXPECT_NE(r.out.find("t_mix(0.25) <= t_mix2(0.5): holds"), std::string::npos);
  const std::string csv = slurp(path("curve.csv"));
  EXPECT_TRUE(csv.starts_with("# tvwalk exact --n 3 --eps 0.25"));
  EXPECT_NE(csv.find("\nt,tv,l2,lazy_flag\n0,"), std::string::npos);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST_F(CliTest, ExactSwitchesToTheLazyKernelForPeriodicN2) {
  const Result r = call({"exact", "--n", "2", "--out", path("curve.csv")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("periodic"), std::string::npos);
  EXPECT_NE(r.out.find("kernel = lazy"), std::string::npos);
  const std::string b = body(path("curve.csv"));
  EXPECT_NE(b.find("\n1,0.5,"), std::string::npos);  // lazy: half the mass stays at I
  EXPECT_NE(b.find(",1\n"), std::string::npos);
  EXPECT_EQ(b.find(",0\n"), std::string::npos);
}

TEST_F(CliTest, CheckReportsZeroViolationsForEverySuite) {
  const Result r =
      call({"check", "--suite", "all", "--n", "2", "--trials", "1000", "--seed", "7", "--out", path("s.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  std::size_t lines = 0, pos = 0;
  while ((pos = r.out.find("violations = 0 ", pos)) != std::string::npos) ++lines, ++pos;
  EXPECT_EQ(lines, 6u);
  EXPECT_EQ(r.out.find("violations = 1"), std::string::npos);
}

TEST_F(CliTest, RoundTripThroughArguments) {
  const std::vector<std::vector<std::string>> cases = {
      {"order", "--n", "7"},
      {"exact", "--n", "3", "--eps", "0.1", "--lazy", "--tmax", "30", "--out", "a.csv", "--threads", "2"},
      {"spectrum", "--n", "4", "--out", "s.csv"},
      {"lsi", "--n", "3", "--restarts", "4", "--iters", "50", "--seed", "9"},
      {"check", "--suite", "key", "--n", "3", "--d", "5", "--trials", "100"},
      {"cutoff", "--n", "64", "--k", "2", "--lo", "0.25", "--hi", "2.5", "--points", "11"},
      {"bounds", "--n", "3", "--eps", "0.2", "--cls", "8.5", "--inv-abs-gap", "3.7"},
      {"protocol", "keygen", "--n", "16", "--t", "40", "--key", "k", "--secret", "s"},
      {"protocol", "prove", "--secret", "s", "--challenge", "0101"},
      {"protocol", "verify", "--key", "k", "--challenge", "01", "--response", "10", "--bit-ops", "4",
       "--deadline", "9"},
      {"protocol", "report", "--n", "1024", "--t", "104857"},
  };
  for (const auto& args : cases) {
    const ExperimentConfig c = parse_args(args);
    EXPECT_EQ(parse_args(to_args(c)), c) << echo(c);
  }
}

TEST_F(CliTest, ConfigFileHasFlagSemanticsAndFlagsWin) {
  {
    std::ofstream cfg(path("run.cfg"));
    cfg << "# comment\nn = 3\neps=0.1\nlazy=true\nthreads=2\n";
  }
  const ExperimentConfig from_file = parse_args({"exact", "--config", path("run.cfg")});
  const ExperimentConfig from_flags = parse_args({"exact", "--n", "3", "--eps", "0.1", "--lazy", "--threads", "2"});
  EXPECT_EQ(from_file, from_flags);
  const ExperimentConfig overridden = parse_args({"exact", "--config", path("run.cfg"), "--eps", "0.3"});
  EXPECT_DOUBLE_EQ(overridden.eps, 0.3);
  {
    std::ofstream cfg(path("bad.cfg"));
    cfg << "n 3\n";
  }
  EXPECT_EQ(call({"exact", "--config", path("bad.cfg")}).code, 2);
}

TEST_F(CliTest, InvalidConfigsExitWithTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"order"},
           {"exact", "--n", "9"},
           {"exact", "--n", "3", "--eps", "1.5"},
           {"check", "--suite", "nope", "--n", "2"},
           {"order", "--n", "x"},
           {"cutoff", "--n", "16", "--trials", "10"},
       }) {
    const Result r = call(args);
    EXPECT_EQ(r.code, 2) << (args.empty() ? "" : args[0]);
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  }
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST_F(CliTest, ProtocolRoundTrip) {
  const std::string key = path("k.gf2m"), secret = path("s.tvwk");
  ASSERT_EQ(call({"protocol", "keygen", "--n", "16", "--t", "50", "--seed", "3", "--key", key, "--secret", secret}).code,
            0);
  const std::string challenge = "1011001110001111";
  const Result honest = call({"protocol", "prove", "--secret", secret, "--challenge", challenge});
  ASSERT_EQ(honest.code, 0);
  const auto field = [](const std::string& text, const std::string& name) {
    const auto p = text.find(name + " = ");
    return text.substr(p + name.size() + 3, text.find('\n', p) - p - name.size() - 3);
  };
  const std::string y = field(honest.out, "y");
  EXPECT_EQ(field(honest.out, "bit_ops"), "50");
  EXPECT_EQ(call({"protocol", "verify", "--key", key, "--challenge", challenge, "--response", y, "--bit-ops", "50",
                  "--deadline", "100"})
                .code,
            0);
  const Result dishonest = call({"protocol", "prove", "--key", key, "--dishonest", "--challenge", challenge});
  EXPECT_EQ(field(dishonest.out, "y"), y);
  EXPECT_EQ(field(dishonest.out, "bit_ops"), "256");
  EXPECT_EQ(call({"protocol", "verify", "--key", key, "--challenge", challenge, "--response", y, "--bit-ops", "256",
                  "--deadline", "255"})
                .code,
            1);
  std::string wrong = y;
  wrong[0] = wrong[0] == '0' ? '1' : '0';
  EXPECT_EQ(call({"protocol", "verify", "--key", key, "--challenge", challenge, "--response", wrong, "--bit-ops",
                  "1", "--deadline", "100"})
                .code,
            1);
}

TEST_F(CliTest, ReportTable) {
  const Result r = call({"protocol", "report", "--n", "1024", "--t", "104857"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1024,1048576,1048576,1048576,16384,1\n"), std::string::npos);
}

TEST_F(CliTest, CsvBodiesAreByteIdenticalAcrossRunsAndThreadCounts) {
  const std::vector<std::vector<std::string>> runs = {
      {"exact", "--n", "3", "--lazy"},
      {"spectrum", "--n", "3"},
      {"lsi", "--n", "2", "--restarts", "4", "--iters", "100"},
      {"check", "--suite", "all", "--n", "2", "--trials", "200", "--d", "6"},
      {"cutoff", "--n", "32", "--trials", "2000", "--points", "9"},
  };
  for (const auto& base : runs) {
    std::vector<std::string> bodies;
    for (const char* threads : {"1", "1", "5"}) {
      auto args = base;
      args.insert(args.end(), {"--out", path("run.csv")});
      if (base[0] != "spectrum") args.insert(args.end(), {"--threads", threads});
      ASSERT_EQ(call(args).code, 0) << base[0];
      bodies.push_back(body(path("run.csv")));
    }
    EXPECT_EQ(bodies[0], bodies[1]) << base[0];
    EXPECT_EQ(bodies[0], bodies[2]) << base[0];
    EXPECT_FALSE(bodies[0].empty());
  }
}
