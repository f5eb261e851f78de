#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"

using namespace persuasion;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("persuasion-test-" + name)).string();
}

}  // namespace

TEST(Cli, ParetoOnFigure1) {
  auto r = run({"pareto", "--instance", "fig1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("a=3, b=5, alpha=1/2, mu_r=9, OPT=9"), std::string::npos) << r.out;
}

TEST(Cli, ParetoStructured) {
  auto r = run({"pareto", "--instance", "fig1", "--format", "structured"});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["result"]["a"], 3);
  EXPECT_EQ(j["result"]["opt"], "9");
}

TEST(Cli, DynamicProgram) {
  auto r = run({"dp", "--n", "6"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sample size (rounds before the first hire) 3"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("u_4"), std::string::npos);
  auto j = json::parse(run({"dp", "--n", "6", "--format", "structured"}).out);
  EXPECT_EQ(j["u"][3], "1/3");
}

TEST(Cli, ExactAndSampledEval) {
  auto e = run({"eval", "--mechanism", "pareto", "--instance", "fig1", "--format", "structured"});
  ASSERT_EQ(e.code, 0) << e.err;
  auto j = json::parse(e.out);
  EXPECT_EQ(j["report"]["mode"], "exact");
  EXPECT_EQ(j["report"]["sender_eu"], "9");
  auto m = run({"eval", "--mechanism", "simple-secretary", "--instance", "random-grid", "--n", "50", "--mc", "2000",
                "--jobs", "1", "--format", "structured"});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(json::parse(m.out)["report"]["mode"], "monte-carlo");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"pareto", "--instance", "no-such-file.json"}).code, 2);
  EXPECT_EQ(run({"eval", "--mechanism", "nope", "--instance", "fig1"}).code, 2);
  EXPECT_EQ(run({"eval", "--instance", "fig1"}).code, 2);
  auto big = run({"eval", "--mechanism", "trivial", "--instance", "random-grid", "--n", "20"});
  EXPECT_EQ(big.code, 2);
  EXPECT_NE(big.err.find("cap"), std::string::npos);
  EXPECT_EQ(run({"eval", "--mechanism", "growing-pareto", "--instance", "negcorr"}).code, 2);  // missing --n
  EXPECT_EQ(run({"dp", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"pareto", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ExpectPersuasive) {
  const std::string path = temp_path("counterexample.json");
  {
    std::ofstream f(path);
    f << R"({"candidates": [{"rho": 0, "xi": 1}, {"rho": 2, "xi": 0}]})";
  }
  auto bad = run({"check-persuasive", "--mechanism", "target", "--target", "1", "--instance", path, "--expect-persuasive"});
  EXPECT_EQ(bad.code, 3) << bad.err;
  EXPECT_NE(bad.out.find("NOT persuasive"), std::string::npos);
  EXPECT_EQ(run({"check-persuasive", "--mechanism", "target", "--target", "1", "--instance", path}).code, 0);
  EXPECT_EQ(run({"check-persuasive", "--mechanism", "pareto", "--instance", path, "--expect-persuasive"}).code, 0);
  std::filesystem::remove(path);
}

TEST(Cli, ScenarioFlagsOverrideDefaults) {
  auto r = run({"check-persuasive", "--mechanism", "dynkin", "--instance", "negcorr", "--n", "5", "--disclosure",
                "--format", "structured"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["scenario"]["disclosure"], true);
  auto mismatch = run({"eval", "--mechanism", "pareto", "--scenario", "secretary", "--instance", "fig1"});
  EXPECT_EQ(mismatch.code, 2);
}

TEST(Cli, GenerateWritesLoadableFiles) {
  const std::string path = temp_path("gen.json");
  ASSERT_EQ(run({"generate", "--instance", "random-grid", "--n", "6", "--seed", "9", "--out", path}).code, 0);
  auto inst = load_instance_file(path);
  auto again = random_instance(6, 9);
  ASSERT_EQ(inst.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(inst[i].rho, again[i].rho);
  auto r = run({"pareto", "--instance", path});
  EXPECT_EQ(r.code, 0);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"generate", "--instance", "samples/fig1.json"}).code, 2);
}

TEST(Cli, SeedPrecedence) {
  auto with_flag = run({"generate", "--instance", "negcorr", "--n", "5", "--seed", "3"});
  setenv("PERSUASION_SEED", "3", 1);
  auto from_env = run({"generate", "--instance", "negcorr", "--n", "5"});
  auto flag_wins = run({"generate", "--instance", "negcorr", "--n", "5", "--seed", "4"});
  setenv("PERSUASION_SEED", "junk", 1);
  auto junk = run({"generate", "--instance", "negcorr", "--n", "5"});
  unsetenv("PERSUASION_SEED");
  EXPECT_EQ(with_flag.out, from_env.out);
  EXPECT_NE(flag_wins.out, from_env.out);
  EXPECT_EQ(junk.code, 2);
  setenv("PERSUASION_JOBS", "0", 1);
  EXPECT_EQ(run({"eval", "--mechanism", "trivial", "--instance", "fig1"}).code, 2);
  unsetenv("PERSUASION_JOBS");
}

TEST(Cli, SweepOverSampleFractions) {
  auto r = run({"sweep", "--mechanism", "growing-pareto", "--instance", "random-grid", "--n", "7", "--s-grid", "0.2:0.8:0.2",
                "--format", "structured"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  ASSERT_EQ(j["points"].size(), 4u);
  for (const auto& p : j["points"]) {
    EXPECT_TRUE(p.contains("ratio_exact"));
    EXPECT_TRUE(p.contains("curve"));
  }
  auto mc = run({"sweep", "--mechanism", "growing-pareto", "--n", "200", "--s-grid", "0.3:0.7:0.4", "--mc", "2000", "--jobs", "1"});
  EXPECT_EQ(mc.code, 0) << mc.err;
  EXPECT_NE(mc.out.find("c-c^3"), std::string::npos);
  auto ng = run({"sweep", "--mechanism", "simple-secretary", "--n-grid", "3:6:1", "--sender-utility", "ordinal"});
  EXPECT_EQ(ng.code, 0) << ng.err;
  EXPECT_EQ(run({"sweep", "--mechanism", "growing-pareto", "--n", "7", "--s-grid", "0.9:0.1:0.1"}).code, 2);
}

TEST(Cli, ReproduceSubset) {
  auto a = run({"reproduce", "--criteria", "1", "6", "9", "--format", "structured", "--jobs", "1"});
  auto b = run({"reproduce", "--criteria", "1", "6", "9", "--format", "structured", "--jobs", "2"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto j = json::parse(a.out);
  EXPECT_EQ(j["criteria"].size(), 3u);
  for (const auto& c : j["criteria"]) EXPECT_TRUE(c["passed"].get<bool>());
  EXPECT_EQ(run({"reproduce", "--criteria", "12"}).code, 2);
}
