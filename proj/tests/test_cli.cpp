#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "experiment_config.hpp"
#include "hyperorbit/errors.hpp"
#include "hyperorbit/set_catalog.hpp"

using namespace hyperorbit;
using namespace hyperorbit::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hyperorbit-test-" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Config, RoundTripsWithDefaults) {
  for (const auto& name : subcommands()) {
    const ExperimentConfig c = ExperimentConfig{name, {}}.materialized();
    EXPECT_EQ(c.values.size(), options_for(name).size());
    EXPECT_EQ(ExperimentConfig::parse(c.to_text()), c);
    EXPECT_EQ(ExperimentConfig::parse(c.to_text()).hash(), c.hash());
  }
  ExperimentConfig c{"construct", {{"depth", "3"}, {"space", "lp 2 unilateral"}}};
  c = c.materialized();
  EXPECT_EQ(c.get("depth"), "3");
  EXPECT_EQ(c.get("space"), "lp 2 unilateral");
  EXPECT_EQ(c.get("tail-margin"), "2048");
  EXPECT_EQ(ExperimentConfig::parse(c.to_text()), c);
}

TEST(Config, RejectsUnknownKeysAndSubcommands) {
  EXPECT_THROW((ExperimentConfig{"densities", {{"colour", "red"}}}.materialized()), Error);
  EXPECT_THROW((ExperimentConfig{"plot", {}}.materialized()), Error);
  EXPECT_THROW(ExperimentConfig::parse("set evens\n"), Error);
  EXPECT_THROW(ExperimentConfig::parse("subcommand densities\nset a\nset b\n"), Error);
}

TEST(Config, CountsAcceptPowerNotation) {
  EXPECT_EQ(parse_count("10^6"), 1000000);
  EXPECT_EQ(parse_count("1e4"), 10000);
  EXPECT_EQ(parse_count("123"), 123);
  EXPECT_THROW(parse_count("12x"), Error);
  EXPECT_THROW(parse_count("1.5"), Error);
}

TEST(Catalog, SetNames) {
  EXPECT_EQ(parse_set("evens").set.members(0, 6), (std::vector<std::int64_t>{0, 2, 4, 6}));
  EXPECT_EQ(parse_set("periodic:5:1,3:10").set.members(0, 20), (std::vector<std::int64_t>{11, 13, 16, 18}));
  EXPECT_EQ(parse_set("intervals:2-3,8-8").set.members(0, 10), (std::vector<std::int64_t>{2, 3, 8}));
  EXPECT_TRUE(parse_set("prescribed:0,1/5,1/2,1").prescribed.has_value());
  EXPECT_THROW(parse_set("primes"), Error);
  EXPECT_THROW(parse_set("multiples:x"), Error);
}

TEST(Catalog, SetTextRoundTrip) {
  for (const char* name : {"evens", "periodic:6:1,4:3", "intervals:2-3,8-12", "explicit:4,9", "squares",
                           "factorial-blocks", "powers:3", "s-set", "e-set:2", "d-set:3"}) {
    const IndexSet a = parse_set(name).set;
    const IndexSet b = parse_set_text(a.to_text());
    EXPECT_EQ(a.members(0, 3000), b.members(0, 3000)) << name;
    EXPECT_EQ(a.to_text(), b.to_text()) << name;
  }
}

TEST(Catalog, WeightsOperatorsFamilies) {
  EXPECT_EQ(parse_weights("constant:2")->weight(5), 2.0);
  EXPECT_TRUE(parse_weights("bilateral-constant:3")->bilateral());
  EXPECT_EQ(parse_weights("table:1,2,3")->weight(9), 3.0);
  EXPECT_EQ(parse_operator("rolewicz2").space, SpaceSpec::lp(2));
  EXPECT_EQ(parse_operator("counterexample-c0").space, SpaceSpec::c0());
  EXPECT_EQ(parse_family("dyadic:5").size(), 5);
  EXPECT_EQ(parse_family("prime-power:3:4").size(), 3);
  EXPECT_THROW(parse_weights("exp:2"), Error);
  EXPECT_THROW(parse_family("dyadic"), Error);
}

TEST(Run, DensitiesOfEvens) {
  const auto dir = scratch("densities");
  std::ostringstream log;
  ExperimentConfig c{"densities", {{"set", "evens"}, {"horizon", "10^5"}}};
  const auto r = run(c.materialized(), dir, log);
  EXPECT_EQ(r.code, kOk);
  const std::string csv = slurp(dir / "densities.csv");
  EXPECT_NE(csv.find(",0.5,0.5,0.5,0.5,1\n"), std::string::npos) << csv;
  EXPECT_EQ(slurp(dir / "config.txt"), c.materialized().to_text());
}

TEST(Run, CheckFamilyWritesStatus) {
  const auto dir = scratch("family");
  std::ostringstream log;
  const auto r = run(ExperimentConfig{"check-family", {{"family", "prime-power:4:4"}}}.materialized(), dir, log);
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(slurp(dir / "family-check.txt").find("status ok"), std::string::npos);
  EXPECT_THROW(run(ExperimentConfig{"check-family", {{"family", "prime-power:9:4"}}}.materialized(), dir, log), Error);
}

TEST(Run, OrbitOverflowExitCode) {
  const auto dir = scratch("overflow");
  std::ostringstream log;
  const auto r = run(ExperimentConfig{"orbit",
                                      {{"x", "e3000"}, {"targets", "0/1"}, {"horizon", "2000"}, {"windows", "10"},
                                       {"overflow-bound", "1e100"}}}
                         .materialized(),
                     dir, log);
  EXPECT_EQ(r.code, kOverflow);
  EXPECT_TRUE(fs::exists(dir / "hitting-times.csv"));
}

TEST(Run, VerifyCounterexampleAtFullSweep) {
  const auto dir = scratch("fact1");
  std::ostringstream log;
  const auto r = run(ExperimentConfig{"verify-counterexample", {{"kmax", "6"}, {"lmax", "100"}}}.materialized(), dir, log);
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(slurp(dir / "fact1.csv").find("6,100,1200,"), std::string::npos);
  EXPECT_EQ(slurp(dir / "fact1-violations.csv"), "k,l,m,sign,in_s,max_witness_j\n");
}

TEST(Run, ConstructWritesCertificates) {
  const auto dir = scratch("construct");
  std::ostringstream log;
  const auto r = run(ExperimentConfig{"construct", {{"depth", "3"}, {"horizon", "4000"}}}.materialized(), dir, log);
  EXPECT_EQ(r.code, kOk);
  const std::string plan = slurp(dir / "plan.txt");
  EXPECT_NE(plan.find("selected 1 2 3"), std::string::npos) << plan;
  EXPECT_EQ(slurp(dir / "orbit-bounds.csv").rfind("l,k,checked,bound,truncation_term,worst,worst_n,worst_slack,violations\n", 0), 0u);
}
