// Copyright 2026 The Free2Shard Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "free2shard/errors.hpp"
#include "free2shard/experiment/config.hpp"
#include "free2shard/experiment/oracles.hpp"
#include "free2shard/experiment/output.hpp"
#include "free2shard/experiment/runner.hpp"
#include "free2shard/experiment/verify.hpp"

namespace f2s::experiment {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    root = fs::temp_directory_path() /
           ("f2s-test-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root);
    fs::create_directories(root);
  }
  void TearDown() override { fs::remove_all(root); }
  fs::path root;
};

const char* kGame = R"(experiment:
  name: small
  kind: game
  output: small
game:
  K: 10
  T: 200
  beta: 0.5
  mode: mean-field
policy:
  - kind: f2s
  - kind: f2s-dist
    h: 0.5
    q: 0.05
    s: 10
adversary:
  kind: myopic
)";

TEST(Config, ParsesGameSections) {
  const ExperimentConfig cfg = parse_config(kGame);
  EXPECT_EQ(cfg.kind, ExperimentKind::game);
  EXPECT_EQ(cfg.game.K, 10u);
  EXPECT_EQ(cfg.game.T, 200);
  EXPECT_DOUBLE_EQ(cfg.game.gamma, 0.5);
  ASSERT_EQ(cfg.policies.size(), 2u);
  EXPECT_EQ(cfg.policies[1].kind, policy::Kind::f2s_dist);
  EXPECT_EQ(*cfg.policies[1].params.h, 0.5);
  EXPECT_EQ(cfg.game.adversary.kind, adversary::Kind::myopic);
  EXPECT_EQ(cfg.game_configs().size(), 2u);
}

TEST(Config, UnknownKeyReportsLine) {
  const std::string text = "experiment:\n  name: x\n  kidn: game\n";
  try {
    parse_config(text, "bad.yaml");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.yaml:3:"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("kidn"), std::string::npos);
  }
}

TEST(Config, UnknownSectionAndBadValues) {
  EXPECT_THROW(parse_config("gmae:\n  K: 3\n"), ConfigError);
  EXPECT_THROW(parse_config("game:\n  K: three\npolicy:\n  kind: f2s\nadversary:\n  kind: myopic\n"), ConfigError);
  EXPECT_THROW(parse_config("game:\n  K: 3\npolicy:\n  kind: greedy\nadversary:\n  kind: myopic\n"), ConfigError);
  EXPECT_THROW(parse_config("game:\n  K: [\n"), ConfigError);
}

TEST(Config, CoreParameterErrorsSurfaceVerbatim) {
  const std::string text =
      "game:\n  K: 100\n  N: 1000\n  mode: stochastic\npolicy:\n  kind: f2s-dist\n  s: 100\n  q: 0.1\n"
      "adversary:\n  kind: replicate\n";
  try {
    parse_config(text, "dist.yaml");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    EXPECT_EQ(what.rfind("dist.yaml: compute_h: h = ", 0), 0u) << what;
    EXPECT_NE(what.find("violated bound"), std::string::npos);
  }
}

TEST(Config, GammaDefaultsToOneMinusBeta) {
  const ExperimentConfig cfg =
      parse_config("game:\n  K: 4\n  beta: 0.3\npolicy:\n  kind: f2s\nadversary:\n  kind: myopic\n");
  EXPECT_DOUBLE_EQ(cfg.game.gamma, 0.7);
}

TEST(Config, SeedRanges) {
  EXPECT_EQ(parse_seed_range("3..6"), (std::vector<std::uint64_t>{3, 4, 5, 6}));
  EXPECT_EQ(parse_seed_range("9,2,5"), (std::vector<std::uint64_t>{9, 2, 5}));
  EXPECT_THROW(parse_seed_range("6..3"), ConfigError);
  EXPECT_THROW(parse_seed_range("x"), ConfigError);
}

TEST(Config, HeterogeneousTargets) {
  const std::vector<double> t = heterogeneous_targets(100);
  ASSERT_EQ(t.size(), 100u);
  for (std::size_t i = 1; i <= 100; ++i) {
    EXPECT_DOUBLE_EQ(t[i - 1], 1.0 / (std::ceil(static_cast<double>(i) / 5.0) + 1.0));
  }
  EXPECT_DOUBLE_EQ(t[0], 0.5);
  EXPECT_DOUBLE_EQ(t[5], 1.0 / 3.0);
}

TEST(Presets, MatchShippedConfigs) {
  for (const std::string& name : preset_names()) {
    const fs::path shipped = fs::path(FREE2SHARD_CONFIG_DIR) / (name + ".yaml");
    ASSERT_TRUE(fs::exists(shipped)) << shipped;
    EXPECT_EQ(preset_text(name), slurp(shipped)) << name;
  }
  EXPECT_THROW(preset("nope"), ConfigError);
}

TEST(Presets, ReferenceSettings) {
  const ExperimentConfig large = preset("homogeneous-large");
  EXPECT_EQ(large.game.K, 100u);
  EXPECT_EQ(large.game.N, 1000u);
  EXPECT_DOUBLE_EQ(large.game.beta, 0.5);
  EXPECT_EQ(large.game.adversary.kind, adversary::Kind::cascade);
  EXPECT_EQ(large.policies.size(), 2u);
  const ExperimentConfig small = preset("homogeneous-small");
  EXPECT_EQ(small.game.N, 10u);
  EXPECT_NEAR(small.game.N * (1.0 - small.game.beta) / small.game.K, 0.05, 1e-15);
  const ExperimentConfig het = preset("heterogeneous");
  EXPECT_EQ(het.policies.front().params.targets, heterogeneous_targets(100));
}

TEST(Presets, EveryShippedConfigParses) {
  for (const auto& entry : fs::directory_iterator(FREE2SHARD_CONFIG_DIR)) {
    if (entry.path().extension() == ".yaml") {
      EXPECT_NO_THROW(load_config(entry.path())) << entry.path();
    }
  }
}

TEST_F(TempDir, GameRunIsByteReproducible) {
  std::ostringstream log;
  const ExperimentConfig cfg = parse_config(kGame);
  const RunArtifacts a = run_experiment(cfg, root / "a", log);
  const RunArtifacts b = run_experiment(cfg, root / "b", log);
  ASSERT_EQ(a.files.size(), b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    EXPECT_EQ(a.files[i].filename(), b.files[i].filename());
    EXPECT_EQ(slurp(a.files[i]), slurp(b.files[i])) << a.files[i];
  }
  EXPECT_TRUE(fs::exists(a.directory / "f2s_trace.csv"));
  EXPECT_TRUE(fs::exists(a.directory / "f2s-dist_summary.csv"));
  EXPECT_TRUE(fs::exists(a.directory / "psi.svg"));
}

TEST_F(TempDir, TraceCsvSchema) {
  std::ostringstream log;
  const RunArtifacts a = run_experiment(parse_config(kGame), root, log);
  std::ifstream trace(a.directory / "f2s_trace.csv");
  const Table t = read_csv(trace);
  EXPECT_EQ(t.header, (std::vector<std::string>{"t", "shard", "gamma", "beta", "r", "rbar"}));
  EXPECT_EQ(t.rows.size(), 200u * 10u);
  std::ifstream summary(a.directory / "f2s_summary.csv");
  const Table s = read_csv(summary);
  EXPECT_EQ(s.header, (std::vector<std::string>{"t", "psi", "distance"}));
  EXPECT_EQ(s.rows.size(), 200u);
  const fs::path svg = plot_csv(a.directory / "f2s_summary.csv", root / "plot.svg");
  EXPECT_NE(slurp(svg).find("<svg"), std::string::npos);
}

TEST_F(TempDir, ProtocolRunWritesResources) {
  std::ostringstream log;
  ExperimentConfig cfg = load_config(fs::path(FREE2SHARD_CONFIG_DIR) / "protocol-faults.yaml");
  const RunArtifacts a = run_experiment(cfg, root, log);
  const std::string resources = slurp(a.directory / "resources.csv");
  EXPECT_EQ(resources.rfind("category,dimension,bytes\n", 0), 0u);
  EXPECT_TRUE(fs::exists(a.directory / "log.txt"));
}

TEST(Labels, DisambiguateDuplicates) {
  std::vector<policy::PolicySpec> specs(3);
  specs[0].kind = policy::Kind::f2s;
  specs[1].kind = policy::Kind::f2s_dist;
  specs[2].kind = policy::Kind::f2s;
  EXPECT_EQ(policy_labels(specs), (std::vector<std::string>{"f2s", "f2s-dist", "f2s-2"}));
}

TEST(Output, NumberFormatting) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333");
}

TEST(Output, CsvReaderRejectsRaggedRows) {
  std::istringstream in("a,b\n1,2\n3\n");
  EXPECT_THROW(read_csv(in), ArgumentError);
}

TEST(Oracles, GridMinimumOnBoundaryCase) {
  const std::vector<double> u = {1.0, 0.0}, g = {0.25, 0.25};
  EXPECT_NEAR(oracle::grid_minimum(u, g, 0.5).value, 1.0 / 3.0, 1e-12);
}

TEST(Oracles, Counting) {
  EXPECT_EQ(oracle::rounds_to_cover(1000, 10), 3u);
  EXPECT_EQ(oracle::rounds_to_cover(1, 10), 0u);
  EXPECT_EQ(oracle::subsets(5, 2).size(), 10u);
  EXPECT_TRUE(oracle::majority(3, 5));
  EXPECT_FALSE(oracle::majority(2, 4));
}

TEST(Verify, SuitesAndSummary) {
  const std::vector<std::string> names = suite_names();
  for (const char* n : {"theorem-f2s", "ssi", "bisection", "all"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  }
  EXPECT_EQ(criterion_suites().size(), 9u);
  EXPECT_THROW(run_suite("nope"), std::invalid_argument);
  const std::vector<SuiteReport> r = run_suite("criterion-1");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r[0].passed());
  EXPECT_EQ(summary_line(r[0]).rfind("criterion-1 PASS", 0), 0u) << summary_line(r[0]);
}

TEST(Verify, CheckRelations) {
  EXPECT_TRUE(at_most("x", "", 1.0, 1.0).passed());
  EXPECT_FALSE(less_than("x", "", 1.0, 1.0).passed());
  EXPECT_TRUE(at_least("x", "", 2.0, 1.0).passed());
  EXPECT_DOUBLE_EQ(at_least("x", "", 2.0, 1.5).margin(), 0.5);
  EXPECT_FALSE(at_most("x", "", std::nan(""), 1.0).passed());
}

}  // namespace
}  // namespace f2s::experiment
