#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lgtrack/ablation.hpp"
#include "lgtrack/io.hpp"

using namespace lgtrack;
using namespace lgtrack::sim;

namespace {

std::vector<ScenarioSpec> short_hard(int n) {
  std::vector<ScenarioSpec> out;
  for (int k = 0; k < n; ++k) {
    auto s = hard_scenario(100 + k);
    s.frame_count = 60;
    s.occlusions.clear();
    s.occlusions.push_back({1, 20, 30, 1.0, 2});
    out.push_back(s);
  }
  return out;
}

TrackerConfig golden_config() {
  TrackerConfig cfg;
  cfg.acmn_enabled = false;
  cfg.acm_enabled = false;
  cfg.feature.mode = FeatureMode::EMA;
  return cfg;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(AblationTest, ToggleGridShape) {
  const auto grid = toggle_grid();
  ASSERT_EQ(grid.size(), 8u);
  EXPECT_EQ(grid.front().name, "baseline");
  EXPECT_EQ(grid.back().name, "acmn+acm+sda");
  std::set<std::tuple<bool, bool, FeatureMode>> combos;
  for (const auto& t : grid) combos.insert({t.acmn, t.acm, t.feature});
  EXPECT_EQ(combos.size(), 8u);
  const auto full = standard_grid();
  ASSERT_EQ(full.size(), 10u);
  EXPECT_EQ(full[8].name, "nsakf");
  EXPECT_TRUE(full[8].nsa);
  EXPECT_EQ(full[9].feature, FeatureMode::DA);
}

TEST(AblationTest, ApplySetsSwitches) {
  const auto t = standard_grid()[8];
  const TrackerConfig cfg = t.apply(TrackerConfig{});
  EXPECT_EQ(cfg.noise_scaling(), NoiseScaling::Confidence);
  EXPECT_FALSE(cfg.acm_enabled);
  EXPECT_EQ(cfg.feature.mode, FeatureMode::EMA);
}

TEST(AblationTest, RowsArePopulatedAndThreadIndependent) {
  const auto scenarios = short_hard(2);
  const auto grid = standard_grid();
  const auto one = ablate(scenarios, grid, TrackerConfig{}, 1);
  const auto four = ablate(scenarios, grid, TrackerConfig{}, 4);
  ASSERT_EQ(one.size(), grid.size());
  EXPECT_EQ(format_ablation_table(one), format_ablation_table(four));
  for (const auto& r : one) {
    EXPECT_EQ(r.per_seed.size(), 2u);
    EXPECT_GT(r.per_seed[0].gt_count, 0);
    EXPECT_DOUBLE_EQ(r.mota, 0.5 * (r.per_seed[0].mota + r.per_seed[1].mota));
  }
}

TEST(AblationTest, AllOnIsExactOnEasyScene) {
  const std::vector<ScenarioSpec> easy{easy_scenario(1)};
  const auto grid = toggle_grid();
  const auto rows = ablate(easy, grid, TrackerConfig{}, 2);
  EXPECT_DOUBLE_EQ(rows.back().mota, 1.0);
  EXPECT_DOUBLE_EQ(rows.back().idsw, 0.0);
}

TEST(AblationTest, TableHasHeaderAndOneLinePerRow) {
  const std::vector<ScenarioSpec> easy{easy_scenario(1)};
  const auto grid = standard_grid();
  const std::string table = format_ablation_table(ablate(easy, grid, TrackerConfig{}, 1));
  std::istringstream in(table);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "config\tacmn\tacm\tfeature\tnoise\tMOTA\tIDF1\tIDSW\tFP\tFN");
  int n = 0;
  while (std::getline(in, line)) ++n;
  EXPECT_EQ(n, 10);
}

TEST(GoldenTest, BaselineOutputIsByteIdentical) {
  const auto s = simulate(hard_scenario(7));
  const auto rows = run_sequence(s.detections, golden_config());
  std::ostringstream out;
  write_tracks(out, rows);
  const std::string golden = slurp(std::filesystem::path(LGTRACK_TEST_DATA_DIR) / "golden_baseline.txt");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(out.str(), golden);
}

TEST(GoldenTest, AblationBaselineRowAgreesWithGoldenFile) {
  std::istringstream in(slurp(std::filesystem::path(LGTRACK_TEST_DATA_DIR) / "golden_baseline.txt"));
  const auto golden_rows = parse_tracks(in, "golden");
  const auto s = simulate(hard_scenario(7));
  const auto from_file = evaluate(golden_rows, s.ground_truth);

  const std::vector<ScenarioSpec> one{hard_scenario(7)};
  const std::vector<Toggle> grid{toggle_grid().front()};
  const auto row = ablate(one, grid, golden_config(), 1).front();
  // The file rounds to two decimals, so compare the counts exactly and the
  // ratios they imply.
  EXPECT_EQ(row.per_seed[0].idsw, from_file.idsw);
  EXPECT_EQ(row.per_seed[0].fp, from_file.fp);
  EXPECT_EQ(row.per_seed[0].fn, from_file.fn);
  EXPECT_DOUBLE_EQ(row.mota, from_file.mota);
}
