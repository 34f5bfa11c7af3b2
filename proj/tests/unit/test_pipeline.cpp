#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "pslab/pipeline.hpp"
#include "test_util.hpp"

using namespace pslab;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.name = "unit";
  c.x_list = {1000, 3000};
  c.c_list = {"21/20"};
  c.toy_W = 32;
  return c;
}

}  // namespace

TEST(Config, RoundTrip) {
  auto text =
      "# sweep\nname = demo\nx = 1000\nx = 10000\nd = 2\nd = 3\nc = 42/40\nc = 11/10\n"
      "toy_w = 32\nseed = 99\ndecay_mode = sampled\nnormalization = unit-mean\ncoeffs = 1,-2,1\n"
      "eps = 1/50\nu_offset = 1/4\ngreedy = false\nrestriction = true\ngrid_m = 65536\ns = 7\n";
  auto cfg = ExperimentConfig::parse(text);
  EXPECT_EQ(cfg.name, "demo");
  EXPECT_EQ(cfg.x_list, (std::vector<u64>{1000, 10000}));
  EXPECT_EQ(cfg.c_list, (std::vector<std::string>{"21/20", "11/10"}));
  EXPECT_EQ(cfg.toy_W, u64{32});
  EXPECT_FALSE(cfg.greedy);
  EXPECT_EQ(cfg.s, 7);
  auto again = ExperimentConfig::parse(cfg.serialize());
  EXPECT_EQ(again, cfg);
  EXPECT_EQ(again.serialize(), cfg.serialize());
  EXPECT_EQ(again.hash(), cfg.hash());
  cfg.seed = 100;
  EXPECT_NE(again.hash(), cfg.hash());
  EXPECT_EQ(cfg.cell_count(), 8u);
}

TEST(Config, ValidationRejectsDocumentedViolations) {
  auto ok = small_config();
  ok.validate();
  auto bad = ok;
  bad.c_list = {"1"};
  EXPECT_PSLAB_ERROR(bad.validate(), ErrorCode::invalid_exponent);
  bad = ok;
  bad.coeffs = {1, 1, -1};
  EXPECT_PSLAB_ERROR(bad.validate(), ErrorCode::not_translation_invariant);
  bad = ok;
  bad.toy_W.reset();
  bad.x_list = {10};
  EXPECT_PSLAB_ERROR(bad.validate(), ErrorCode::undefined_w);
  bad = ok;
  bad.x_list.assign(101, 1000);
  bad.c_list.assign(100, "21/20");
  EXPECT_PSLAB_ERROR(bad.validate(), ErrorCode::invalid_argument);
  bad = ok;
  bad.d_list = {1};
  EXPECT_PSLAB_ERROR(bad.validate(), ErrorCode::invalid_degree);
  EXPECT_PSLAB_ERROR(ExperimentConfig::parse("colour = red\n"), ErrorCode::parse_error);
  EXPECT_PSLAB_ERROR(ExperimentConfig::parse("x = ten\n"), ErrorCode::parse_error);
}

TEST(Rng, SplitMixIsDeterministicAndStreamsDiffer) {
  u64 a = 1, b = 1;
  EXPECT_EQ(splitmix64(a), splitmix64(b));
  // Reference value of the generator for state 0.
  u64 z = 0;
  EXPECT_EQ(splitmix64(z), 0xe220a8397b1dcdafULL);
  auto r1 = make_rng(5, 0), r2 = make_rng(5, 0), r3 = make_rng(5, 1);
  EXPECT_EQ(r1(), r2());
  EXPECT_NE(make_rng(5, 0)(), r3());
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
}

TEST(Sweep, CardinalityAndOrder) {
  ExperimentConfig cfg;
  cfg.x_list = {1000, 10000, 100000};
  cfg.c_list = {"21/20", "11/10"};
  cfg.toy_W = 32;
  cfg.greedy = false;
  cfg.restriction = false;
  auto cells = sweep(cfg);
  ASSERT_EQ(cells.size(), 6u);
  EXPECT_EQ(cells[0].c, "21/20");
  EXPECT_EQ(cells[0].x, 1000u);
  EXPECT_EQ(cells[2].x, 100000u);
  EXPECT_EQ(cells[3].c, "11/10");
  // A single cell matches the corresponding sweep row.
  auto one = run_cell(cfg, 2, "11/10", 10000);
  EXPECT_EQ(cells_csv({one}), cells_csv({cells[4]}));
}

TEST(Pipeline, ByteIdenticalCsv) {
  auto cfg = small_config();
  auto a = run_pipeline(cfg);
  auto b = run_pipeline(cfg);
  EXPECT_EQ(cells_csv(a.cells), cells_csv(b.cells));
  EXPECT_EQ(a.config_hash, cfg.hash());
  EXPECT_EQ(a.tool_version, std::string(version()));
  // Thread count does not change the CSV either.
  auto c = run_pipeline(cfg, Exec{3, false});
  EXPECT_EQ(cells_csv(a.cells), cells_csv(c.cells));
}

TEST(Pipeline, ManifestCarriesAllQuantities) {
  auto cfg = small_config();
  auto m = run_pipeline(cfg);
  ASSERT_EQ(m.cells.size(), 2u);
  for (auto& cell : m.cells) {
    EXPECT_TRUE(std::isfinite(cell.decay));
    EXPECT_GT(cell.decay, 0);
    EXPECT_TRUE(std::isfinite(cell.moment_ratio));
    EXPECT_GT(cell.kt_left, 0);
    EXPECT_EQ(cell.greedy_nontrivial, "0");
    EXPECT_EQ(cell.W, 32u);
    // 21/20 lies above 1 + c(2,5) = 55/54, so the cell carries a warning.
    EXPECT_FALSE(cell.c_admissible);
    EXPECT_FALSE(cell.warnings.empty());
  }
  auto j = nlohmann::json::parse(manifest_json(m));
  EXPECT_EQ(j["cells"].size(), 2u);
  EXPECT_TRUE(j.contains("checks"));
  std::set<std::string> names;
  for (auto& chk : m.checks) names.insert(chk.name);
  EXPECT_TRUE(names.count("quantities-present"));
  EXPECT_TRUE(names.count("greedy-verified"));
}

TEST(Pipeline, InadmissibleCWarnsAndProceeds) {
  auto cfg = small_config();
  cfg.x_list = {1000};
  cfg.c_list = {"3/2"};
  auto m = run_pipeline(cfg);
  ASSERT_EQ(m.cells.size(), 1u);
  EXPECT_FALSE(m.cells[0].c_admissible);
  EXPECT_FALSE(m.cells[0].warnings.empty());
  EXPECT_TRUE(std::isfinite(m.cells[0].decay));
}

TEST(Pipeline, EmptyPrimeSetAtXOne) {
  auto cfg = small_config();
  cfg.x_list = {1};
  auto m = run_pipeline(cfg);
  ASSERT_EQ(m.cells.size(), 1u);
  auto& cell = m.cells[0];
  EXPECT_EQ(cell.primes, 0u);
  EXPECT_EQ(cell.mass, 0.0);
  EXPECT_EQ(cell.kt_left, 0.0);
  EXPECT_EQ(cell.kt_right, 0.0);
  EXPECT_EQ(cell.greedy_size, 0u);
  // nu = 0 leaves the indicator itself, whose transform peaks at N.
  EXPECT_DOUBLE_EQ(cell.decay, 1.0);
  EXPECT_TRUE(m.all_pass());
}

TEST(Pipeline, StageErrorNamesStage) {
  auto cfg = small_config();
  cfg.grid_M = 16;  // below N
  try {
    run_pipeline(cfg);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::grid_too_coarse);
    EXPECT_NE(std::string(e.what()).find("decay"), std::string::npos) << e.what();
  }
}
