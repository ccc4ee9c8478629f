#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "fairsample/error.hpp"
#include "fairsample/experiment.hpp"

using namespace fairsample;

namespace {

ExperimentConfig small(std::vector<std::string> problems) {
  ExperimentConfig c;
  c.problems = std::move(problems);
  c.shots = 4096;
  c.nsrfs_inner = 200;
  return c;
}

}  // namespace

TEST(Config, ParsesAndValidates) {
  const auto c = config_from_json(nlohmann::json::parse(R"({
    "problems": ["b"], "architectures": {"b": ["5T"]},
    "noise": {"kind": "global_depolarizing", "values": [0, 0.5]},
    "shots": 100, "seeds": [3, 4], "angles": "table"})"));
  EXPECT_EQ(c.architectures.at("b"), std::vector<std::string>{"5T"});
  EXPECT_EQ(c.noise->values.size(), 2u);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{3, 4}));
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"problems": ["b"], "architectures": {"b": ["2L"]}})")),
               InputError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"problems": ["a"], "shots": 0})")), InputError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"problems": ["a"], "colour": 1})")), InputError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"noise": {"kind": "thermal", "values": [1]}})")),
               InputError);
}

TEST(Experiments, EmptyProblemListGivesNoRows) {
  EXPECT_TRUE(run_experiments(small({})).empty());
}

TEST(Experiments, NoiselessTwoSpinCellIsExactAndFair) {
  auto c = small({"e"});
  const auto rows = run_experiments(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].error, "");
  EXPECT_NEAR(*rows[0].gsp, 1.0, 1e-3);
  EXPECT_TRUE(rows[0].nsrfs.capped());
  EXPECT_EQ(rows[0].backend, "ideal");
}

TEST(Experiments, GlobalDepolarizingSweepLowersGsp) {
  auto c = small({"b"});
  c.architectures["b"] = {"5T"};
  c.noise = NoiseSweep{"global_depolarizing", {0.0, 0.5, 1.0}};
  const auto rows = run_experiments(c);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_GT(*rows[0].gsp, *rows[1].gsp);
  EXPECT_GT(*rows[1].gsp, *rows[2].gsp);
  EXPECT_NEAR(*rows[2].gsp, 0.375, 0.03);
}

TEST(Experiments, BackendCellsCarryAggregateError) {
  auto c = small({"d"});
  c.backends = {std::filesystem::path(FAIRSAMPLE_DATA_DIR) / "backends" / "synthetic_line5.json"};
  const auto rows = run_experiments(c);
  ASSERT_EQ(rows.size(), 6u);  // six 3L placements on a five-qubit line
  for (const auto& r : rows) {
    EXPECT_EQ(r.error, "");
    ASSERT_TRUE(r.aggregate_error);
    EXPECT_GT(*r.aggregate_error, 0.0);
    EXPECT_FALSE(r.embedding.empty());
  }
}

TEST(Experiments, FailuresAreRecordedPerRow) {
  auto c = small({"e", "f"});
  c.backends = {"/nonexistent/device.json"};
  const auto rows = run_experiments(c);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) EXPECT_NE(r.error, "");
}

TEST(Experiments, DeterministicAndJobIndependent) {
  auto c = small({"d", "e"});
  c.noise = NoiseSweep{"gate_depolarizing", {0.01}};
  c.seeds = {1, 2};
  const auto a = results_to_csv(run_experiments(c, 1));
  const auto b = results_to_csv(run_experiments(c, 3));
  EXPECT_EQ(a, b);
}

TEST(Csv, RoundTrip) {
  ResultRow r;
  r.problem = "b";
  r.architecture = "5T";
  r.backend = "dev,1";
  r.embedding = "q0-q1";
  r.shots = 40960;
  r.gsp = 0.5;
  r.chi2 = 1.25;
  r.dof = 5;
  r.nsrfs = {NsrfsResult::Status::Value, 1234};
  r.error = "said \"no\"";
  ResultRow capped = r;
  capped.nsrfs = {NsrfsResult::Status::Capped, 0};
  capped.gsp.reset();
  const auto text = results_to_csv({r, capped}, {"note"});
  EXPECT_EQ(text.rfind("# note\nproblem,architecture,backend", 0), 0u);
  const auto back = results_from_csv(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].backend, "dev,1");
  EXPECT_EQ(back[0].error, "said \"no\"");
  EXPECT_EQ(back[0].nsrfs.shots, 1234);
  EXPECT_TRUE(back[1].nsrfs.capped());
  EXPECT_FALSE(back[1].gsp);
  EXPECT_EQ(results_to_csv(back, {"note"}), text);
  EXPECT_THROW(results_from_csv("a,b\n"), ParseError);
}
