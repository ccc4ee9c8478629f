#include <gtest/gtest.h>

#include <algorithm>
#include <nlohmann/json.hpp>

#include "fairsample/chi_square.hpp"
#include "fairsample/error.hpp"
#include "fairsample/fairness.hpp"
#include "fairsample/gmqaoa.hpp"
#include "fairsample/simulator.hpp"
#include "oracles.hpp"

using namespace fairsample;

namespace {

long long median_nsrfs(const std::vector<double>& w, int seeds) {
  std::vector<long long> v;
  for (int s = 0; s < seeds; ++s) {
    NsrfsOptions o;
    o.seed = static_cast<std::uint64_t>(s);
    const auto r = nsrfs_from_weights(w, o);
    v.push_back(r.capped() ? (1LL << 40) : r.shots);
  }
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST(Gsp, NoiselessTwoSpinProblemIsAlwaysGround) {
  const auto cc = build_full_circuit("e", Architecture::named("2L"), table_angles("e"));
  const auto h = expected_counts(cc.circuit, 40960);
  const auto g = ground_states(builtin_problem("e"));
  EXPECT_NEAR(gsp(h, g, cc.circuit.measured_labels(), true), 1.0, 1e-3);
}

TEST(Gsp, UniformCountsHitSixOfSixteen) {
  const auto g = ground_states(builtin_problem("b"));
  CountsHistogram h;
  for (std::uint64_t x = 0; x < 16; ++x) h.add(oracle::bits_of(x, 4), 100);
  const std::vector<int> id{0, 1, 2, 3};
  EXPECT_NEAR(gsp(h, g, id, true), 0.375, 1e-12);
}

TEST(Gsp, NoGroundStateMeansZeroAndEmptyIsUndefined) {
  const auto g = ground_states(builtin_problem("f"));
  CountsHistogram h;
  h.add("00", 5);
  h.add("11", 5);
  EXPECT_DOUBLE_EQ(gsp(h, g), 0.0);
  EXPECT_THROW(gsp(CountsHistogram{}, g), UndefinedMetricError);
}

TEST(Gsp, ReadoutLabelsAreApplied) {
  // Wire 0 carries logical qubit 1 and vice versa.
  CountsHistogram h;
  h.add("01", 10);
  const auto logical = logical_counts(h, {1, 0}, false);
  EXPECT_DOUBLE_EQ(logical.count("10"), 10);
  const auto fixed = logical_counts(h, {1, 0}, true);
  EXPECT_DOUBLE_EQ(fixed.count("010"), 10);
}

TEST(Nsrfs, BiasedCoinNeedsAboutSeventyFlips) {
  double total = 0;
  for (int s = 0; s < 10; ++s) {
    NsrfsOptions o;
    o.seed = static_cast<std::uint64_t>(s);
    const auto r = nsrfs_from_weights({0.6, 0.4}, o);
    ASSERT_EQ(r.status, NsrfsResult::Status::Value);
    total += static_cast<double>(r.shots);
  }
  EXPECT_NEAR(total / 10, 74.0, 3.0);
}

TEST(Nsrfs, MedianSummaryIsStricter) {
  NsrfsOptions o;
  o.summary = ChiSquareSummary::Median;
  const auto median = nsrfs_from_weights({0.6, 0.4}, o);
  o.summary = ChiSquareSummary::Mean;
  const auto mean = nsrfs_from_weights({0.6, 0.4}, o);
  EXPECT_GT(median.shots, mean.shots);
}

TEST(Nsrfs, LastMidpointNeverExceedsSmallestRejecting) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    NsrfsOptions o;
    o.seed = s;
    const auto upper = nsrfs_from_weights({0.7, 0.3}, o);
    o.result = NsrfsReturn::LastMidpoint;
    const auto mid = nsrfs_from_weights({0.7, 0.3}, o);
    EXPECT_LE(mid.shots, upper.shots);
    EXPECT_GE(mid.shots, upper.shots - 2);
  }
}

TEST(Nsrfs, SkewedCoinRejectsSooner) {
  EXPECT_LT(median_nsrfs({0.9, 0.1}, 20), median_nsrfs({0.6, 0.4}, 20));
  EXPECT_LT(median_nsrfs({0.6, 0.4}, 20), median_nsrfs({0.55, 0.45}, 20));
}

TEST(Nsrfs, UniformWeightsAreCapped) {
  const auto r = nsrfs_from_weights({0.25, 0.25, 0.25, 0.25});
  EXPECT_TRUE(r.capped());
  EXPECT_EQ(r.to_string(), "CAPPED");
}

TEST(Nsrfs, SmallCapIsHonoured) {
  NsrfsOptions o;
  o.cap = 64;
  EXPECT_TRUE(nsrfs_from_weights({0.51, 0.49}, o).capped());
}

TEST(Nsrfs, SingleObservedState) {
  // All draws land in one cell: the statistic is n * (d - 1).
  const auto r = nsrfs_from_weights({5, 0, 0});
  ASSERT_EQ(r.status, NsrfsResult::Status::Value);
  EXPECT_EQ(r.shots, static_cast<long long>(std::ceil(chi2_critical(2) / 2)));
  EXPECT_EQ(nsrfs_from_weights({0, 3}).shots, 4);
}

TEST(Nsrfs, UndefinedCases) {
  EXPECT_THROW(nsrfs_from_weights({0, 0}), UndefinedMetricError);
  EXPECT_THROW(nsrfs_from_weights({1}), UndefinedMetricError);
}

TEST(Nsrfs, ReproducibleForSeed) {
  NsrfsOptions o;
  o.seed = 99;
  EXPECT_EQ(nsrfs_from_weights({0.3, 0.3, 0.4}, o).shots, nsrfs_from_weights({0.3, 0.3, 0.4}, o).shots);
}

TEST(Fairness, NoiselessCircuitsRejectAtTheNominalRate) {
  const auto cc = build_full_circuit("d", Architecture::named("3L"), table_angles("d"));
  const auto ground = reachable_ground_states(ground_states(builtin_problem("d")), true);
  const double crit = chi2_critical(ground.degeneracy() - 1);
  int rejected = 0;
  const int runs = 200;
  for (int s = 0; s < runs; ++s) {
    const auto h = logical_counts(sample(cc.circuit, nullptr, 40960, static_cast<std::uint64_t>(s)),
                                  cc.circuit.measured_labels(), true);
    if (chi2_stat(ground_state_counts(h, ground)).statistic > crit) ++rejected;
  }
  EXPECT_NEAR(static_cast<double>(rejected) / runs, 0.05, 0.04);
}

TEST(Fairness, ReportFields) {
  const auto ground = ground_states(builtin_problem("f"));
  CountsHistogram h;
  h.add("01", 60);
  h.add("10", 40);
  h.add("00", 100);
  NsrfsOptions o;
  o.inner = 200;
  const auto r = evaluate_fairness(h, ground, o);
  EXPECT_DOUBLE_EQ(r.gsp, 0.5);
  EXPECT_EQ(r.dof, 1);
  ASSERT_TRUE(r.chi2);
  EXPECT_DOUBLE_EQ(*r.chi2, 4.0);
  EXPECT_DOUBLE_EQ(r.weights[0] + r.weights[1], 1.0);
  const auto j = to_json(r);
  EXPECT_EQ(j["dof"], 1);
  EXPECT_TRUE(j["nsrfs"].is_number());
}

TEST(Fairness, ReportWithoutGroundHits) {
  const auto ground = ground_states(builtin_problem("f"));
  CountsHistogram h;
  h.add("00", 10);
  const auto r = evaluate_fairness(h, ground);
  EXPECT_FALSE(r.chi2);
  EXPECT_FALSE(r.nsrfs.defined());
}
