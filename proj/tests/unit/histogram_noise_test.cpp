#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "fairsample/error.hpp"
#include "fairsample/histogram.hpp"
#include "fairsample/noise.hpp"

using namespace fairsample;

TEST(Histogram, TotalsAndWidth) {
  CountsHistogram h;
  h.add("01", 3);
  h.add("10");
  h.add("01", 2);
  h.add_discarded(4);
  EXPECT_DOUBLE_EQ(h.count("01"), 5);
  EXPECT_DOUBLE_EQ(h.count("11"), 0);
  EXPECT_EQ(h.shots(), 6);
  EXPECT_EQ(h.discarded(), 4);
  EXPECT_EQ(h.width(), 2);
  EXPECT_THROW(h.add("1"), InputError);
  EXPECT_THROW(h.add("2x"), InputError);
}

TEST(Histogram, MergeAndJson) {
  CountsHistogram a, b;
  a.add("0", 2);
  b.add("1", 3);
  b.add_discarded(1);
  a.merge(b);
  const auto back = histogram_from_json(to_json(a));
  EXPECT_DOUBLE_EQ(back.count("0"), 2);
  EXPECT_DOUBLE_EQ(back.count("1"), 3);
  EXPECT_EQ(back.discarded(), 1);
  EXPECT_EQ(to_json(a)["shots"], 5);
}

TEST(NoiseModel, ValidatesProbabilities) {
  NoiseModel n;
  EXPECT_TRUE(n.is_noiseless());
  n.global_depolarizing = 1.5;
  EXPECT_THROW(n.validate(), InputError);
  n.global_depolarizing = 0.0;
  n.readout[0] = {0.1, -0.1};
  EXPECT_THROW(n.validate(), InputError);
}

TEST(NoiseModel, InstanceRatesOverrideKinds) {
  NoiseModel n;
  n.gate_depolarizing[GateKind::CNOT] = 0.02;
  n.instance_depolarizing[3] = 0.5;
  EXPECT_DOUBLE_EQ(n.depolarizing(0, GateKind::CNOT), 0.02);
  EXPECT_DOUBLE_EQ(n.depolarizing(0, GateKind::H), 0.0);
  EXPECT_DOUBLE_EQ(n.depolarizing(3, GateKind::H), 0.5);
  EXPECT_TRUE(n.has_gate_noise());
}

TEST(NoiseModel, JsonRoundTrip) {
  NoiseModel n;
  n.gate_depolarizing[GateKind::H] = 0.01;
  n.coherent_overrotation = 0.05;
  n.zz_after_cnot = 0.02;
  n.readout[1] = {0.03, 0.08};
  n.global_depolarizing = 0.25;
  n.seed = 9;
  const auto back = noise_from_json(to_json(n));
  EXPECT_EQ(back.gate_depolarizing, n.gate_depolarizing);
  EXPECT_EQ(back.readout, n.readout);
  EXPECT_DOUBLE_EQ(back.coherent_overrotation, 0.05);
  EXPECT_DOUBLE_EQ(back.global_depolarizing, 0.25);
  EXPECT_EQ(gate_kind_from_name("cx"), GateKind::CNOT);
  EXPECT_THROW(gate_kind_from_name("ccx"), InputError);
}
