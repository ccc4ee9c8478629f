#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fairsample/parity_network.hpp"
#include "oracles.hpp"

using namespace fairsample;

namespace {

// Checks that `c` maps |x> (ancilla rows zero) to exp(i pi e prod x) |parities of x>.
void expect_multi_controlled_phase(const Circuit& c, const std::vector<std::uint32_t>& rows,
                                   const std::vector<std::uint32_t>& final_rows, int vars, double e) {
  const int n = c.num_wires();
  const auto u = oracle::circuit_unitary(c);
  for (std::uint32_t v = 0; v < (1u << vars); ++v) {
    auto wire_value = [&](std::uint32_t row) { return static_cast<std::uint32_t>(__builtin_popcount(row & v) & 1); };
    std::size_t in = 0, out = 0;
    for (int w = 0; w < n; ++w) {
      in = (in << 1) | wire_value(rows[static_cast<std::size_t>(w)]);
      out = (out << 1) | wire_value(final_rows[static_cast<std::size_t>(w)]);
    }
    const bool all = v == (1u << vars) - 1;
    const auto want = std::polar(1.0, all ? std::numbers::pi * e : 0.0);
    EXPECT_LT(std::abs(u[out][in] - want), 1e-10) << "input " << v;
  }
}

bool on_edges(const Circuit& c, const Architecture& a) {
  for (const auto& g : c.gates())
    if (g.arity() == 2 && !a.adjacent(g.qubits[0], g.qubits[1])) return false;
  return true;
}

}  // namespace

TEST(ParityNetwork, LineOfThree) {
  const auto a = Architecture::named("3L");
  const std::vector<std::uint32_t> rows{1, 2, 4};
  const auto plan = plan_parity_network(a, rows, 3);
  std::vector<std::uint32_t> fin;
  const auto c = emit_parity_network(plan, 3, rows, 3, 0.37, &fin);
  EXPECT_TRUE(on_edges(c, a));
  EXPECT_EQ(plan.cnots, count_gates(c).cnots);
  expect_multi_controlled_phase(c, rows, fin, 3, 0.37);
}

TEST(ParityNetwork, TwoVariablesNeedTwoCnots) {
  const auto plan = plan_parity_network(Architecture::named("2L"), {1, 2}, 2);
  EXPECT_EQ(plan.cnots, 2);
}

TEST(ParityNetwork, FourWireShapes) {
  for (const char* name : {"4L", "4T"}) {
    const auto a = Architecture::named(name);
    const std::vector<std::uint32_t> rows{1, 2, 4, 8};
    const auto plan = plan_parity_network(a, rows, 4, 2.0);
    std::vector<std::uint32_t> fin;
    const auto c = emit_parity_network(plan, 4, rows, 4, -0.2, &fin);
    EXPECT_TRUE(on_edges(c, a)) << name;
    expect_multi_controlled_phase(c, rows, fin, 4, -0.2);
  }
}

TEST(ParityNetwork, AndGadgetWithAncilla) {
  const auto a = Architecture::named("5T");
  const std::vector<std::uint32_t> rows{1, 2, 0, 4, 8};
  const auto plan = plan_and_parity_network(a, rows, 4, 2.0);
  std::vector<std::uint32_t> fin;
  const auto c = emit_parity_network(plan, 5, rows, 4, 0.61, &fin);
  EXPECT_TRUE(on_edges(c, a));
  expect_multi_controlled_phase(c, rows, fin, 4, 0.61);
}
