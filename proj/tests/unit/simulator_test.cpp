#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fairsample/error.hpp"
#include "fairsample/gmqaoa.hpp"
#include "fairsample/ising.hpp"
#include "fairsample/simulator.hpp"
#include "oracles.hpp"

using namespace fairsample;

namespace {

Circuit random_circuit(int n, int gates, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> kind(0, 7), wire(0, n - 1);
  std::uniform_real_distribution<double> angle(-2.0, 2.0);
  Circuit c(n);
  for (int i = 0; i < gates; ++i) {
    const int a = wire(rng);
    int b = wire(rng);
    while (b == a) b = wire(rng);
    switch (kind(rng)) {
      case 0: c.append(Gate::h(a)); break;
      case 1: c.append(Gate::x(a)); break;
      case 2: c.append(Gate::t(a)); break;
      case 3: c.append(Gate::tdg(a)); break;
      case 4: c.append(Gate::phase(a, angle(rng))); break;
      case 5: c.append(Gate::cphase(a, b, angle(rng))); break;
      case 6: c.append(Gate::cnot(a, b)); break;
      default: c.append(Gate::swap(a, b)); break;
    }
  }
  return c;
}

}  // namespace

TEST(Simulator, MatchesDenseUnitary) {
  for (std::uint32_t seed = 1; seed <= 20; ++seed) {
    const int n = 1 + static_cast<int>(seed % 5);
    auto c = random_circuit(std::max(n, 2), 30, seed);
    const auto u = oracle::circuit_unitary(c);
    const auto sv = simulate(c);
    for (std::size_t x = 0; x < u.size(); ++x) EXPECT_LT(std::abs(sv.amplitudes()[x] - u[x][0]), 1e-12);
    EXPECT_NEAR(sv.norm_squared(), 1.0, 1e-12);
  }
}

TEST(Simulator, HadamardGivesEqualAmplitudes) {
  Circuit c(1);
  c.append(Gate::h(0));
  const auto sv = simulate(c);
  EXPECT_NEAR(sv.amplitudes()[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(sv.amplitudes()[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Simulator, WireLimit) { EXPECT_THROW(Statevector(25), CapabilityError); }

TEST(Simulator, ExpectationOfUniformStateOnTwoSpins) {
  Circuit c(2);
  c.append(Gate::h(0)).append(Gate::h(1));
  EXPECT_NEAR(expectation(simulate(c), builtin_problem("f")), 0.0, 1e-15);
  Circuit ground(2);
  ground.append(Gate::x(1));
  EXPECT_NEAR(expectation(simulate(ground), builtin_problem("f")), ground_states(builtin_problem("f")).energy, 1e-15);
}

TEST(Simulator, TwoSpinCircuitSamplesBothGroundStates) {
  const auto cc = build_full_circuit("f", Architecture::named("2L"), {});
  const auto h = sample(cc.circuit, nullptr, 40960, 3);
  EXPECT_DOUBLE_EQ(h.count("00") + h.count("11"), 0.0);
  const double sigma = std::sqrt(40960 * 0.25);
  EXPECT_LT(std::abs(h.count("01") - 20480), 5 * sigma);
  EXPECT_LT(std::abs(h.count("10") - 20480), 5 * sigma);
}

TEST(Simulator, SamplingIsDeterministicAndJobIndependent) {
  const auto c = random_circuit(4, 40, 77);
  NoiseModel n;
  n.gate_depolarizing[GateKind::CNOT] = 0.05;
  n.readout[2] = {0.1, 0.2};
  const auto a = sample(c, &n, 10000, 42, 1);
  const auto b = sample(c, &n, 10000, 42, 3);
  EXPECT_EQ(a.counts(), b.counts());
  const auto other = sample(c, &n, 10000, 43, 1);
  EXPECT_NE(a.counts(), other.counts());
}

TEST(Simulator, FullGlobalDepolarizingIsUniform) {
  const auto c = random_circuit(3, 20, 5);
  NoiseModel n;
  n.global_depolarizing = 1.0;
  const long long shots = 80000;
  const auto h = sample(c, &n, shots, 11);
  const double p = 1.0 / 8.0, sigma = std::sqrt(shots * p * (1 - p));
  for (std::uint64_t x = 0; x < 8; ++x) EXPECT_LT(std::abs(h.count(oracle::bits_of(x, 3)) - shots * p), 5 * sigma);
}

TEST(Simulator, CertainReadoutFlip) {
  Circuit c(2);
  c.append(Gate::h(0));
  NoiseModel n;
  n.readout[1] = {1.0, 0.0};
  const auto h = sample(c, &n, 1000, 1);
  EXPECT_DOUBLE_EQ(h.count("00") + h.count("10"), 0.0);
  EXPECT_DOUBLE_EQ(h.count("01") + h.count("11"), 1000.0);
}

TEST(Simulator, AncillaPostSelection) {
  Circuit c(2);
  c.append(Gate::h(1));
  c.set_ancilla_wires({1});
  const auto h = sample(c, nullptr, 20000, 8);
  EXPECT_EQ(h.shots() + h.discarded(), 20000);
  EXPECT_NEAR(static_cast<double>(h.discarded()) / 20000, 0.5, 0.02);
  EXPECT_EQ(h.width(), 1);
  const auto md = measured_distribution(c, simulate(c).probabilities());
  EXPECT_NEAR(md.retained, 0.5, 1e-15);
  EXPECT_NEAR(md.probs[0], 1.0, 1e-15);
}

TEST(Simulator, ExpectedCountsAreExact) {
  Circuit c(1);
  c.append(Gate::h(0));
  const auto h = expected_counts(c, 1000);
  EXPECT_NEAR(h.count("0"), 500.0, 1e-9);
  EXPECT_NEAR(h.count("1"), 500.0, 1e-9);
}

// Coherent errors: every rotation overshoots by delta, and a ZZ phase follows each CNOT.
TEST(Simulator, CoherentErrorsMatchPerturbedUnitaries) {
  const double delta = 0.07, theta = 0.03;
  const auto c = random_circuit(3, 25, 19);
  NoiseModel n;
  n.coherent_overrotation = delta;
  n.zz_after_cnot = theta;
  const auto sv = simulate(c, n);

  using oracle::cd;
  const double pi = std::numbers::pi;
  auto rot = [](double angle, double nx, double nz) {
    // exp(-i angle/2 (nx X + nz Z))
    const double cs = std::cos(angle / 2), sn = std::sin(angle / 2);
    const cd i(0.0, 1.0);
    return oracle::Matrix{{cs - i * sn * nz, -i * sn * nx}, {-i * sn * nx, cs + i * sn * nz}};
  };
  oracle::Matrix u = oracle::identity(8);
  for (const auto& g : c.gates()) {
    oracle::Matrix gm;
    if (g.arity() == 1) {
      oracle::Matrix m1;
      const double r = 1.0 / std::sqrt(2.0);
      switch (g.kind) {
        case GateKind::H: m1 = rot(pi + delta, r, r); break;
        case GateKind::X: m1 = rot(pi + delta, 1.0, 0.0); break;
        default: {
          Gate shifted = g;
          shifted.kind = GateKind::PhaseShift;
          shifted.exponent = (g.kind == GateKind::T ? 0.25 : g.kind == GateKind::Tdg ? -0.25 : g.exponent) + delta / pi;
          m1 = oracle::single(shifted);
        }
      }
      gm = {{1.0}};
      for (int q = 0; q < 3; ++q) gm = oracle::kron(gm, q == g.qubits[0] ? m1 : oracle::identity(2));
    } else if (g.kind == GateKind::CPhaseShift) {
      Gate shifted = g;
      shifted.exponent += delta / pi;
      gm = oracle::gate_matrix(shifted, 3);
    } else {
      gm = oracle::gate_matrix(g, 3);
    }
    u = oracle::matmul(gm, u);
    if (g.kind == GateKind::CNOT) {
      oracle::Matrix zz = oracle::identity(8);
      for (std::size_t x = 0; x < 8; ++x) {
        const int za = ((x >> (2 - g.qubits[0])) & 1U) ? -1 : 1, zb = ((x >> (2 - g.qubits[1])) & 1U) ? -1 : 1;
        zz[x][x] = std::polar(1.0, -theta / 2 * za * zb);
      }
      u = oracle::matmul(zz, u);
    }
  }
  for (std::size_t x = 0; x < 8; ++x) EXPECT_NEAR(std::norm(sv.amplitudes()[x]), std::norm(u[x][0]), 1e-12);
}
