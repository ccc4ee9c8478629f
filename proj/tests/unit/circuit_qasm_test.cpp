#include <gtest/gtest.h>

#include "fairsample/circuit.hpp"
#include "fairsample/error.hpp"
#include "fairsample/simulator.hpp"

using namespace fairsample;

TEST(Circuit, CountsRotationsAndCnots) {
  Circuit c(3);
  c.append(Gate::h(0)).append(Gate::phase(1, 0.25)).append(Gate::cnot(0, 1)).append(Gate::swap(1, 2));
  c.append(Gate::cphase(0, 2, 0.5));
  const auto n = count_gates(c);
  EXPECT_EQ(n.rotations, 2 + 3);
  EXPECT_EQ(n.cnots, 1 + 3 + 2);
  EXPECT_EQ(c.counts(), n);
}

TEST(Circuit, RejectsBadWires) {
  Circuit c(2);
  EXPECT_THROW(c.append(Gate::h(2)), InputError);
  EXPECT_THROW(c.append(Gate::cnot(1, 1)), InputError);
  EXPECT_THROW(c.set_readout_perm({0, 0}), InputError);
}

TEST(Circuit, AncillasAreNotMeasured) {
  Circuit c(3);
  c.set_ancilla_wires({1});
  EXPECT_EQ(c.measured_wires(), (std::vector<int>{0, 2}));
}

TEST(Qasm, RoundTripPreservesGatesAndBookkeeping) {
  Circuit c(3);
  c.append(Gate::h(0)).append(Gate::x(2)).append(Gate::t(2)).append(Gate::tdg(0));
  c.append(Gate::phase(1, -0.1916666666666666)).append(Gate::cphase(0, 1, 0.3)).append(Gate::cnot(2, 0));
  c.append(Gate::swap(0, 2));
  c.set_readout_perm({1, 2, 0});
  c.set_ancilla_wires({1});
  const auto back = from_qasm(to_qasm(c));
  ASSERT_EQ(back.gates().size(), c.gates().size());
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    EXPECT_EQ(back.gates()[i].kind, c.gates()[i].kind);
    EXPECT_EQ(back.gates()[i].qubits, c.gates()[i].qubits);
    EXPECT_DOUBLE_EQ(back.gates()[i].exponent, c.gates()[i].exponent);
  }
  EXPECT_EQ(back.ancilla_wires(), c.ancilla_wires());
  EXPECT_EQ(back.measured_labels(), c.measured_labels());
  EXPECT_TRUE(equivalent(c, back, 1e-12));
}

TEST(Qasm, ParsesArithmeticAngles) {
  const auto c = from_qasm(
      "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\ncreg c[1];\nu1(-pi/4 + 2*(pi/8)) q[0];\nu1(0.5) q[0];\n"
      "barrier q[0];\nmeasure q[0] -> c[0];\n");
  ASSERT_EQ(c.gates().size(), 2u);
  EXPECT_NEAR(c.gates()[0].exponent, 0.0, 1e-15);
  EXPECT_NEAR(c.gates()[1].exponent, 0.5 / 3.141592653589793, 1e-15);
}

TEST(Qasm, ReportsLineOfUnsupportedGate) {
  try {
    from_qasm("OPENQASM 2.0;\nqreg q[2];\nh q[0];\nccx q[0],q[1],q[0];\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  EXPECT_THROW(from_qasm("OPENQASM 2.0;\nqreg q[1];\nh q[3];\n"), ParseError);
  EXPECT_THROW(from_qasm("OPENQASM 2.0;\nqreg q[1];\nu1(pi q[0];\n"), ParseError);
}
