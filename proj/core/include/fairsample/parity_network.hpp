#pragma once

#include <cstdint>
#include <vector>

#include "fairsample/architecture.hpp"
#include "fairsample/circuit.hpp"

namespace fairsample {

// Synthesis of CNOT + phase networks for the diagonal core of the mixer.
//
// A wire's "row" is the parity (bitmask over variables) it currently holds. The
// product x_0 x_1 ... x_{m-1} expands into phases on every nonzero parity:
//   prod x = 2^{-(m-1)} * sum_{S != 0} (-1)^{|S|-1} parity_S(x)
// so a multi-controlled phase becomes a CNOT walk that visits every parity once.

struct NetworkStep {
  enum class Kind { Cnot, And, AndDagger };
  Kind kind = Kind::Cnot;
  int a = 0;       // CNOT control, or first AND input
  int b = -1;      // second AND input
  int target = 0;  // CNOT target, or AND output wire
};

struct NetworkPlan {
  std::vector<NetworkStep> steps;
  int cnots = 0;
};

// Visit every nonzero parity of `num_vars` variables and return the rows to a
// permutation of the initial ones. weight = 1 is optimal; larger weights trade
// CNOTs for search time.
NetworkPlan plan_parity_network(const Architecture& arch, const std::vector<std::uint32_t>& rows,
                                int num_vars, double weight = 1.0);

// Same goal using one clean ancilla (a zero row): compute y = x_i AND x_j into
// the ancilla, visit every parity of {y} and the remaining variables, then
// uncompute y. Each AND costs 3 CNOTs.
NetworkPlan plan_and_parity_network(const Architecture& arch, const std::vector<std::uint32_t>& rows,
                                    int num_vars, double weight = 1.0);

// Gates for a plan. Every parity gets a phase with exponent
// `exponent` * (-1)^{|S|-1} / 2^{k-1}, k being the number of variables of the
// product, at the first point it appears. `final_rows` receives the rows after the plan.
Circuit emit_parity_network(const NetworkPlan& plan, int num_wires, const std::vector<std::uint32_t>& rows,
                            int num_vars, double exponent, std::vector<std::uint32_t>* final_rows = nullptr);

}  // namespace fairsample
