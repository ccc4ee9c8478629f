#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace fairsample {

enum class GateKind { H, X, T, Tdg, PhaseShift, CPhaseShift, CNOT, SWAP };

std::string_view gate_kind_name(GateKind kind);  // "h", "x", "t", "tdg", "u1", "cu1", "cx", "swap"
int gate_arity(GateKind kind);

// Phase gates carry an exponent e; the unitary is diag(1, exp(i*pi*e)).
struct Gate {
  GateKind kind = GateKind::H;
  std::array<int, 2> qubits{0, -1};  // control first for CNOT and CPhaseShift
  double exponent = 0.0;

  int arity() const { return gate_arity(kind); }

  static Gate h(int q) { return {GateKind::H, {q, -1}, 0.0}; }
  static Gate x(int q) { return {GateKind::X, {q, -1}, 0.0}; }
  static Gate t(int q) { return {GateKind::T, {q, -1}, 0.0}; }
  static Gate tdg(int q) { return {GateKind::Tdg, {q, -1}, 0.0}; }
  static Gate phase(int q, double e) { return {GateKind::PhaseShift, {q, -1}, e}; }
  static Gate cphase(int c, int t, double e) { return {GateKind::CPhaseShift, {c, t}, e}; }
  static Gate cnot(int c, int t) { return {GateKind::CNOT, {c, t}, 0.0}; }
  static Gate swap(int a, int b) { return {GateKind::SWAP, {a, b}, 0.0}; }

  bool operator==(const Gate&) const = default;
};

struct GateCounts {
  int rotations = 0;
  int cnots = 0;

  GateCounts& operator+=(const GateCounts& o) {
    rotations += o.rotations;
    cnots += o.cnots;
    return *this;
  }
  bool operator==(const GateCounts&) const = default;
};

GateCounts gate_cost(const Gate& g);

// Gate list over n wires plus the bookkeeping needed to read results back out.
//
// readout_perm[w] is the logical label of the qubit that ends on wire w. Labels of
// problem qubits are 0..m-1; ancilla wires carry the remaining labels. The output
// bitstring of a shot lists measured_wires in order.
class Circuit {
 public:
  explicit Circuit(int n = 0);

  int num_wires() const noexcept { return n_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }

  Circuit& append(const Gate& g);
  // Concatenate gates; bookkeeping of `other` is ignored.
  Circuit& append(const Circuit& other);

  const std::vector<int>& readout_perm() const noexcept { return readout_perm_; }
  void set_readout_perm(std::vector<int> perm);

  const std::vector<int>& ancilla_wires() const noexcept { return ancilla_wires_; }
  // Also resets measured_wires to every non-ancilla wire in ascending order.
  void set_ancilla_wires(std::vector<int> wires);

  const std::vector<int>& measured_wires() const noexcept { return measured_wires_; }
  void set_measured_wires(std::vector<int> wires);

  // Logical label of each position of the output bitstring.
  std::vector<int> measured_labels() const;

  const GateCounts& counts() const noexcept { return counts_; }

 private:
  void check_wire(int w) const;

  int n_;
  std::vector<Gate> gates_;
  std::vector<int> readout_perm_;
  std::vector<int> ancilla_wires_;
  std::vector<int> measured_wires_;
  GateCounts counts_;
};

GateCounts count_gates(const Circuit& circuit);

// Measured distributions from |0...0> agree within tol after readout relabelling
// and ancilla post-selection.
bool equivalent(const Circuit& c1, const Circuit& c2, double tol);

std::string to_qasm(const Circuit& circuit);
Circuit from_qasm(std::string_view text);

}  // namespace fairsample
