#include "fairsample/circuit.hpp"

#include <algorithm>
#include <numeric>

#include "fairsample/error.hpp"

namespace fairsample {

std::string_view gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::T: return "t";
    case GateKind::Tdg: return "tdg";
    case GateKind::PhaseShift: return "u1";
    case GateKind::CPhaseShift: return "cu1";
    case GateKind::CNOT: return "cx";
    case GateKind::SWAP: return "swap";
  }
  return "?";
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::CPhaseShift:
    case GateKind::CNOT:
    case GateKind::SWAP:
      return 2;
    default:
      return 1;
  }
}

GateCounts gate_cost(const Gate& g) {
  switch (g.kind) {
    case GateKind::CNOT: return {0, 1};
    case GateKind::SWAP: return {0, 3};
    // Standard controlled-phase expansion: three phases around two CNOTs.
    case GateKind::CPhaseShift: return {3, 2};
    default: return {1, 0};
  }
}

Circuit::Circuit(int n) : n_(n) {
  if (n < 0) throw InputError("wire count must be nonnegative");
  readout_perm_.resize(static_cast<std::size_t>(n));
  std::iota(readout_perm_.begin(), readout_perm_.end(), 0);
  measured_wires_ = readout_perm_;
}

void Circuit::check_wire(int w) const {
  if (w < 0 || w >= n_) throw InputError("wire index " + std::to_string(w) + " out of range");
}

Circuit& Circuit::append(const Gate& g) {
  check_wire(g.qubits[0]);
  if (g.arity() == 2) {
    check_wire(g.qubits[1]);
    if (g.qubits[0] == g.qubits[1]) throw InputError("two-qubit gate on a single wire");
  }
  gates_.push_back(g);
  if (g.arity() == 1) gates_.back().qubits[1] = -1;
  counts_ += gate_cost(g);
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_ > n_) throw InputError("appended circuit has more wires");
  for (const auto& g : other.gates_) append(g);
  return *this;
}

void Circuit::set_readout_perm(std::vector<int> perm) {
  if (static_cast<int>(perm.size()) != n_) throw InputError("readout permutation has wrong size");
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  for (int p : perm) {
    if (p < 0 || p >= n_ || seen[static_cast<std::size_t>(p)]) throw InputError("readout map is not a permutation");
    seen[static_cast<std::size_t>(p)] = 1;
  }
  readout_perm_ = std::move(perm);
}

void Circuit::set_ancilla_wires(std::vector<int> wires) {
  std::sort(wires.begin(), wires.end());
  wires.erase(std::unique(wires.begin(), wires.end()), wires.end());
  for (int w : wires) check_wire(w);
  ancilla_wires_ = std::move(wires);
  measured_wires_.clear();
  for (int w = 0; w < n_; ++w) {
    if (!std::binary_search(ancilla_wires_.begin(), ancilla_wires_.end(), w)) measured_wires_.push_back(w);
  }
}

void Circuit::set_measured_wires(std::vector<int> wires) {
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  for (int w : wires) {
    check_wire(w);
    if (seen[static_cast<std::size_t>(w)]) throw InputError("wire measured twice");
    if (std::binary_search(ancilla_wires_.begin(), ancilla_wires_.end(), w))
      throw InputError("ancilla wire cannot be a measured output");
    seen[static_cast<std::size_t>(w)] = 1;
  }
  measured_wires_ = std::move(wires);
}

std::vector<int> Circuit::measured_labels() const {
  std::vector<int> out;
  out.reserve(measured_wires_.size());
  for (int w : measured_wires_) out.push_back(readout_perm_[static_cast<std::size_t>(w)]);
  return out;
}

GateCounts count_gates(const Circuit& circuit) {
  GateCounts total;
  for (const auto& g : circuit.gates()) total += gate_cost(g);
  return total;
}

}  // namespace fairsample
