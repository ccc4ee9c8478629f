#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fairsample/architecture.hpp"
#include "fairsample/circuit.hpp"
#include "fairsample/noise.hpp"

namespace fairsample {

struct BackendTopology {
  std::string name;
  int qubit_count = 0;
  std::vector<std::pair<int, int>> edges;
  // (gate name, qubits in order) -> error probability
  std::map<std::pair<std::string, std::vector<int>>, double> gate_errors;
  std::map<int, ReadoutError> readout_errors;
  int quantum_volume = 0;
  std::string snapshot_date;

  bool adjacent(int a, int b) const;
  void validate() const;
};

BackendTopology backend_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BackendTopology& b);
BackendTopology load_backend(const std::filesystem::path& path);

struct Embedding {
  Architecture architecture;
  std::vector<int> mapping;  // architecture wire -> backend qubit

  std::string label() const;  // "q0-q1-q3" style
};

enum class EmbeddingConvention {
  // Every injective edge-preserving map, except that 2L counts each edge once.
  TableThree,
  // Every injective edge-preserving map.
  Labeled,
  // One map per distinct image edge set.
  Unlabeled,
};

std::vector<Embedding> enumerate_embeddings(const BackendTopology& backend, const Architecture& arch,
                                            EmbeddingConvention convention = EmbeddingConvention::TableThree);

// 1 - prod(1 - e_gate) * prod(1 - m_qubit) with m the mean of the two readout flips.
// All wires are measured, ancillas included.
double aggregate_error(const Circuit& circuit, const Embedding& embedding, const BackendTopology& backend);
double aggregate_error(const std::vector<double>& gate_errors, const std::vector<double>& readout_errors);

// Calibration-derived noise: per-gate depolarizing equal to the gate's error rate and
// per-wire readout flips of the mapped qubit.
NoiseModel noise_from_backend(const Circuit& circuit, const Embedding& embedding, const BackendTopology& backend);

// Error rate used for one gate of the circuit placed on `qubits`.
double lookup_gate_error(const BackendTopology& backend, const Gate& gate, const std::vector<int>& qubits);

}  // namespace fairsample
