#pragma once

#include <cstddef>
#include <cstdint>
#include <map>

#include <nlohmann/json_fwd.hpp>

#include "fairsample/circuit.hpp"

namespace fairsample {

struct ReadoutError {
  double p01 = 0.0;  // reads 1 when the wire holds 0
  double p10 = 0.0;  // reads 0 when the wire holds 1

  bool operator==(const ReadoutError&) const = default;
};

struct NoiseModel {
  // After each gate of this kind, a uniformly random non-identity Pauli on its wires.
  std::map<GateKind, double> gate_depolarizing;
  // Per gate index overrides, typically derived from backend calibration.
  std::map<std::size_t, double> instance_depolarizing;
  // Radians added to every single-qubit rotation.
  double coherent_overrotation = 0.0;
  // exp(-i theta/2 Z Z) after each CNOT.
  double zz_after_cnot = 0.0;
  std::map<int, ReadoutError> readout;  // keyed by wire
  double global_depolarizing = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
  double depolarizing(std::size_t gate_index, GateKind kind) const;
  bool has_gate_noise() const;
  bool has_coherent_noise() const { return coherent_overrotation != 0.0 || zz_after_cnot != 0.0; }
  bool is_noiseless() const;
  ReadoutError readout_for(int wire) const;
};

nlohmann::json to_json(const NoiseModel& noise);
NoiseModel noise_from_json(const nlohmann::json& j);
GateKind gate_kind_from_name(std::string_view name);

}  // namespace fairsample
