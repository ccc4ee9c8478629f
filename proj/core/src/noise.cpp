#include "fairsample/noise.hpp"

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "fairsample/error.hpp"

namespace fairsample {
namespace {

void check_probability(double p, const std::string& what) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError(what + " must be a probability in [0, 1]");
}

}  // namespace

GateKind gate_kind_from_name(std::string_view name) {
  for (GateKind k : {GateKind::H, GateKind::X, GateKind::T, GateKind::Tdg, GateKind::PhaseShift,
                     GateKind::CPhaseShift, GateKind::CNOT, GateKind::SWAP}) {
    if (gate_kind_name(k) == name) return k;
  }
  throw InputError("unknown gate kind '" + std::string(name) + "'");
}

void NoiseModel::validate() const {
  for (const auto& [k, p] : gate_depolarizing) check_probability(p, "depolarizing rate");
  for (const auto& [i, p] : instance_depolarizing) check_probability(p, "depolarizing rate");
  for (const auto& [w, r] : readout) {
    check_probability(r.p01, "readout p01");
    check_probability(r.p10, "readout p10");
  }
  check_probability(global_depolarizing, "global depolarizing");
  if (!std::isfinite(coherent_overrotation) || !std::isfinite(zz_after_cnot))
    throw InputError("coherent error angles must be finite");
}

double NoiseModel::depolarizing(std::size_t gate_index, GateKind kind) const {
  if (auto it = instance_depolarizing.find(gate_index); it != instance_depolarizing.end()) return it->second;
  if (auto it = gate_depolarizing.find(kind); it != gate_depolarizing.end()) return it->second;
  return 0.0;
}

bool NoiseModel::has_gate_noise() const {
  for (const auto& [k, p] : gate_depolarizing)
    if (p > 0.0) return true;
  for (const auto& [i, p] : instance_depolarizing)
    if (p > 0.0) return true;
  return false;
}

bool NoiseModel::is_noiseless() const {
  if (has_gate_noise() || has_coherent_noise() || global_depolarizing > 0.0) return false;
  for (const auto& [w, r] : readout)
    if (r.p01 > 0.0 || r.p10 > 0.0) return false;
  return true;
}

ReadoutError NoiseModel::readout_for(int wire) const {
  auto it = readout.find(wire);
  return it == readout.end() ? ReadoutError{} : it->second;
}

nlohmann::json to_json(const NoiseModel& noise) {
  nlohmann::json j;
  j["gate_depolarizing"] = nlohmann::json::object();
  for (const auto& [k, p] : noise.gate_depolarizing) j["gate_depolarizing"][std::string(gate_kind_name(k))] = p;
  j["instance_depolarizing"] = nlohmann::json::array();
  for (const auto& [i, p] : noise.instance_depolarizing) j["instance_depolarizing"].push_back({i, p});
  j["coherent_overrotation"] = noise.coherent_overrotation;
  j["zz_after_cnot"] = noise.zz_after_cnot;
  j["readout"] = nlohmann::json::array();
  for (const auto& [w, r] : noise.readout) j["readout"].push_back({{"q", w}, {"p01", r.p01}, {"p10", r.p10}});
  j["global_depolarizing"] = noise.global_depolarizing;
  j["seed"] = noise.seed;
  return j;
}

NoiseModel noise_from_json(const nlohmann::json& j) {
  try {
    NoiseModel n;
    if (j.contains("gate_depolarizing"))
      for (const auto& [k, v] : j.at("gate_depolarizing").items()) n.gate_depolarizing[gate_kind_from_name(k)] = v.get<double>();
    if (j.contains("instance_depolarizing"))
      for (const auto& e : j.at("instance_depolarizing")) n.instance_depolarizing[e.at(0).get<std::size_t>()] = e.at(1).get<double>();
    n.coherent_overrotation = j.value("coherent_overrotation", 0.0);
    n.zz_after_cnot = j.value("zz_after_cnot", 0.0);
    if (j.contains("readout"))
      for (const auto& e : j.at("readout"))
        n.readout[e.at("q").get<int>()] = {e.value("p01", 0.0), e.value("p10", 0.0)};
    n.global_depolarizing = j.value("global_depolarizing", 0.0);
    n.seed = j.value("seed", std::uint64_t{0});
    n.validate();
    return n;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid noise model JSON: ") + e.what());
  }
}

}  // namespace fairsample
