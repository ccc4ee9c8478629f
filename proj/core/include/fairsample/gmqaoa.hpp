#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fairsample/architecture.hpp"
#include "fairsample/circuit.hpp"
#include "fairsample/ising.hpp"

namespace fairsample {

// Mixer and phase-separator angles in radians, one pair per round.
struct AngleParams {
  std::vector<double> betas;
  std::vector<double> gammas;

  int rounds() const { return static_cast<int>(betas.size()); }
  static AngleParams single(double beta, double gamma) { return {{beta}, {gamma}}; }
};

// Published angles for problems a..e; throws for f, which has no QAOA circuit.
AngleParams table_angles(std::string_view problem);
// Architectures each problem is compiled for.
std::vector<std::string> supported_architectures(std::string_view problem);
bool uses_ancilla(std::string_view problem, std::string_view architecture);

// True for a..e: qubit 0 is fixed to spin up and the circuit acts on the rest.
bool fixes_q0(std::string_view problem);
// Model whose basis states the circuit's logical outputs enumerate.
IsingModel circuit_model(std::string_view problem);

// perm[w] is the logical label on wire w. Labels >= the problem size mark spare wires.
struct Fragment {
  Circuit circuit;
  std::vector<int> perm;
};

Circuit build_state_prep(int n);

// exp(-i gamma H) for a reduced model, routed on `arch` starting from `current_perm`.
Fragment build_phase_separator(const IsingModel& model, double gamma, const Architecture& arch,
                               const std::vector<int>& current_perm);

// exp(-i beta |F><F|) with |F> the uniform superposition over the n problem qubits.
// With allow_ancilla the multi-controlled phase is split by an AND into a spare wire.
Fragment build_grover_mixer(int n, double beta, const Architecture& arch, const std::vector<int>& current_perm,
                            bool allow_ancilla);

struct CompiledCircuit {
  Circuit circuit;
  Architecture architecture;
  std::string problem;
  AngleParams angles;
  bool uses_ancilla = false;
};

CompiledCircuit build_full_circuit(std::string_view problem, const Architecture& arch, const AngleParams& angles);
// Any reduced model; the initial placement minimising CNOTs is chosen.
CompiledCircuit compile_model(const IsingModel& model, const Architecture& arch, const AngleParams& angles,
                              bool use_ancilla, std::string label = {});

nlohmann::json sidecar_json(const CompiledCircuit& c);

// Output distribution of the uncompiled ansatz, built from dense operators.
std::vector<double> reference_distribution(const IsingModel& model, const AngleParams& angles);

struct GridSearchResult {
  AngleParams angles;
  double expectation = 0.0;
  double gsp = 0.0;
};

// Exhaustive p = 1 search over beta in [-pi, 0) and gamma in [-pi, pi) with step pi/resolution.
GridSearchResult grid_search_angles(const IsingModel& model, int resolution = 60, int jobs = 0);
GridSearchResult grid_search_angles(std::string_view problem, int resolution = 60, int jobs = 0);

}  // namespace fairsample
