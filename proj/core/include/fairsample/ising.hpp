#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace fairsample {

// Spin assignment as a bitstring. Character i is qubit i; '0' is spin up (Z = +1).
class SpinConfig {
 public:
  explicit SpinConfig(std::string bits);

  // Index convention: qubit 0 is the most significant bit.
  static SpinConfig from_index(std::uint64_t index, int n);
  std::uint64_t index() const;

  const std::string& bits() const noexcept { return bits_; }
  int size() const noexcept { return static_cast<int>(bits_.size()); }
  // +1 for up, -1 for down.
  int z(int qubit) const { return bits_.at(static_cast<std::size_t>(qubit)) == '0' ? 1 : -1; }
  SpinConfig flipped() const;

  auto operator<=>(const SpinConfig&) const = default;

 private:
  std::string bits_;
};

struct Coupling {
  int i = 0;
  int j = 0;
  double J = 0.0;
};

struct Field {
  int i = 0;
  double h = 0.0;
};

// H = -sum J_ij Z_i Z_j - sum h_i Z_i
class IsingModel {
 public:
  IsingModel(int n, std::vector<Coupling> quadratic, std::vector<Field> linear = {},
             std::string label = {});

  int n() const noexcept { return n_; }
  const std::vector<Coupling>& quadratic() const noexcept { return quadratic_; }
  const std::vector<Field>& linear() const noexcept { return linear_; }
  const std::string& label() const noexcept { return label_; }

  double energy_of_index(std::uint64_t index) const;
  // Energies of all 2^n basis states, indexed per SpinConfig::index.
  std::vector<double> energy_table() const;

 private:
  int n_;
  std::vector<Coupling> quadratic_;
  std::vector<Field> linear_;
  std::string label_;
};

struct GroundStateSet {
  double energy = 0.0;
  std::vector<SpinConfig> states;  // sorted by bitstring

  int degeneracy() const noexcept { return static_cast<int>(states.size()); }
  bool contains(std::string_view bits) const;
};

inline constexpr int kMaxEnumerationQubits = 24;
inline constexpr double kDegeneracyTolerance = 1e-9;

double energy(const IsingModel& model, const SpinConfig& s);
GroundStateSet ground_states(const IsingModel& model);

// Fix qubit 0 to spin up and drop it. Couplings J_0j become fields on j-1.
IsingModel fix_q0_up(const IsingModel& model);

// Models (a) through (f).
IsingModel builtin_problem(std::string_view name);
const std::vector<std::string>& builtin_problem_names();

nlohmann::json to_json(const IsingModel& model);
IsingModel ising_from_json(const nlohmann::json& j);

}  // namespace fairsample
