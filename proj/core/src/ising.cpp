#include "fairsample/ising.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "fairsample/error.hpp"

namespace fairsample {

SpinConfig::SpinConfig(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_) {
    if (c != '0' && c != '1') throw InputError("spin bitstring must contain only '0' and '1'");
  }
}

SpinConfig SpinConfig::from_index(std::uint64_t index, int n) {
  std::string bits(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((index >> (n - 1 - i)) & 1U) bits[static_cast<std::size_t>(i)] = '1';
  }
  return SpinConfig(std::move(bits));
}

std::uint64_t SpinConfig::index() const {
  std::uint64_t idx = 0;
  for (char c : bits_) idx = (idx << 1) | static_cast<std::uint64_t>(c == '1');
  return idx;
}

SpinConfig SpinConfig::flipped() const {
  std::string out = bits_;
  for (char& c : out) c = c == '0' ? '1' : '0';
  return SpinConfig(std::move(out));
}

IsingModel::IsingModel(int n, std::vector<Coupling> quadratic, std::vector<Field> linear,
                       std::string label)
    : n_(n), quadratic_(std::move(quadratic)), linear_(std::move(linear)), label_(std::move(label)) {
  if (n_ < 1) throw InputError("Ising model needs at least one qubit");
  std::set<std::pair<int, int>> seen;
  for (const auto& c : quadratic_) {
    if (c.i < 0 || c.j < 0 || c.i >= n_ || c.j >= n_) throw InputError("coupling index out of range");
    if (c.i == c.j) throw InputError("coupling must join two distinct qubits");
    if (!std::isfinite(c.J)) throw InputError("coupling must be finite");
    if (!seen.insert(std::minmax(c.i, c.j)).second) throw InputError("duplicate coupling pair");
  }
  std::set<int> seen_fields;
  for (const auto& f : linear_) {
    if (f.i < 0 || f.i >= n_) throw InputError("field index out of range");
    if (!std::isfinite(f.h)) throw InputError("field must be finite");
    if (!seen_fields.insert(f.i).second) throw InputError("duplicate field on one qubit");
  }
}

double IsingModel::energy_of_index(std::uint64_t index) const {
  auto z = [&](int q) { return ((index >> (n_ - 1 - q)) & 1U) ? -1.0 : 1.0; };
  double e = 0.0;
  for (const auto& c : quadratic_) e -= c.J * z(c.i) * z(c.j);
  for (const auto& f : linear_) e -= f.h * z(f.i);
  return e;
}

std::vector<double> IsingModel::energy_table() const {
  if (n_ > kMaxEnumerationQubits) throw CapabilityError("energy table limited to 24 qubits");
  const std::uint64_t dim = std::uint64_t{1} << n_;
  std::vector<double> out(dim);
  for (std::uint64_t i = 0; i < dim; ++i) out[i] = energy_of_index(i);
  return out;
}

bool GroundStateSet::contains(std::string_view bits) const {
  auto it = std::lower_bound(states.begin(), states.end(), bits,
                             [](const SpinConfig& s, std::string_view b) { return s.bits() < b; });
  return it != states.end() && it->bits() == bits;
}

double energy(const IsingModel& model, const SpinConfig& s) {
  if (s.size() != model.n()) throw InputError("spin configuration length does not match model");
  return model.energy_of_index(s.index());
}

GroundStateSet ground_states(const IsingModel& model) {
  if (model.n() > kMaxEnumerationQubits)
    throw CapabilityError("ground state enumeration limited to 24 qubits");
  const auto table = model.energy_table();
  const double emin = *std::min_element(table.begin(), table.end());
  GroundStateSet out;
  out.energy = emin;
  // Index order equals lexicographic bitstring order, so the result is already sorted.
  for (std::uint64_t i = 0; i < table.size(); ++i) {
    if (table[i] - emin <= kDegeneracyTolerance) out.states.push_back(SpinConfig::from_index(i, model.n()));
  }
  return out;
}

IsingModel fix_q0_up(const IsingModel& model) {
  if (model.n() < 2) throw InputError("reduction needs at least two qubits");
  for (const auto& f : model.linear()) {
    if (f.h != 0.0) throw InputError("model has a linear term and is not flip symmetric");
  }
  // With no fields every Ising energy is flip symmetric; check through the ground set anyway.
  const auto gs = ground_states(model);
  for (const auto& s : gs.states) {
    if (!gs.contains(s.flipped().bits())) throw InputError("model is not symmetric under global flip");
  }
  std::map<int, double> fields;
  std::vector<Coupling> quadratic;
  for (const auto& c : model.quadratic()) {
    if (c.i == 0 || c.j == 0) {
      fields[(c.i == 0 ? c.j : c.i) - 1] += c.J;
    } else {
      quadratic.push_back({c.i - 1, c.j - 1, c.J});
    }
  }
  std::vector<Field> linear;
  for (const auto& [q, h] : fields) linear.push_back({q, h});
  std::string label = model.label().empty() ? std::string{} : model.label() + "'";
  return IsingModel(model.n() - 1, std::move(quadratic), std::move(linear), std::move(label));
}

const std::vector<std::string>& builtin_problem_names() {
  static const std::vector<std::string> names{"a", "b", "c", "d", "e", "f"};
  return names;
}

IsingModel builtin_problem(std::string_view name) {
  if (name == "a")
    return IsingModel(5,
                      {{0, 1, 1}, {0, 2, 1}, {0, 3, -1}, {1, 2, 1},
                       {1, 4, -1}, {2, 3, 1}, {2, 4, 1}, {3, 4, 1}},
                      {}, "a");
  if (name == "b")
    return IsingModel(5,
                      {{0, 1, 2}, {0, 2, 1}, {0, 3, 2}, {0, 4, 1}, {1, 2, -2},
                       {1, 3, -1}, {1, 4, 1}, {2, 3, 1}, {2, 4, 2}, {3, 4, -2}},
                      {}, "b");
  if (name == "c")
    return IsingModel(6,
                      {{0, 2, 1}, {1, 3, 1}, {2, 3, -1}, {2, 4, 1},
                       {2, 5, -1}, {3, 4, 1}, {3, 5, -1}, {4, 5, 1}},
                      {}, "c");
  if (name == "d") return IsingModel(4, {{0, 1, 1}, {1, 2, -1}, {1, 3, -1}, {2, 3, -1}}, {}, "d");
  if (name == "e") return IsingModel(3, {{0, 1, -1}, {0, 2, -1}, {1, 2, -1}}, {}, "e");
  if (name == "f") return IsingModel(2, {{0, 1, -1}}, {}, "f");
  throw InputError("unknown problem '" + std::string(name) + "'");
}

nlohmann::json to_json(const IsingModel& model) {
  nlohmann::json j;
  j["n"] = model.n();
  j["quadratic"] = nlohmann::json::array();
  for (const auto& c : model.quadratic()) j["quadratic"].push_back({c.i, c.j, c.J});
  j["linear"] = nlohmann::json::array();
  for (const auto& f : model.linear()) j["linear"].push_back({f.i, f.h});
  j["label"] = model.label();
  return j;
}

IsingModel ising_from_json(const nlohmann::json& j) {
  try {
    std::vector<Coupling> quadratic;
    for (const auto& t : j.at("quadratic"))
      quadratic.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<double>()});
    std::vector<Field> linear;
    if (j.contains("linear")) {
      for (const auto& t : j.at("linear")) linear.push_back({t.at(0).get<int>(), t.at(1).get<double>()});
    }
    return IsingModel(j.at("n").get<int>(), std::move(quadratic), std::move(linear),
                      j.value("label", std::string{}));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid Ising model JSON: ") + e.what());
  }
}

}  // namespace fairsample
