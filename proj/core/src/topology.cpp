#include "fairsample/topology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fairsample/error.hpp"

namespace fairsample {
namespace {

std::string qubit_list(const std::vector<int>& q) {
  std::string s;
  for (std::size_t i = 0; i < q.size(); ++i) s += (i ? "," : "") + std::to_string(q[i]);
  return s;
}

}  // namespace

bool BackendTopology::adjacent(int a, int b) const {
  return std::any_of(edges.begin(), edges.end(), [&](const auto& e) {
    return (e.first == a && e.second == b) || (e.first == b && e.second == a);
  });
}

void BackendTopology::validate() const {
  if (qubit_count < 1) throw DataError("backend '" + name + "' has no qubits");
  auto valid = [&](int q) { return q >= 0 && q < qubit_count; };
  for (auto [a, b] : edges)
    if (!valid(a) || !valid(b) || a == b) throw DataError("backend '" + name + "' has an invalid edge");
  for (const auto& [key, e] : gate_errors) {
    if (!(e >= 0.0 && e <= 1.0)) throw DataError("gate error for " + key.first + " is not a probability");
    for (int q : key.second)
      if (!valid(q)) throw DataError("gate error for " + key.first + " names an invalid qubit");
  }
  for (const auto& [q, r] : readout_errors) {
    if (!valid(q)) throw DataError("readout entry names an invalid qubit");
    if (!(r.p01 >= 0.0 && r.p01 <= 1.0 && r.p10 >= 0.0 && r.p10 <= 1.0))
      throw DataError("readout error of qubit " + std::to_string(q) + " is not a probability");
  }
}

BackendTopology backend_from_json(const nlohmann::json& j) {
  BackendTopology b;
  try {
    b.name = j.at("name").get<std::string>();
    b.qubit_count = j.at("qubits").get<int>();
    for (const auto& e : j.at("edges")) b.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    if (j.contains("gate_errors"))
      for (const auto& g : j.at("gate_errors"))
        b.gate_errors[{g.at("gate").get<std::string>(), g.at("qubits").get<std::vector<int>>()}] = g.at("e").get<double>();
    if (j.contains("readout"))
      for (const auto& r : j.at("readout")) b.readout_errors[r.at("q").get<int>()] = {r.at("p01").get<double>(), r.at("p10").get<double>()};
    b.quantum_volume = j.value("qv", 0);
    b.snapshot_date = j.value("date", std::string{});
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid backend JSON: ") + e.what());
  }
  b.validate();
  return b;
}

nlohmann::json to_json(const BackendTopology& b) {
  nlohmann::json j;
  j["name"] = b.name;
  j["qubits"] = b.qubit_count;
  j["edges"] = nlohmann::json::array();
  for (auto [x, y] : b.edges) j["edges"].push_back({x, y});
  j["gate_errors"] = nlohmann::json::array();
  for (const auto& [key, e] : b.gate_errors) j["gate_errors"].push_back({{"gate", key.first}, {"qubits", key.second}, {"e", e}});
  j["readout"] = nlohmann::json::array();
  for (const auto& [q, r] : b.readout_errors) j["readout"].push_back({{"q", q}, {"p01", r.p01}, {"p10", r.p10}});
  j["qv"] = b.quantum_volume;
  j["date"] = b.snapshot_date;
  return j;
}

BackendTopology load_backend(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open backend file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("backend file " + path.string() + " is not valid JSON: " + e.what());
  }
  return backend_from_json(j);
}

std::string Embedding::label() const {
  std::string s;
  for (std::size_t i = 0; i < mapping.size(); ++i) s += (i ? "-" : "") + std::string("q") + std::to_string(mapping[i]);
  return s;
}

std::vector<Embedding> enumerate_embeddings(const BackendTopology& backend, const Architecture& arch,
                                            EmbeddingConvention convention) {
  const int k = arch.num_wires;
  if (k < 1 || !arch.connected()) throw InputError("architecture must be nonempty and connected");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(backend.qubit_count));
  for (auto [a, b] : backend.edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& v : adj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  // Visit architecture wires so each one after the first has an already-placed neighbour.
  std::vector<int> order{0};
  std::vector<int> anchor{-1};
  std::vector<char> placed(static_cast<std::size_t>(k), 0);
  placed[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int v : arch.neighbors(order[i]))
      if (!placed[static_cast<std::size_t>(v)]) {
        placed[static_cast<std::size_t>(v)] = 1;
        order.push_back(v);
        anchor.push_back(order[i]);
      }

  std::vector<Embedding> out;
  std::set<std::vector<std::pair<int, int>>> images;
  std::vector<int> map(static_cast<std::size_t>(k), -1);
  std::vector<char> used(static_cast<std::size_t>(backend.qubit_count), 0);

  auto accept = [&] {
    if (convention == EmbeddingConvention::Labeled) {
      out.push_back({arch, map});
      return;
    }
    if (convention == EmbeddingConvention::TableThree && k != 2) {
      out.push_back({arch, map});
      return;
    }
    std::vector<std::pair<int, int>> img;
    for (auto [a, b] : arch.edges) img.emplace_back(std::minmax(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]));
    std::sort(img.begin(), img.end());
    if (convention == EmbeddingConvention::TableThree) {
      std::vector<int> verts = map;
      std::sort(verts.begin(), verts.end());
      img.emplace_back(-1, -1);
      for (int v : verts) img.emplace_back(v, v);
    }
    if (images.insert(img).second) out.push_back({arch, map});
  };

  auto consistent = [&](int w, int q) {
    for (int v : arch.neighbors(w)) {
      const int mv = map[static_cast<std::size_t>(v)];
      if (mv >= 0 && !std::binary_search(adj[static_cast<std::size_t>(q)].begin(), adj[static_cast<std::size_t>(q)].end(), mv))
        return false;
    }
    return true;
  };

  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == order.size()) {
      accept();
      return;
    }
    const int w = order[depth];
    std::vector<int> candidates;
    if (depth == 0) {
      candidates.resize(static_cast<std::size_t>(backend.qubit_count));
      for (int q = 0; q < backend.qubit_count; ++q) candidates[static_cast<std::size_t>(q)] = q;
    } else {
      candidates = adj[static_cast<std::size_t>(map[static_cast<std::size_t>(anchor[depth])])];
    }
    for (int q : candidates) {
      if (used[static_cast<std::size_t>(q)] || !consistent(w, q)) continue;
      map[static_cast<std::size_t>(w)] = q;
      used[static_cast<std::size_t>(q)] = 1;
      self(self, depth + 1);
      used[static_cast<std::size_t>(q)] = 0;
      map[static_cast<std::size_t>(w)] = -1;
    }
  };
  if (k <= backend.qubit_count) recurse(recurse, 0);
  return out;
}

double lookup_gate_error(const BackendTopology& backend, const Gate& gate, const std::vector<int>& qubits) {
  const std::string name(gate_kind_name(gate.kind));
  if (auto it = backend.gate_errors.find({name, qubits}); it != backend.gate_errors.end()) return it->second;
  if (qubits.size() == 1) {
    if (auto it = backend.gate_errors.find({"sx", qubits}); it != backend.gate_errors.end()) return it->second;
  } else {
    const std::vector<int> rev{qubits[1], qubits[0]};
    if (auto it = backend.gate_errors.find({name, rev}); it != backend.gate_errors.end()) return it->second;
    // Composite two-qubit gates are charged for their CNOTs.
    if (gate.kind == GateKind::SWAP || gate.kind == GateKind::CPhaseShift) {
      const double e = lookup_gate_error(backend, Gate::cnot(qubits[0], qubits[1]), qubits);
      return 1.0 - std::pow(1.0 - e, gate.kind == GateKind::SWAP ? 3 : 2);
    }
  }
  throw DataError("backend '" + backend.name + "' has no error entry for gate " + name + " on qubits " + qubit_list(qubits));
}

double aggregate_error(const std::vector<double>& gate_errors, const std::vector<double>& readout_errors) {
  double keep = 1.0;
  for (double e : gate_errors) keep *= 1.0 - e;
  for (double m : readout_errors) keep *= 1.0 - m;
  return 1.0 - keep;
}

namespace {

std::vector<int> mapped_qubits(const Gate& g, const Embedding& emb) {
  std::vector<int> q{emb.mapping.at(static_cast<std::size_t>(g.qubits[0]))};
  if (g.arity() == 2) q.push_back(emb.mapping.at(static_cast<std::size_t>(g.qubits[1])));
  return q;
}

void check_placement(const Circuit& circuit, const Embedding& emb, const BackendTopology& backend) {
  if (static_cast<int>(emb.mapping.size()) < circuit.num_wires())
    throw InputError("embedding covers fewer wires than the circuit uses");
  for (int q : emb.mapping)
    if (q < 0 || q >= backend.qubit_count) throw InputError("embedding maps outside the backend");
}

ReadoutError readout_of(const BackendTopology& backend, int q) {
  auto it = backend.readout_errors.find(q);
  if (it == backend.readout_errors.end())
    throw DataError("backend '" + backend.name + "' has no readout entry for qubit " + std::to_string(q));
  return it->second;
}

}  // namespace

double aggregate_error(const Circuit& circuit, const Embedding& embedding, const BackendTopology& backend) {
  check_placement(circuit, embedding, backend);
  std::vector<double> gates;
  for (const auto& g : circuit.gates()) gates.push_back(lookup_gate_error(backend, g, mapped_qubits(g, embedding)));
  std::vector<double> readout;
  for (int w = 0; w < circuit.num_wires(); ++w) {
    const auto r = readout_of(backend, embedding.mapping[static_cast<std::size_t>(w)]);
    readout.push_back(0.5 * (r.p01 + r.p10));
  }
  return aggregate_error(gates, readout);
}

NoiseModel noise_from_backend(const Circuit& circuit, const Embedding& embedding, const BackendTopology& backend) {
  check_placement(circuit, embedding, backend);
  NoiseModel n;
  for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
    const auto& g = circuit.gates()[i];
    n.instance_depolarizing[i] = lookup_gate_error(backend, g, mapped_qubits(g, embedding));
  }
  for (int w = 0; w < circuit.num_wires(); ++w) n.readout[w] = readout_of(backend, embedding.mapping[static_cast<std::size_t>(w)]);
  return n;
}

}  // namespace fairsample
