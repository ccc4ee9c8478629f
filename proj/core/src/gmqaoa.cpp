#include "fairsample/gmqaoa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <queue>
#include <thread>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "fairsample/error.hpp"
#include "fairsample/parity_network.hpp"

namespace fairsample {
namespace {

constexpr double kPi = std::numbers::pi;

void check_perm(const std::vector<int>& perm, const Architecture& arch, int n) {
  if (static_cast<int>(perm.size()) != arch.num_wires) throw InputError("permutation size must equal the wire count");
  std::vector<char> seen(perm.size(), 0);
  for (int l : perm) {
    if (l < 0 || l >= arch.num_wires || seen[static_cast<std::size_t>(l)]) throw InputError("wire permutation is not a bijection");
    seen[static_cast<std::size_t>(l)] = 1;
  }
  if (n > arch.num_wires) throw CompilationError("problem has more qubits than the architecture has wires");
}

// ---- phase separator routing -------------------------------------------------

struct Term {
  int a;
  int b;
  double J;
};

struct PsStep {
  enum class Kind { Term, TermSwap, Swap };
  Kind kind;
  int u;
  int v;
  int term;
};

struct PsPlan {
  std::vector<PsStep> steps;
  int cnots = 0;
};

std::uint64_t ps_key(const std::vector<int>& perm, std::uint32_t done) {
  std::uint64_t k = 0;
  for (std::size_t w = 0; w < perm.size(); ++w) k |= std::uint64_t(perm[w]) << (3 * w);
  return k | (std::uint64_t{done} << 24);
}

std::vector<int> ps_perm(std::uint64_t key, int wires) {
  std::vector<int> p(static_cast<std::size_t>(wires));
  for (int w = 0; w < wires; ++w) p[static_cast<std::size_t>(w)] = static_cast<int>((key >> (3 * w)) & 7U);
  return p;
}

// Dijkstra over (placement, finished terms). A term costs 2 CNOTs, or 3 when a SWAP
// of the same pair is folded into it. Bare SWAPs are only tried if routing fails without them.
PsPlan route_terms(const std::vector<Term>& terms, int m, const Architecture& arch, const std::vector<int>& start,
                   bool allow_bare_swaps) {
  const int k = arch.num_wires;
  const std::uint32_t all = terms.empty() ? 0U : static_cast<std::uint32_t>((std::uint64_t{1} << terms.size()) - 1);
  std::vector<std::vector<int>> index(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
  for (std::size_t t = 0; t < terms.size(); ++t) {
    index[static_cast<std::size_t>(terms[t].a)][static_cast<std::size_t>(terms[t].b)] = static_cast<int>(t);
    index[static_cast<std::size_t>(terms[t].b)][static_cast<std::size_t>(terms[t].a)] = static_cast<int>(t);
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : arch.edges) edges.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(edges.begin(), edges.end());

  struct Info {
    int g;
    std::uint64_t parent;
    PsStep step;
    bool closed;
  };
  using Entry = std::pair<int, std::uint64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::unordered_map<std::uint64_t, Info> info;
  const std::uint64_t s0 = ps_key(start, 0);
  info[s0] = {0, s0, {}, false};
  open.push({0, s0});
  while (!open.empty()) {
    const auto [g, key] = open.top();
    open.pop();
    auto& cur = info[key];
    if (cur.closed || cur.g < g) continue;
    cur.closed = true;
    const auto done = static_cast<std::uint32_t>(key >> 24);
    if (done == all) {
      PsPlan plan;
      plan.cnots = g;
      for (std::uint64_t k2 = key; k2 != s0; k2 = info[k2].parent) plan.steps.push_back(info[k2].step);
      std::reverse(plan.steps.begin(), plan.steps.end());
      return plan;
    }
    const auto perm = ps_perm(key, k);
    auto relax = [&](const std::vector<int>& p, std::uint32_t d, const PsStep& st, int cost) {
      const std::uint64_t nk = ps_key(p, d);
      auto it = info.find(nk);
      if (it != info.end() && (it->second.closed || it->second.g <= g + cost)) return;
      info[nk] = {g + cost, key, st, false};
      open.push({g + cost, nk});
    };
    for (auto [u, v] : edges) {
      const int la = perm[static_cast<std::size_t>(u)];
      const int lb = perm[static_cast<std::size_t>(v)];
      const bool both = la < m && lb < m;
      if (both) {
        const int t = index[static_cast<std::size_t>(la)][static_cast<std::size_t>(lb)];
        if (t >= 0 && !(done & (1U << t))) {
          relax(perm, done | (1U << t), {PsStep::Kind::Term, u, v, t}, 2);
          auto swapped = perm;
          std::swap(swapped[static_cast<std::size_t>(u)], swapped[static_cast<std::size_t>(v)]);
          relax(swapped, done | (1U << t), {PsStep::Kind::TermSwap, u, v, t}, 3);
        }
      }
      if (allow_bare_swaps && (la < m || lb < m)) {
        auto swapped = perm;
        std::swap(swapped[static_cast<std::size_t>(u)], swapped[static_cast<std::size_t>(v)]);
        relax(swapped, done, {PsStep::Kind::Swap, u, v, -1}, 3);
      }
    }
  }
  throw CompilationError("phase separator terms cannot be routed on architecture " + arch.name);
}

// ---- mixer network cache -----------------------------------------------------

std::mutex g_plan_mutex;
std::map<std::string, NetworkPlan> g_plan_cache;

NetworkPlan mixer_plan(const Architecture& arch, std::uint32_t occupied, int n, bool ancilla) {
  std::string key = arch.name + ':' + std::to_string(arch.num_wires);
  for (auto [a, b] : arch.edges) key += ':' + std::to_string(a) + '-' + std::to_string(b);
  key += '|' + std::to_string(occupied) + (ancilla ? "|and" : "|plain");
  {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    if (auto it = g_plan_cache.find(key); it != g_plan_cache.end()) return it->second;
  }
  // The plan only depends on which wires are occupied: every parity is a target and
  // the end state may be any permutation, so variables can be numbered by wire order.
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(arch.num_wires), 0);
  int next = 0;
  for (int w = 0; w < arch.num_wires; ++w)
    if (occupied & (1U << w)) rows[static_cast<std::size_t>(w)] = 1U << next++;
  NetworkPlan plan = ancilla ? plan_and_parity_network(arch, rows, n, 1.0)
                             : plan_parity_network(arch, rows, n, n >= 5 ? 2.0 : 1.0);
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  g_plan_cache.emplace(key, plan);
  return plan;
}

int wire_of(const std::vector<int>& perm, int label) {
  for (std::size_t w = 0; w < perm.size(); ++w)
    if (perm[w] == label) return static_cast<int>(w);
  throw CompilationError("label missing from permutation");
}

}  // namespace

AngleParams table_angles(std::string_view problem) {
  if (problem == "a") return AngleParams::single(-kPi / 2, -11 * kPi / 12);
  if (problem == "b") return AngleParams::single(-11 * kPi / 15, -17 * kPi / 60);
  if (problem == "c") return AngleParams::single(-23 * kPi / 60, kPi / 15);
  if (problem == "d") return AngleParams::single(-5 * kPi / 12, kPi / 10);
  if (problem == "e") return AngleParams::single(-23 * kPi / 60, 3 * kPi / 5);
  if (problem == "f") throw InputError("problem f uses a fixed circuit without angles");
  throw InputError("unknown problem '" + std::string(problem) + "'");
}

std::vector<std::string> supported_architectures(std::string_view problem) {
  if (problem == "a" || problem == "b") return {"4L", "4T", "5T"};
  if (problem == "c") return {"5T"};
  if (problem == "d") return {"3L"};
  if (problem == "e" || problem == "f") return {"2L"};
  throw InputError("unknown problem '" + std::string(problem) + "'");
}

bool uses_ancilla(std::string_view problem, std::string_view architecture) {
  return (problem == "a" || problem == "b") && architecture == "5T";
}

bool fixes_q0(std::string_view problem) {
  builtin_problem(problem);
  return problem != "f";
}

IsingModel circuit_model(std::string_view problem) {
  auto m = builtin_problem(problem);
  return fixes_q0(problem) ? fix_q0_up(m) : m;
}

Circuit build_state_prep(int n) {
  if (n < 1) throw InputError("state preparation needs at least one qubit");
  Circuit c(n);
  for (int w = 0; w < n; ++w) c.append(Gate::h(w));
  return c;
}

Fragment build_phase_separator(const IsingModel& model, double gamma, const Architecture& arch,
                               const std::vector<int>& current_perm) {
  const int m = model.n();
  check_perm(current_perm, arch, m);
  if (!arch.connected()) throw CompilationError("architecture " + arch.name + " is not connected");
  Fragment out{Circuit(arch.num_wires), current_perm};
  for (const auto& f : model.linear())
    out.circuit.append(Gate::phase(wire_of(current_perm, f.i), -2.0 * gamma * f.h / kPi));
  std::vector<Term> terms;
  for (const auto& c : model.quadratic()) terms.push_back({std::min(c.i, c.j), std::max(c.i, c.j), c.J});
  if (terms.size() > 20) throw CapabilityError("phase separator routing supports at most 20 quadratic terms");
  if (arch.num_wires > 8) throw CapabilityError("phase separator routing supports at most 8 wires");
  PsPlan plan;
  try {
    plan = route_terms(terms, m, arch, current_perm, false);
  } catch (const CompilationError&) {
    plan = route_terms(terms, m, arch, current_perm, true);
  }
  auto& perm = out.perm;
  for (const auto& s : plan.steps) {
    const int u = s.u;
    const int v = s.v;
    switch (s.kind) {
      case PsStep::Kind::Term:
      case PsStep::Kind::TermSwap: {
        const double e = -2.0 * gamma * terms[static_cast<std::size_t>(s.term)].J / kPi;
        out.circuit.append(Gate::cnot(u, v));
        out.circuit.append(Gate::phase(v, e));
        if (s.kind == PsStep::Kind::TermSwap) {
          out.circuit.append(Gate::cnot(v, u));
          out.circuit.append(Gate::cnot(u, v));
          std::swap(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
        } else {
          out.circuit.append(Gate::cnot(u, v));
        }
        break;
      }
      case PsStep::Kind::Swap:
        out.circuit.append(Gate::cnot(u, v));
        out.circuit.append(Gate::cnot(v, u));
        out.circuit.append(Gate::cnot(u, v));
        std::swap(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
        break;
    }
  }
  return out;
}

Fragment build_grover_mixer(int n, double beta, const Architecture& arch, const std::vector<int>& current_perm,
                            bool allow_ancilla) {
  if (n < 1) throw InputError("mixer needs at least one qubit");
  check_perm(current_perm, arch, n);
  const int k = arch.num_wires;
  if (allow_ancilla && n >= k) throw CompilationError("ancilla requested but architecture " + arch.name + " has no spare wire");
  std::uint32_t occupied = 0;
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(k), 0);
  for (int w = 0; w < k; ++w) {
    if (current_perm[static_cast<std::size_t>(w)] < n) {
      occupied |= 1U << w;
      rows[static_cast<std::size_t>(w)] = 1U << current_perm[static_cast<std::size_t>(w)];
    }
  }
  const NetworkPlan plan = mixer_plan(arch, occupied, n, allow_ancilla);

  Fragment out{Circuit(k), current_perm};
  for (int w = 0; w < k; ++w)
    if (occupied & (1U << w)) out.circuit.append(Gate::h(w));
  for (int w = 0; w < k; ++w)
    if (occupied & (1U << w)) out.circuit.append(Gate::x(w));
  std::vector<std::uint32_t> final_rows;
  out.circuit.append(emit_parity_network(plan, k, rows, n, -beta / kPi, &final_rows));

  std::vector<int> spare_labels;
  for (int l : current_perm)
    if (l >= n) spare_labels.push_back(l);
  std::sort(spare_labels.begin(), spare_labels.end());
  std::size_t next_spare = 0;
  for (int w = 0; w < k; ++w) {
    const auto r = final_rows[static_cast<std::size_t>(w)];
    out.perm[static_cast<std::size_t>(w)] = r ? std::countr_zero(r) : spare_labels[next_spare++];
  }
  for (int w = 0; w < k; ++w)
    if (out.perm[static_cast<std::size_t>(w)] < n) out.circuit.append(Gate::x(w));
  for (int w = 0; w < k; ++w)
    if (out.perm[static_cast<std::size_t>(w)] < n) out.circuit.append(Gate::h(w));
  return out;
}

CompiledCircuit compile_model(const IsingModel& model, const Architecture& arch, const AngleParams& angles,
                              bool use_ancilla, std::string label) {
  const int m = model.n();
  const int k = arch.num_wires;
  if (angles.betas.size() != angles.gammas.size() || angles.betas.empty())
    throw InputError("angle lists must be nonempty and of equal length");
  if (m > k) throw CompilationError("problem has more qubits than architecture " + arch.name + " has wires");
  if (use_ancilla && m >= k) throw CompilationError("ancilla requested but architecture " + arch.name + " has no spare wire");
  if (k > 6) throw CapabilityError("compilation supports at most 6 wires");

  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  bool found = false;
  CompiledCircuit best{Circuit(k), arch, std::move(label), angles, use_ancilla};
  std::vector<int> best_perm;
  do {
    // Spare labels are interchangeable; keep them in ascending wire order.
    int last_spare = -1;
    bool canonical = true;
    for (int l : perm) {
      if (l < m) continue;
      if (l < last_spare) canonical = false;
      last_spare = l;
    }
    if (!canonical) continue;

    Circuit c(k);
    std::vector<int> p = perm;
    for (int w = 0; w < k; ++w)
      if (p[static_cast<std::size_t>(w)] < m) c.append(Gate::h(w));
    for (int r = 0; r < angles.rounds(); ++r) {
      auto ps = build_phase_separator(model, angles.gammas[static_cast<std::size_t>(r)], arch, p);
      c.append(ps.circuit);
      auto mx = build_grover_mixer(m, angles.betas[static_cast<std::size_t>(r)], arch, ps.perm, use_ancilla);
      c.append(mx.circuit);
      p = mx.perm;
    }
    const auto& cc = c.counts();
    const auto& bc = best.circuit.counts();
    if (!found || cc.cnots < bc.cnots || (cc.cnots == bc.cnots && cc.rotations < bc.rotations)) {
      found = true;
      c.set_readout_perm(p);
      best.circuit = std::move(c);
      best_perm = p;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<int> spare;
  for (int w = 0; w < k; ++w)
    if (best_perm[static_cast<std::size_t>(w)] >= m) spare.push_back(w);
  best.circuit.set_ancilla_wires(spare);
  return best;
}

CompiledCircuit build_full_circuit(std::string_view problem, const Architecture& arch, const AngleParams& angles) {
  const auto archs = supported_architectures(problem);
  if (std::find(archs.begin(), archs.end(), arch.name) == archs.end())
    throw InputError("problem " + std::string(problem) + " is not compiled for architecture " + arch.name);
  const Architecture canonical = Architecture::named(arch.name);
  if (canonical.edges != arch.edges || canonical.num_wires != arch.num_wires)
    throw InputError("architecture " + arch.name + " does not match its standard shape");
  if (problem == "f") {
    Circuit c(2);
    c.append(Gate::h(0));
    c.append(Gate::x(1));
    c.append(Gate::cnot(0, 1));
    return {std::move(c), arch, "f", {}, false};
  }
  return compile_model(circuit_model(problem), arch, angles, uses_ancilla(problem, arch.name), std::string(problem));
}

nlohmann::json sidecar_json(const CompiledCircuit& c) {
  nlohmann::json j;
  j["problem"] = c.problem;
  j["architecture"] = c.architecture.name;
  if (c.angles.rounds() == 1) {
    j["beta"] = c.angles.betas[0];
    j["gamma"] = c.angles.gammas[0];
  } else {
    j["beta"] = c.angles.betas;
    j["gamma"] = c.angles.gammas;
  }
  j["uses_ancilla"] = c.uses_ancilla;
  j["readout_perm"] = c.circuit.readout_perm();
  j["ancilla_wires"] = c.circuit.ancilla_wires();
  j["measured_wires"] = c.circuit.measured_wires();
  const auto counts = count_gates(c.circuit);
  j["rotations"] = counts.rotations;
  j["cnots"] = counts.cnots;
  return j;
}

std::vector<double> reference_distribution(const IsingModel& model, const AngleParams& angles) {
  if (angles.betas.size() != angles.gammas.size()) throw InputError("angle lists must have equal length");
  const auto energies = model.energy_table();
  const std::size_t dim = energies.size();
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<std::complex<double>> psi(dim, amp);
  for (int r = 0; r < angles.rounds(); ++r) {
    const double g = angles.gammas[static_cast<std::size_t>(r)];
    const double b = angles.betas[static_cast<std::size_t>(r)];
    std::complex<double> overlap = 0.0;
    for (std::size_t x = 0; x < dim; ++x) {
      psi[x] *= std::polar(1.0, -g * energies[x]);
      overlap += amp * psi[x];
    }
    const std::complex<double> factor = (1.0 - std::polar(1.0, -b)) * overlap * amp;
    for (auto& a : psi) a -= factor;
  }
  std::vector<double> p(dim);
  for (std::size_t x = 0; x < dim; ++x) p[x] = std::norm(psi[x]);
  return p;
}

GridSearchResult grid_search_angles(const IsingModel& model, int resolution, int jobs) {
  if (resolution < 1) throw InputError("grid resolution must be positive");
  const auto energies = model.energy_table();
  const double emin = *std::min_element(energies.begin(), energies.end());
  const double step = kPi / resolution;

  struct Point {
    double e;
    double gsp;
    int bi;
    int gi;
  };
  auto better = [](const Point& a, const Point& b) {
    constexpr double tie = 1e-12;
    if (a.e < b.e - tie) return true;
    if (a.e > b.e + tie) return false;
    if (a.gsp > b.gsp + tie) return true;
    if (a.gsp < b.gsp - tie) return false;
    return std::pair(a.bi, a.gi) < std::pair(b.bi, b.gi);
  };
  auto evaluate = [&](int bi, int gi) {
    const auto p = reference_distribution(model, AngleParams::single(-kPi + bi * step, -kPi + gi * step));
    Point pt{0.0, 0.0, bi, gi};
    for (std::size_t x = 0; x < p.size(); ++x) {
      pt.e += p[x] * energies[x];
      if (energies[x] - emin <= kDegeneracyTolerance) pt.gsp += p[x];
    }
    return pt;
  };

  const int workers = std::max(1, jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency()));
  std::vector<Point> best_per_row(static_cast<std::size_t>(resolution));
  auto row = [&](int bi) {
    Point best = evaluate(bi, 0);
    for (int gi = 1; gi < 2 * resolution; ++gi) {
      const Point pt = evaluate(bi, gi);
      if (better(pt, best)) best = pt;
    }
    best_per_row[static_cast<std::size_t>(bi)] = best;
  };
  if (workers == 1) {
    for (int bi = 0; bi < resolution; ++bi) row(bi);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        for (int bi = t; bi < resolution; bi += workers) row(bi);
      });
    for (auto& th : pool) th.join();
  }
  Point best = best_per_row[0];
  for (const auto& pt : best_per_row)
    if (better(pt, best)) best = pt;
  return {AngleParams::single(-kPi + best.bi * step, -kPi + best.gi * step), best.e, best.gsp};
}

GridSearchResult grid_search_angles(std::string_view problem, int resolution, int jobs) {
  if (!fixes_q0(problem)) throw InputError("problem f has no angles to search");
  return grid_search_angles(circuit_model(problem), resolution, jobs);
}

}  // namespace fairsample
