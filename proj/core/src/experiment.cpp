#include "fairsample/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "fairsample/error.hpp"
#include "fairsample/gmqaoa.hpp"
#include "fairsample/random.hpp"
#include "fairsample/simulator.hpp"
#include "fairsample/topology.hpp"

namespace fairsample {
namespace {

const std::set<std::string>& sweep_kinds() {
  static const std::set<std::string> kinds{"global_depolarizing", "gate_depolarizing", "coherent_overrotation",
                                           "zz_after_cnot", "readout"};
  return kinds;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::filesystem::path resolve_backend(const std::filesystem::path& p, const std::filesystem::path& base) {
  if (p.is_absolute() || std::filesystem::exists(p)) return p;
  if (!base.empty() && std::filesystem::exists(base / p)) return base / p;
#ifdef FAIRSAMPLE_DATA_DIR
  const std::filesystem::path bundled = std::filesystem::path(FAIRSAMPLE_DATA_DIR) / "backends" / p;
  if (std::filesystem::exists(bundled)) return bundled;
  if (std::filesystem::exists(bundled.string() + ".json")) return bundled.string() + ".json";
#endif
  return base.empty() ? p : base / p;
}

NoiseModel sweep_noise(const NoiseSweep& sweep, double v, int wires) {
  NoiseModel n;
  if (sweep.kind == "global_depolarizing") {
    n.global_depolarizing = v;
  } else if (sweep.kind == "gate_depolarizing") {
    for (auto k : {GateKind::H, GateKind::X, GateKind::T, GateKind::Tdg, GateKind::PhaseShift, GateKind::CPhaseShift,
                   GateKind::CNOT, GateKind::SWAP})
      n.gate_depolarizing[k] = v;
  } else if (sweep.kind == "coherent_overrotation") {
    n.coherent_overrotation = v;
  } else if (sweep.kind == "zz_after_cnot") {
    n.zz_after_cnot = v;
  } else if (sweep.kind == "readout") {
    for (int w = 0; w < wires; ++w) n.readout[w] = {std::min(1.0, v * sweep.readout_ratio), v};
  }
  n.validate();
  return n;
}

struct Cell {
  std::string problem;
  std::string architecture;
  std::string backend_label;
  const BackendTopology* backend = nullptr;
  std::optional<Embedding> embedding;
  std::optional<double> noise_value;
  std::uint64_t seed = 0;
  std::string setup_error;
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw InputError("not a number: " + s);
  return v;
}

template <class Int>
Int parse_int(const std::string& s) {
  Int v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw InputError("not an integer: " + s);
  return v;
}

}  // namespace

void ExperimentConfig::validate() const {
  const auto& names = builtin_problem_names();
  for (const auto& p : problems) {
    if (std::find(names.begin(), names.end(), p) == names.end()) throw InputError("unknown problem '" + p + "'");
    if (auto it = architectures.find(p); it != architectures.end()) {
      const auto ok = supported_architectures(p);
      for (const auto& a : it->second)
        if (std::find(ok.begin(), ok.end(), a) == ok.end())
          throw InputError("architecture " + a + " is not available for problem " + p);
    }
  }
  if (shots < 1) throw InputError("shots must be at least 1");
  if (seeds.empty()) throw InputError("at least one seed is required");
  if (angles != "table" && angles != "grid") throw InputError("angles must be 'table' or 'grid'");
  if (grid_resolution < 1) throw InputError("grid_resolution must be positive");
  if (nsrfs_inner < 1) throw InputError("nsrfs_inner must be positive");
  if (noise) {
    if (!sweep_kinds().count(noise->kind)) throw InputError("unknown noise kind '" + noise->kind + "'");
    if (noise->values.empty()) throw InputError("noise sweep has no values");
  }
}

ExperimentConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  ExperimentConfig c;
  try {
    if (!j.is_object()) throw InputError("config must be a JSON object");
    static const std::set<std::string> known{"problems", "architectures", "backends", "noise", "include_ideal",
                                             "shots", "seeds", "angles", "grid_resolution", "nsrfs_inner", "output"};
    for (const auto& [k, v] : j.items())
      if (!known.count(k)) throw InputError("unknown config key '" + k + "'");
    c.problems = j.value("problems", std::vector<std::string>{});
    if (j.contains("architectures")) {
      const auto& a = j.at("architectures");
      if (a.is_array()) {
        for (const auto& p : c.problems) c.architectures[p] = a.get<std::vector<std::string>>();
      } else {
        c.architectures = a.get<std::map<std::string, std::vector<std::string>>>();
      }
    }
    for (const auto& b : j.value("backends", std::vector<std::string>{})) c.backends.push_back(resolve_backend(b, base_dir));
    if (j.contains("noise") && !j.at("noise").is_null()) {
      const auto& n = j.at("noise");
      c.noise = NoiseSweep{n.at("kind").get<std::string>(), n.at("values").get<std::vector<double>>(),
                           n.value("readout_ratio", 1.0)};
    }
    c.include_ideal = j.value("include_ideal", false);
    c.shots = j.value("shots", c.shots);
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    c.angles = j.value("angles", c.angles);
    c.grid_resolution = j.value("grid_resolution", c.grid_resolution);
    c.nsrfs_inner = j.value("nsrfs_inner", c.nsrfs_inner);
    c.output = j.value("output", c.output.string());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

std::vector<ResultRow> run_experiments(const ExperimentConfig& config, int jobs) {
  config.validate();
  std::vector<BackendTopology> backends;
  std::vector<std::string> backend_errors;
  for (const auto& p : config.backends) {
    try {
      backends.push_back(load_backend(p));
      backend_errors.emplace_back();
    } catch (const Error& e) {
      BackendTopology placeholder;
      placeholder.name = p.stem().string();
      backends.push_back(std::move(placeholder));
      backend_errors.emplace_back(e.what());
    }
  }

  std::vector<Cell> cells;
  auto labelled = [](std::string label) {
    Cell c;
    c.backend_label = std::move(label);
    return c;
  };
  for (const auto& problem : config.problems) {
    auto it = config.architectures.find(problem);
    const auto archs = it != config.architectures.end() ? it->second : supported_architectures(problem);
    for (const auto& arch : archs) {
      auto add = [&](Cell proto) {
        for (auto seed : config.seeds) {
          Cell c = proto;
          c.problem = problem;
          c.architecture = arch;
          c.seed = seed;
          cells.push_back(std::move(c));
        }
      };
      const bool synthetic_only = config.backends.empty() && !config.noise;
      if (config.include_ideal || synthetic_only) add(labelled("ideal"));
      if (config.noise)
        for (double v : config.noise->values)
{
          Cell c = labelled(config.noise->kind + "=" + format_double(v));
          c.noise_value = v;
          add(std::move(c));
        }
      for (std::size_t b = 0; b < backends.size(); ++b) {
        if (!backend_errors[b].empty()) {
          Cell c = labelled(backends[b].name);
          c.setup_error = backend_errors[b];
          add(std::move(c));
          continue;
        }
        for (auto& e : enumerate_embeddings(backends[b], Architecture::named(arch)))
{
          Cell c = labelled(backends[b].name);
          c.backend = &backends[b];
          c.embedding = std::move(e);
          add(std::move(c));
        }
      }
    }
  }

  // Shared per-(problem, architecture) work, computed once.
  std::map<std::string, AngleParams> angle_cache;
  std::map<std::pair<std::string, std::string>, CompiledCircuit> circuit_cache;
  std::map<std::pair<std::string, std::string>, std::string> compile_errors;
  for (const auto& c : cells) {
    const auto key = std::make_pair(c.problem, c.architecture);
    if (circuit_cache.count(key) || compile_errors.count(key)) continue;
    try {
      AngleParams angles;
      if (fixes_q0(c.problem)) {
        if (!angle_cache.count(c.problem))
          angle_cache[c.problem] = config.angles == "grid"
                                       ? grid_search_angles(c.problem, config.grid_resolution, jobs).angles
                                       : table_angles(c.problem);
        angles = angle_cache[c.problem];
      }
      circuit_cache.emplace(key, build_full_circuit(c.problem, Architecture::named(c.architecture), angles));
    } catch (const Error& e) {
      compile_errors[key] = e.what();
    }
  }

  std::vector<ResultRow> rows(cells.size());
  auto run_cell = [&](std::size_t i) {
    const Cell& cell = cells[i];
    ResultRow& r = rows[i];
    r.problem = cell.problem;
    r.architecture = cell.architecture;
    r.backend = cell.backend_label;
    r.embedding = cell.embedding ? cell.embedding->label() : "";
    r.seed = cell.seed;
    r.shots = config.shots;
    try {
      if (!cell.setup_error.empty()) throw DataError(cell.setup_error);
      const auto key = std::make_pair(cell.problem, cell.architecture);
      if (auto e = compile_errors.find(key); e != compile_errors.end()) throw CompilationError(e->second);
      const CompiledCircuit& cc = circuit_cache.at(key);
      if (cc.angles.rounds() > 0) {
        r.beta = cc.angles.betas.front();
        r.gamma = cc.angles.gammas.front();
      }
      const std::uint64_t cell_seed = derive_seed(
          cell.seed, fnv1a(cell.problem + "|" + cell.architecture + "|" + r.backend + "|" + r.embedding));

      std::optional<NoiseModel> noise;
      if (cell.embedding) {
        noise = noise_from_backend(cc.circuit, *cell.embedding, *cell.backend);
        r.aggregate_error = aggregate_error(cc.circuit, *cell.embedding, *cell.backend);
      } else if (cell.noise_value) {
        noise = sweep_noise(*config.noise, *cell.noise_value, cc.circuit.num_wires());
      }
      const CountsHistogram raw = noise && !noise->is_noiseless()
                                      ? sample(cc.circuit, &*noise, config.shots, cell_seed)
                                      : expected_counts(cc.circuit, config.shots);
      const bool fixed = fixes_q0(cell.problem);
      const auto counts = logical_counts(raw, cc.circuit.measured_labels(), fixed);
      const auto ground = reachable_ground_states(ground_states(builtin_problem(cell.problem)), fixed);
      NsrfsOptions opt;
      opt.inner = config.nsrfs_inner;
      opt.seed = derive_seed(cell_seed, 1);
      const auto rep = evaluate_fairness(counts, ground, opt);
      r.shots = rep.shots;
      r.discarded = rep.discarded;
      r.gsp = rep.gsp;
      r.chi2 = rep.chi2;
      r.dof = rep.dof;
      r.nsrfs = rep.nsrfs;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(
      jobs > 0 ? static_cast<std::size_t>(jobs) : std::max(1U, std::thread::hardware_concurrency()), 1, cells.size() ? cells.size() : 1);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) run_cell(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"problem", "architecture", "backend",  "embedding", "shots", "discarded",
                                             "gsp",     "chi2",         "dof",      "nsrfs",     "capped", "aggregate_error",
                                             "beta",    "gamma",        "seed",     "error"};
  return cols;
}

std::string results_to_csv(const std::vector<ResultRow>& rows, const std::vector<std::string>& comment) {
  std::ostringstream out;
  for (const auto& line : comment) out << "# " << line << '\n';
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };
  for (const auto& r : rows) {
    std::string nsrfs;
    if (r.nsrfs.status == NsrfsResult::Status::Value) nsrfs = std::to_string(r.nsrfs.shots);
    out << csv_escape(r.problem) << ',' << csv_escape(r.architecture) << ',' << csv_escape(r.backend) << ','
        << csv_escape(r.embedding) << ',' << r.shots << ',' << r.discarded << ',' << opt(r.gsp) << ',' << opt(r.chi2)
        << ',' << r.dof << ',' << nsrfs << ',' << (r.nsrfs.capped() ? "1" : "0") << ',' << opt(r.aggregate_error)
        << ',' << opt(r.beta) << ',' << opt(r.gamma) << ',' << r.seed << ',' << csv_escape(r.error) << '\n';
  }
  return out.str();
}

std::vector<ResultRow> results_from_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto f = split_csv_line(line);
    if (!header) {
      if (f != csv_columns()) throw ParseError(lineno, "unexpected CSV header");
      header = true;
      continue;
    }
    if (f.size() != csv_columns().size()) throw ParseError(lineno, "wrong number of fields");
    try {
      ResultRow r;
      r.problem = f[0];
      r.architecture = f[1];
      r.backend = f[2];
      r.embedding = f[3];
      r.shots = parse_int<long long>(f[4]);
      r.discarded = parse_int<long long>(f[5]);
      r.gsp = parse_optional(f[6]);
      r.chi2 = parse_optional(f[7]);
      r.dof = parse_int<int>(f[8]);
      if (f[10] == "1") {
        r.nsrfs = {NsrfsResult::Status::Capped, 0};
      } else if (!f[9].empty()) {
        r.nsrfs = {NsrfsResult::Status::Value, parse_int<long long>(f[9])};
      }
      r.aggregate_error = parse_optional(f[11]);
      r.beta = parse_optional(f[12]);
      r.gamma = parse_optional(f[13]);
      r.seed = parse_int<std::uint64_t>(f[14]);
      r.error = f[15];
      rows.push_back(std::move(r));
    } catch (const InputError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!header) throw ParseError(lineno, "missing CSV header");
  return rows;
}

}  // namespace fairsample
