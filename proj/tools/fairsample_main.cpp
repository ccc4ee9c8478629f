#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "fairsample/chi_square.hpp"
#include "fairsample/error.hpp"
#include "fairsample/experiment.hpp"
#include "fairsample/fairness.hpp"
#include "fairsample/gmqaoa.hpp"
#include "fairsample/mitigation.hpp"
#include "fairsample/plot.hpp"
#include "fairsample/simulator.hpp"
#include "fairsample/topology.hpp"
#include "fairsample/trend.hpp"

namespace fs = std::filesystem;
using namespace fairsample;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitPartial = 3;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot open " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write " + p.string());
  out << text;
}

json read_json(const fs::path& p) {
  try {
    return json::parse(read_file(p));
  } catch (const json::exception& e) {
    throw InputError(p.string() + " is not valid JSON: " + e.what());
  }
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

AngleParams resolve_angles(const std::string& problem, const std::string& source, std::optional<double> beta,
                           std::optional<double> gamma, int resolution, int jobs) {
  if (!fixes_q0(problem)) return {};
  if (beta || gamma) {
    if (!beta || !gamma) throw InputError("--beta and --gamma must be given together");
    return AngleParams::single(*beta, *gamma);
  }
  if (source == "grid") return grid_search_angles(problem, resolution, jobs).angles;
  return table_angles(problem);
}

int cmd_problems(bool as_json) {
  json out = json::array();
  for (const auto& name : builtin_problem_names()) {
    const auto model = builtin_problem(name);
    const auto ground = ground_states(model);
    json j{{"name", name},
           {"qubits", model.n()},
           {"ground_energy", ground.energy},
           {"degeneracy", ground.degeneracy()},
           {"architectures", supported_architectures(name)}};
    out.push_back(j);
    if (!as_json) {
      std::cout << name << "  qubits=" << model.n() << "  E0=" << ground.energy << "  d=" << ground.degeneracy()
                << "  architectures=";
      const auto archs = supported_architectures(name);
      for (std::size_t i = 0; i < archs.size(); ++i) std::cout << (i ? "," : "") << archs[i];
      std::cout << '\n';
    }
  }
  if (as_json) std::cout << out.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair-sampling GM-QAOA circuits: compile, simulate, and measure fairness"};
  app.fallthrough();
  app.require_subcommand(1);
  int jobs = 0;
  std::string log_level = "info";
  app.add_option("--jobs", jobs, "Worker threads (0 = hardware concurrency)");
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error"}));

  bool problems_json = false;
  auto* problems = app.add_subcommand("problems", "List the built-in Ising problems");
  problems->add_flag("--json", problems_json, "Emit JSON");

  std::string problem, arch = "", angle_source = "table", out_dir = ".";
  std::optional<double> beta, gamma;
  int resolution = 60;
  auto* compile = app.add_subcommand("compile", "Compile a problem to QASM with a JSON sidecar");
  compile->add_option("--problem", problem, "Problem name")->required();
  compile->add_option("--arch", arch, "Architecture (2L, 3L, 4L, 4T, 5T)")->required();
  compile->add_option("--angles", angle_source, "table or grid")->check(CLI::IsMember({"table", "grid"}));
  compile->add_option("--beta", beta, "Mixer angle override");
  compile->add_option("--gamma", gamma, "Phase-separator angle override");
  compile->add_option("--resolution", resolution, "Grid steps per pi");
  compile->add_option("--out", out_dir, "Output directory");

  auto* optimize = app.add_subcommand("optimize-angles", "Grid search for single-round angles");
  optimize->add_option("--problem", problem, "Problem name")->required();
  optimize->add_option("--resolution", resolution, "Grid steps per pi");

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<long long> shots;
  std::optional<std::string> run_out;
  auto* run = app.add_subcommand("run", "Run an experiment matrix from a config file");
  run->add_option("--config", config_path, "Config JSON")->required();
  run->add_option("--out", run_out, "Output directory (overrides config)");
  run->add_option("--seed", seed, "Single seed (overrides config)");
  run->add_option("--shots", shots, "Shots per cell (overrides config)");

  std::string counts_path;
  std::vector<double> weights;
  int inner = 1000;
  std::string summary = "mean";
  auto* fairness = app.add_subcommand("fairness", "Fairness report for a histogram or NSRFS for raw weights");
  auto* counts_opt = fairness->add_option("--counts", counts_path, "Histogram JSON with logical bitstrings");
  fairness->add_option("--problem", problem, "Problem the histogram samples")->needs(counts_opt);
  fairness->add_option("--weights", weights, "Ground-state weights")->excludes(counts_opt);
  fairness->add_option("--seed", seed, "NSRFS seed");
  fairness->add_option("--inner", inner, "Synthetic samples per probe");
  fairness->add_option("--summary", summary, "mean or median")->check(CLI::IsMember({"mean", "median"}));

  std::string backend_path, convention = "table3";
  auto* embeddings = app.add_subcommand("embeddings", "Enumerate architecture embeddings on a backend");
  embeddings->add_option("--backend", backend_path, "Backend JSON")->required();
  embeddings->add_option("--arch", arch, "Only this architecture");
  embeddings->add_option("--convention", convention, "table3, labeled or unlabeled")
      ->check(CLI::IsMember({"table3", "labeled", "unlabeled"}));
  bool list_embeddings = false;
  embeddings->add_flag("--list", list_embeddings, "Print each embedding");

  std::string calibration_path, mitigated_path;
  std::vector<double> readout;
  auto* mitigate_cmd = app.add_subcommand("mitigate", "Readout-error mitigation of a histogram");
  mitigate_cmd->add_option("--counts", counts_path, "Histogram JSON")->required();
  auto* cal_opt = mitigate_cmd->add_option("--calibration", calibration_path, "Calibration matrix CSV");
  mitigate_cmd->add_option("--readout", readout, "Uniform p01 p10 instead of a calibration file")
      ->expected(2)
      ->excludes(cal_opt);
  mitigate_cmd->add_option("--out", mitigated_path, "Output JSON (stdout if omitted)");

  std::string results_path, predictor = "gsp", title;
  int degree = 1;
  std::string plot_stem = "nsrfs";
  auto* plot = app.add_subcommand("plot", "SVG scatter of NSRFS with a trend line");
  plot->add_option("--results", results_path, "Results CSV")->required();
  plot->add_option("--predictor", predictor, "gsp or aggregate_error")
      ->check(CLI::IsMember({"gsp", "aggregate_error"}));
  plot->add_option("--degree", degree, "Fit degree (1 or 2)")->check(CLI::Range(1, 2));
  plot->add_option("--title", title, "Plot title");
  plot->add_option("--out", out_dir, "Output directory");
  plot->add_option("--name", plot_stem, "File stem");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  spdlog::set_level(spdlog::level::from_str(log_level));
  spdlog::set_pattern("[%l] %v");

  try {
    if (*problems) return cmd_problems(problems_json);

    if (*compile) {
      const auto angles = resolve_angles(problem, angle_source, beta, gamma, resolution, jobs);
      const auto cc = build_full_circuit(problem, Architecture::named(arch), angles);
      const fs::path base = fs::path(out_dir) / (problem + "_" + arch);
      write_file(base.string() + ".qasm", to_qasm(cc.circuit));
      write_file(base.string() + ".json", sidecar_json(cc).dump(2) + "\n");
      const auto counts = count_gates(cc.circuit);
      std::cout << problem << ' ' << arch << "  rotations=" << counts.rotations << "  cnots=" << counts.cnots << '\n';
      spdlog::info("wrote {}.qasm and {}.json", base.string(), base.string());
      return kExitOk;
    }

    if (*optimize) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto r = grid_search_angles(problem, resolution, jobs);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      json j{{"problem", problem},       {"beta", r.angles.betas.at(0)}, {"gamma", r.angles.gammas.at(0)},
             {"expectation", r.expectation}, {"gsp", r.gsp},           {"resolution", resolution}};
      std::cout << j.dump(2) << '\n';
      spdlog::info("grid search took {:.2f} s", secs);
      return kExitOk;
    }

    if (*run) {
      ExperimentConfig config;
      try {
        config = load_config(config_path);
        if (seed) config.seeds = {*seed};
        if (shots) config.shots = *shots;
        if (run_out) config.output = *run_out;
        config.validate();
      } catch (const Error& e) {
        spdlog::error("config: {}", e.what());
        return kExitConfig;
      }
      spdlog::info("running {} problem(s) with {} seed(s)", config.problems.size(), config.seeds.size());
      const auto rows = run_experiments(config, jobs);
      std::size_t failed = 0;
      for (const auto& r : rows)
        if (!r.error.empty()) {
          ++failed;
          spdlog::warn("{} {} {} {}: {}", r.problem, r.architecture, r.backend, r.embedding, r.error);
        }
      const fs::path csv = config.output / "results.csv";
      write_file(csv, results_to_csv(rows, {"fairsample results", "generated " + utc_timestamp()}));
      spdlog::info("{} row(s), {} failed, written to {}", rows.size(), failed, csv.string());
      return failed ? kExitPartial : kExitOk;
    }

    if (*fairness) {
      NsrfsOptions opt;
      opt.inner = inner;
      opt.seed = seed.value_or(0);
      opt.summary = summary == "median" ? ChiSquareSummary::Median : ChiSquareSummary::Mean;
      if (!weights.empty()) {
        const auto r = nsrfs_from_weights(weights, opt);
        json j{{"nsrfs", r.status == NsrfsResult::Status::Value ? json(r.shots) : json(r.to_string())},
               {"capped", r.capped()},
               {"dof", static_cast<int>(weights.size()) - 1},
               {"critical", chi2_critical(static_cast<int>(weights.size()) - 1)}};
        std::cout << j.dump(2) << '\n';
        return kExitOk;
      }
      if (counts_path.empty() || problem.empty()) throw InputError("give --weights, or --counts with --problem");
      const auto counts = histogram_from_json(read_json(counts_path));
      const auto full = ground_states(builtin_problem(problem));
      const bool fixed = fixes_q0(problem) && counts.width() == full.states.front().size() - 1;
      const auto logical = fixed ? logical_counts(counts, [&] {
        std::vector<int> id(static_cast<std::size_t>(counts.width()));
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
        return id;
      }(), true)
                                 : counts;
      const auto report = evaluate_fairness(logical, reachable_ground_states(full, fixes_q0(problem)), opt);
      std::cout << to_json(report).dump(2) << '\n';
      return kExitOk;
    }

    if (*embeddings) {
      const auto backend = load_backend(backend_path);
      const auto conv = convention == "labeled"     ? EmbeddingConvention::Labeled
                        : convention == "unlabeled" ? EmbeddingConvention::Unlabeled
                                                    : EmbeddingConvention::TableThree;
      const auto names = arch.empty() ? Architecture::names() : std::vector<std::string>{arch};
      for (const auto& a : names) {
        const auto embs = enumerate_embeddings(backend, Architecture::named(a), conv);
        std::cout << a << ' ' << embs.size() << '\n';
        if (list_embeddings)
          for (const auto& e : embs) std::cout << "  " << e.label() << '\n';
      }
      return kExitOk;
    }

    if (*mitigate_cmd) {
      const auto counts = histogram_from_json(read_json(counts_path));
      CalibrationMatrix cal;
      if (!calibration_path.empty()) {
        cal = calibration_from_csv(read_file(calibration_path));
      } else if (readout.size() == 2) {
        NoiseModel nm;
        for (int w = 0; w < counts.width(); ++w) nm.readout[w] = {readout[0], readout[1]};
        cal = exact_calibration_matrix(counts.width(), nm);
      } else {
        throw InputError("give --calibration or --readout");
      }
      const auto out = to_json(mitigate(counts, cal)).dump(2) + "\n";
      if (mitigated_path.empty()) {
        std::cout << out;
      } else {
        write_file(mitigated_path, out);
      }
      spdlog::info("condition number {:.3g}", condition_number(cal));
      return kExitOk;
    }

    if (*plot) {
      const auto rows = results_from_csv(read_file(results_path));
      PlotSpec spec;
      spec.predictor = predictor_from_name(predictor);
      spec.fit_degree = degree;
      spec.title = title;
      const auto art = write_plot(rows, spec, out_dir, plot_stem);
      if (art.fit) {
        spdlog::info("fit on {} point(s), {} CAPPED row(s) excluded, slope sign {}", art.fit->points,
                     art.fit->excluded_capped, art.fit->slope_sign());
      } else {
        spdlog::warn("not enough finite NSRFS rows for a trend line");
      }
      return kExitOk;
    }
  } catch (const InputError& e) {
    spdlog::error("{}", e.what());
    return kExitConfig;
  } catch (const ParseError& e) {
    spdlog::error("{}", e.what());
    return kExitConfig;
  } catch (const DataError& e) {
    spdlog::error("{}", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitFailure;
  }
  return kExitOk;
}
