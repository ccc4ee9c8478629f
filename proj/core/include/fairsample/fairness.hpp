#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fairsample/histogram.hpp"
#include "fairsample/ising.hpp"

namespace fairsample {

// Re-key a histogram from measured-wire order to logical qubit order, optionally
// prepending a fixed spin-up qubit 0.
CountsHistogram logical_counts(const CountsHistogram& counts, const std::vector<int>& labels, bool prepend_q0 = false);

// Fraction of retained shots that land in the ground set. Keys must already be logical.
double gsp(const CountsHistogram& counts, const GroundStateSet& ground);
double gsp(const CountsHistogram& counts, const GroundStateSet& ground, const std::vector<int>& labels, bool prepend_q0);

// Ground states the sampler can produce: the q0 = up half when qubit 0 is fixed.
GroundStateSet reachable_ground_states(const GroundStateSet& ground, bool fixed_q0);

// Counts of each state in `ground` (same order). Keys must already be logical.
std::vector<double> ground_state_counts(const CountsHistogram& counts, const GroundStateSet& ground);

// How the synthetic chi-square values at one sample size are reduced. Median takes the
// lower-middle element for even counts.
enum class ChiSquareSummary { Mean, Median };

// SmallestRejecting reports the smallest probed size whose summary reaches the critical
// value. LastMidpoint reports the final bisection probe, which may not reject.
enum class NsrfsReturn { SmallestRejecting, LastMidpoint };

struct NsrfsOptions {
  int inner = 1000;
  std::uint64_t seed = 0;
  long long cap = 1LL << 30;
  double significance = 0.95;
  ChiSquareSummary summary = ChiSquareSummary::Mean;
  NsrfsReturn result = NsrfsReturn::SmallestRejecting;
};

struct NsrfsResult {
  enum class Status { Value, Capped, Undefined };
  Status status = Status::Undefined;
  long long shots = 0;  // meaningful for Value

  bool capped() const { return status == Status::Capped; }
  bool defined() const { return status != Status::Undefined; }
  std::string to_string() const;
};

// Summary statistic of `inner` synthetic chi-square values, each from n multinomial draws.
double synthetic_chi2(const std::vector<double>& weights, long long n, const NsrfsOptions& opt);

// Throws UndefinedMetricError for fewer than two cells or zero total weight.
NsrfsResult nsrfs_from_weights(const std::vector<double>& weights, const NsrfsOptions& opt = {});
NsrfsResult nsrfs(const std::vector<double>& ground_counts, const NsrfsOptions& opt = {});

struct FairnessReport {
  double gsp = 0.0;
  std::optional<double> chi2;
  int dof = 0;
  NsrfsResult nsrfs;
  std::optional<double> aggregate_error;
  std::vector<std::string> ground_states;
  std::vector<double> ground_state_counts;
  std::vector<double> weights;
  long long shots = 0;
  long long discarded = 0;
};

// `counts` must be logical. Undefined statistics are left empty rather than thrown.
FairnessReport evaluate_fairness(const CountsHistogram& counts, const GroundStateSet& reachable,
                                 const NsrfsOptions& opt = {});

nlohmann::json to_json(const FairnessReport& r);

}  // namespace fairsample
