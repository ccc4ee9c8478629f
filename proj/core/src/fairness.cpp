#include "fairsample/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "fairsample/chi_square.hpp"
#include "fairsample/error.hpp"
#include "fairsample/random.hpp"

namespace fairsample {

CountsHistogram logical_counts(const CountsHistogram& counts, const std::vector<int>& labels, bool prepend_q0) {
  CountsHistogram out;
  const std::size_t width = labels.size();
  for (const auto& [key, c] : counts.counts()) {
    if (key.size() != width) throw InputError("histogram width does not match the readout labels");
    std::string bits(width, '0');
    for (std::size_t p = 0; p < width; ++p) {
      const int l = labels[p];
      if (l < 0 || static_cast<std::size_t>(l) >= width) throw InputError("readout label out of range");
      bits[static_cast<std::size_t>(l)] = key[p];
    }
    out.add(prepend_q0 ? "0" + bits : bits, c);
  }
  out.add_discarded(counts.discarded());
  return out;
}

double gsp(const CountsHistogram& counts, const GroundStateSet& ground) {
  if (!(counts.total() > 0.0)) throw UndefinedMetricError("no retained shots");
  double hit = 0.0;
  for (const auto& [key, c] : counts.counts())
    if (ground.contains(key)) hit += c;
  return hit / counts.total();
}

double gsp(const CountsHistogram& counts, const GroundStateSet& ground, const std::vector<int>& labels,
           bool prepend_q0) {
  return gsp(logical_counts(counts, labels, prepend_q0), ground);
}

GroundStateSet reachable_ground_states(const GroundStateSet& ground, bool fixed_q0) {
  if (!fixed_q0) return ground;
  GroundStateSet out{ground.energy, {}};
  for (const auto& s : ground.states)
    if (s.bits().front() == '0') out.states.push_back(s);
  return out;
}

std::vector<double> ground_state_counts(const CountsHistogram& counts, const GroundStateSet& ground) {
  std::vector<double> o;
  o.reserve(ground.states.size());
  for (const auto& s : ground.states) o.push_back(counts.count(s.bits()));
  return o;
}

std::string NsrfsResult::to_string() const {
  switch (status) {
    case Status::Value: return std::to_string(shots);
    case Status::Capped: return "CAPPED";
    case Status::Undefined: break;
  }
  return "UNDEFINED";
}

double synthetic_chi2(const std::vector<double>& weights, long long n, const NsrfsOptions& opt) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const std::size_t d = weights.size();
  const double expected = static_cast<double>(n) / static_cast<double>(d);
  // Stream keyed on n so every probe is reproducible regardless of search path.
  Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(n)));
  std::vector<double> stats(static_cast<std::size_t>(opt.inner));
  for (auto& stat : stats) {
    long long remaining = n;
    double weight_left = total;
    double chi2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      long long draw = 0;
      if (i + 1 == d) {
        draw = remaining;
      } else if (remaining > 0 && weights[i] > 0.0) {
        const double p = std::clamp(weights[i] / weight_left, 0.0, 1.0);
        draw = std::binomial_distribution<long long>(remaining, p)(rng.engine());
      }
      remaining -= draw;
      weight_left -= weights[i];
      const double diff = static_cast<double>(draw) - expected;
      chi2 += diff * diff / expected;
    }
    stat = chi2;
  }
  if (opt.summary == ChiSquareSummary::Mean)
    return std::accumulate(stats.begin(), stats.end(), 0.0) / static_cast<double>(stats.size());
  const auto mid = stats.begin() + static_cast<std::ptrdiff_t>((stats.size() - 1) / 2);
  std::nth_element(stats.begin(), mid, stats.end());
  return *mid;
}

NsrfsResult nsrfs_from_weights(const std::vector<double>& weights, const NsrfsOptions& opt) {
  if (weights.size() < 2) throw UndefinedMetricError("NSRFS needs at least two ground states");
  if (opt.inner < 1) throw InputError("NSRFS needs at least one synthetic sample");
  if (opt.cap < 2) throw InputError("NSRFS cap must be at least 2");
  double total = 0.0;
  int observed = 0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InputError("weights must be nonnegative");
    total += w;
    observed += w > 0.0 ? 1 : 0;
  }
  if (observed == 0) throw UndefinedMetricError("no ground state was observed");
  const int k = static_cast<int>(weights.size()) - 1;
  const double crit = chi2_critical(k, opt.significance);

  if (observed == 1) {
    // Every draw lands in one cell, so the statistic is exactly n * k.
    const auto n = std::max<long long>(2, static_cast<long long>(std::ceil(crit / k)));
    return n > opt.cap ? NsrfsResult{NsrfsResult::Status::Capped, 0} : NsrfsResult{NsrfsResult::Status::Value, n};
  }

  auto stat = [&](long long n) { return synthetic_chi2(weights, n, opt); };
  long long n = 2;
  while (stat(n) < crit) {
    n *= 2;
    if (n > opt.cap) return {NsrfsResult::Status::Capped, 0};
  }
  long long upper = n, lower = n / 2;
  while (upper - lower > 2) {
    n = (upper + lower) / 2;
    (stat(n) < crit ? lower : upper) = n;
  }
  return {NsrfsResult::Status::Value, opt.result == NsrfsReturn::SmallestRejecting ? upper : n};
}

NsrfsResult nsrfs(const std::vector<double>& ground_counts, const NsrfsOptions& opt) {
  return nsrfs_from_weights(ground_counts, opt);
}

FairnessReport evaluate_fairness(const CountsHistogram& counts, const GroundStateSet& reachable,
                                 const NsrfsOptions& opt) {
  FairnessReport r;
  r.shots = counts.shots();
  r.discarded = counts.discarded();
  r.gsp = gsp(counts, reachable);
  r.ground_state_counts = ground_state_counts(counts, reachable);
  for (const auto& s : reachable.states) r.ground_states.push_back(s.bits());
  r.dof = reachable.degeneracy() - 1;
  const double hits = std::accumulate(r.ground_state_counts.begin(), r.ground_state_counts.end(), 0.0);
  if (hits > 0.0)
    for (double o : r.ground_state_counts) r.weights.push_back(o / hits);
  if (reachable.degeneracy() >= 2 && hits > 0.0) {
    r.chi2 = chi2_stat(r.ground_state_counts).statistic;
    r.nsrfs = nsrfs(r.ground_state_counts, opt);
  }
  return r;
}

nlohmann::json to_json(const FairnessReport& r) {
  nlohmann::json j;
  j["gsp"] = r.gsp;
  j["chi2"] = r.chi2 ? nlohmann::json(*r.chi2) : nlohmann::json(nullptr);
  j["dof"] = r.dof;
  j["nsrfs"] = r.nsrfs.status == NsrfsResult::Status::Value ? nlohmann::json(r.nsrfs.shots) : nlohmann::json(r.nsrfs.to_string());
  j["capped"] = r.nsrfs.capped();
  j["aggregate_error"] = r.aggregate_error ? nlohmann::json(*r.aggregate_error) : nlohmann::json(nullptr);
  j["ground_states"] = r.ground_states;
  j["ground_state_counts"] = r.ground_state_counts;
  j["weights"] = r.weights;
  j["shots"] = r.shots;
  j["discarded"] = r.discarded;
  return j;
}

}  // namespace fairsample
