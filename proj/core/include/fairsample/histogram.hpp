#pragma once

#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace fairsample {

// Outcome bitstring -> count. Counts are real so mitigated histograms fit the same type.
class CountsHistogram {
 public:
  CountsHistogram() = default;

  void add(const std::string& bits, double count = 1.0);
  void add_discarded(long long n) { discarded_ += n; }
  void merge(const CountsHistogram& other);

  double count(const std::string& bits) const;
  const std::map<std::string, double>& counts() const noexcept { return counts_; }
  double total() const noexcept { return total_; }
  // Retained shots (post-selection survivors).
  long long shots() const;
  long long discarded() const noexcept { return discarded_; }
  // Width of the keys, 0 when empty.
  int width() const;
  bool empty() const noexcept { return counts_.empty(); }

 private:
  std::map<std::string, double> counts_;
  double total_ = 0.0;
  long long discarded_ = 0;
};

nlohmann::json to_json(const CountsHistogram& h);
CountsHistogram histogram_from_json(const nlohmann::json& j);

}  // namespace fairsample
