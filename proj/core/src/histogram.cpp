#include "fairsample/histogram.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "fairsample/error.hpp"

namespace fairsample {

void CountsHistogram::add(const std::string& bits, double count) {
  if (count < 0.0 || !std::isfinite(count)) throw InputError("histogram counts must be nonnegative");
  if (!counts_.empty() && static_cast<int>(bits.size()) != width())
    throw InputError("histogram keys must share one width");
  for (char c : bits) {
    if (c != '0' && c != '1') throw InputError("histogram keys must be bitstrings");
  }
  counts_[bits] += count;
  total_ += count;
}

void CountsHistogram::merge(const CountsHistogram& other) {
  for (const auto& [k, v] : other.counts_) add(k, v);
  discarded_ += other.discarded_;
}

double CountsHistogram::count(const std::string& bits) const {
  auto it = counts_.find(bits);
  return it == counts_.end() ? 0.0 : it->second;
}

long long CountsHistogram::shots() const { return std::llround(total_); }

int CountsHistogram::width() const {
  return counts_.empty() ? 0 : static_cast<int>(counts_.begin()->first.size());
}

nlohmann::json to_json(const CountsHistogram& h) {
  nlohmann::json j;
  j["shots"] = h.shots();
  j["discarded"] = h.discarded();
  j["counts"] = nlohmann::json::object();
  for (const auto& [k, v] : h.counts()) {
    if (v == std::floor(v) && v < 9.0e15) j["counts"][k] = static_cast<long long>(v);
    else j["counts"][k] = v;
  }
  return j;
}

CountsHistogram histogram_from_json(const nlohmann::json& j) {
  try {
    CountsHistogram h;
    for (const auto& [k, v] : j.at("counts").items()) h.add(k, v.get<double>());
    h.add_discarded(j.value("discarded", 0LL));
    if (j.contains("shots") && j.at("shots").get<long long>() != h.shots())
      throw InputError("histogram 'shots' does not equal the sum of counts");
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid histogram JSON: ") + e.what());
  }
}

}  // namespace fairsample
