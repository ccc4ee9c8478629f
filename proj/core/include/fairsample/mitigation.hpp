#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fairsample/histogram.hpp"
#include "fairsample/noise.hpp"

namespace fairsample {

inline constexpr int kMaxCalibrationQubits = 6;

// Column-stochastic readout response: at(i, j) = P(measure i | prepared j).
struct CalibrationMatrix {
  int n = 0;
  std::vector<double> values;  // row-major, 2^n x 2^n

  std::size_t dim() const { return std::size_t{1} << n; }
  double at(std::size_t i, std::size_t j) const { return values[i * dim() + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * dim() + j]; }
};

// Prepares each basis state with X gates on wires 0..n-1 and estimates the response from
// `shots_per_state` noisy shots. The readout map of `noise` is keyed by register position.
CalibrationMatrix build_calibration_matrix(int n, const NoiseModel& noise, long long shots_per_state,
                                           std::uint64_t seed);
// Infinite-shot limit of the same experiment.
CalibrationMatrix exact_calibration_matrix(int n, const NoiseModel& noise);

inline constexpr double kDefaultMaxCondition = 1e6;

// Solves M x = c, clips negatives and rescales to the original total.
CountsHistogram mitigate(const CountsHistogram& counts, const CalibrationMatrix& cal,
                         double max_condition = kDefaultMaxCondition);

double condition_number(const CalibrationMatrix& cal);

std::string to_csv(const CalibrationMatrix& cal);
CalibrationMatrix calibration_from_csv(std::string_view text);

}  // namespace fairsample
