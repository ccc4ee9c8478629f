#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fairsample/experiment.hpp"

namespace fairsample {

enum class Predictor { Gsp, AggregateError };

Predictor predictor_from_name(std::string_view name);
std::string predictor_name(Predictor p);

struct TrendFit {
  Predictor predictor = Predictor::Gsp;
  int degree = 1;
  std::vector<double> coefficients;  // constant term first
  int points = 0;
  int excluded_capped = 0;
  int excluded_other = 0;  // failed rows, undefined NSRFS, or missing predictor

  double evaluate(double x) const;
  // Sign of the linear coefficient for degree 1, of the mean slope over the data range otherwise.
  int slope_sign() const;
  double x_min = 0.0;
  double x_max = 0.0;
};

// Least squares polynomial through (x, y).
std::vector<double> fit_polynomial(const std::vector<double>& x, const std::vector<double>& y, int degree);

// Fits log10(nsrfs) against the predictor. Needs degree + 2 usable rows.
TrendFit fit_trend(const std::vector<ResultRow>& rows, Predictor predictor, int degree = 1);

}  // namespace fairsample
