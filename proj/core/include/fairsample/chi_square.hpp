#pragma once

#include <vector>

namespace fairsample {

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
};

// Pearson statistic against a uniform expectation over all cells.
ChiSquare chi2_stat(const std::vector<double>& observed);

// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);
double chi2_cdf(double x, int k);
// Upper-tail critical value: the x with chi2_cdf(x, k) == significance.
double chi2_critical(int k, double significance = 0.95);

}  // namespace fairsample
