#include "fairsample/chi_square.hpp"

#include <cmath>
#include <limits>

#include "fairsample/error.hpp"

namespace fairsample {

ChiSquare chi2_stat(const std::vector<double>& observed) {
  if (observed.size() < 2) throw UndefinedMetricError("chi-square needs at least two cells");
  double total = 0.0;
  for (double o : observed) {
    if (!(o >= 0.0)) throw InputError("observed counts must be nonnegative");
    total += o;
  }
  if (total <= 0.0) throw UndefinedMetricError("chi-square needs a positive total count");
  const double e = total / static_cast<double>(observed.size());
  double chi2 = 0.0;
  for (double o : observed) chi2 += (o - e) * (o - e) / e;
  return {chi2, static_cast<int>(observed.size()) - 1};
}

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw InputError("incomplete gamma needs a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  const double log_prefix = a * std::log(x) - x - std::lgamma(a);
  constexpr double eps = 1e-15;
  if (x < a + 1.0) {
    double term = 1.0 / a, sum = term;
    for (int n = 1; n < 10000; ++n) {
      term *= x / (a + n);
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * eps) break;
    }
    return sum * std::exp(log_prefix);
  }
  // Modified Lentz evaluation of the continued fraction for Q.
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < eps) break;
  }
  return 1.0 - std::exp(log_prefix) * h;
}

double chi2_cdf(double x, int k) {
  if (k < 1) throw InputError("degrees of freedom must be >= 1");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * k, 0.5 * x);
}

double chi2_critical(int k, double significance) {
  if (k < 1) throw InputError("degrees of freedom must be >= 1");
  if (!(significance > 0.0 && significance < 1.0)) throw InputError("significance must lie in (0, 1)");
  double lo = 0.0, hi = std::max(1.0, 2.0 * k);
  while (chi2_cdf(hi, k) < significance) hi *= 2.0;
  while (hi - lo > 1e-8 * hi) {
    const double mid = 0.5 * (lo + hi);
    (chi2_cdf(mid, k) < significance ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace fairsample
