#include "fairsample/trend.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "fairsample/error.hpp"

namespace fairsample {

Predictor predictor_from_name(std::string_view name) {
  if (name == "gsp") return Predictor::Gsp;
  if (name == "aggregate_error") return Predictor::AggregateError;
  throw InputError("unknown predictor '" + std::string(name) + "'");
}

std::string predictor_name(Predictor p) { return p == Predictor::Gsp ? "gsp" : "aggregate_error"; }

double TrendFit::evaluate(double x) const {
  double y = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) y = y * x + *it;
  return y;
}

int TrendFit::slope_sign() const {
  double slope = coefficients.size() > 1 ? coefficients[1] : 0.0;
  if (degree == 2 && x_max > x_min) slope = (evaluate(x_max) - evaluate(x_min)) / (x_max - x_min);
  if (std::fabs(slope) < 1e-12) return 0;
  return slope > 0 ? 1 : -1;
}

std::vector<double> fit_polynomial(const std::vector<double>& x, const std::vector<double>& y, int degree) {
  if (degree < 1 || degree > 2) throw InputError("degree must be 1 or 2");
  if (x.size() != y.size()) throw InputError("x and y lengths differ");
  if (x.size() < static_cast<std::size_t>(degree) + 2) throw InputError("not enough points for the fit");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(x.size()), degree + 1);
  Eigen::VectorXd b(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1.0;
    for (int d = 0; d <= degree; ++d, p *= x[i]) a(static_cast<Eigen::Index>(i), d) = p;
    b(static_cast<Eigen::Index>(i)) = y[i];
  }
  const auto qr = a.colPivHouseholderQr();
  if (qr.rank() < degree + 1) throw NumericError("predictor values are degenerate for this degree");
  const Eigen::VectorXd c = qr.solve(b);
  return {c.data(), c.data() + c.size()};
}

TrendFit fit_trend(const std::vector<ResultRow>& rows, Predictor predictor, int degree) {
  TrendFit fit;
  fit.predictor = predictor;
  fit.degree = degree;
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    if (r.nsrfs.capped()) {
      ++fit.excluded_capped;
      continue;
    }
    const auto& x = predictor == Predictor::Gsp ? r.gsp : r.aggregate_error;
    if (!r.error.empty() || r.nsrfs.status != NsrfsResult::Status::Value || !x || r.nsrfs.shots < 1) {
      ++fit.excluded_other;
      continue;
    }
    xs.push_back(*x);
    ys.push_back(std::log10(static_cast<double>(r.nsrfs.shots)));
  }
  fit.points = static_cast<int>(xs.size());
  if (fit.points < degree + 2)
    throw InputError("trend fit needs at least " + std::to_string(degree + 2) + " rows with finite NSRFS, got " +
                     std::to_string(fit.points));
  fit.coefficients = fit_polynomial(xs, ys, degree);
  fit.x_min = *std::min_element(xs.begin(), xs.end());
  fit.x_max = *std::max_element(xs.begin(), xs.end());
  return fit;
}

}  // namespace fairsample
