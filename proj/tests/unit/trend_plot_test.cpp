#include <gtest/gtest.h>

#include <cmath>

#include "fairsample/error.hpp"
#include "fairsample/plot.hpp"
#include "fairsample/trend.hpp"

using namespace fairsample;

namespace {

ResultRow row(double x, long long nsrfs, bool capped = false) {
  ResultRow r;
  r.problem = "e";
  r.architecture = "2L";
  r.gsp = x;
  r.aggregate_error = 1.0 - x;
  r.nsrfs = capped ? NsrfsResult{NsrfsResult::Status::Capped, 0} : NsrfsResult{NsrfsResult::Status::Value, nsrfs};
  return r;
}

}  // namespace

TEST(Trend, ExactLogLinearData) {
  std::vector<ResultRow> rows;
  for (double x : {0.5, 1.0, 1.5, 2.0}) rows.push_back(row(x, std::llround(std::pow(10.0, 2 * x))));
  const auto fit = fit_trend(rows, Predictor::Gsp, 1);
  ASSERT_EQ(fit.coefficients.size(), 2u);
  EXPECT_NEAR(fit.coefficients[1], 2.0, 1e-9);
  EXPECT_NEAR(fit.coefficients[0], 0.0, 1e-9);
  EXPECT_EQ(fit.slope_sign(), 1);
}

TEST(Trend, ConstantDataHasZeroSlope) {
  std::vector<ResultRow> rows;
  for (double x : {0.1, 0.2, 0.3, 0.4}) rows.push_back(row(x, 500));
  const auto fit = fit_trend(rows, Predictor::AggregateError, 1);
  EXPECT_NEAR(fit.coefficients[1], 0.0, 1e-12);
  EXPECT_EQ(fit.slope_sign(), 0);
}

TEST(Trend, QuadraticAndCappedRows) {
  std::vector<ResultRow> rows;
  for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) rows.push_back(row(x, std::llround(std::pow(10.0, 4 + x * x))));
  rows.push_back(row(0.3, 0, true));
  const auto fit = fit_trend(rows, Predictor::Gsp, 2);
  EXPECT_EQ(fit.excluded_capped, 1);
  EXPECT_EQ(fit.points, 5);
  EXPECT_NEAR(fit.coefficients[2], 1.0, 1e-3);
}

TEST(Trend, NeedsEnoughRows) {
  EXPECT_THROW(fit_trend({row(0.1, 10), row(0.2, 20)}, Predictor::Gsp, 1), InputError);
  EXPECT_THROW(fit_trend({row(0.1, 10), row(0.2, 20), row(0.3, 30)}, Predictor::Gsp, 3), InputError);
}

TEST(Plot, DeterministicSvgAndCsv) {
  std::vector<ResultRow> rows;
  for (double x : {0.2, 0.4, 0.6, 0.8}) rows.push_back(row(x, std::llround(std::pow(10.0, 1 + x))));
  rows.push_back(row(0.5, 0, true));
  PlotSpec spec;
  spec.title = "e on 2L";
  const auto a = emit_plot(rows, spec);
  const auto b = emit_plot(rows, spec);
  EXPECT_EQ(a.svg, b.svg);
  EXPECT_EQ(a.csv, b.csv);
  EXPECT_NE(a.svg.find("<svg"), std::string::npos);
  EXPECT_NE(a.svg.find("<polyline"), std::string::npos);
  // Header plus four finite rows; the capped row is not plotted.
  EXPECT_EQ(std::count(a.csv.begin(), a.csv.end(), '\n'), 5);
  EXPECT_THROW(emit_plot({}, spec), InputError);
}
