#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fairsample/trend.hpp"

namespace fairsample {

struct PlotSpec {
  Predictor predictor = Predictor::Gsp;
  std::optional<int> fit_degree = 1;  // no overlay when empty or when the fit is impossible
  std::string title;
  int width = 640;
  int height = 480;
};

struct PlotArtifacts {
  std::string svg;
  std::string csv;  // columns: problem,architecture,backend,embedding,seed,x,nsrfs
  std::optional<TrendFit> fit;
};

// Scatter of NSRFS (log scale) against the predictor. CAPPED and failed rows are skipped.
PlotArtifacts emit_plot(const std::vector<ResultRow>& rows, const PlotSpec& spec);
// Writes <stem>.svg and <stem>.csv into `dir`.
PlotArtifacts write_plot(const std::vector<ResultRow>& rows, const PlotSpec& spec, const std::filesystem::path& dir,
                         const std::string& stem);

}  // namespace fairsample
