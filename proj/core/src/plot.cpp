#include "fairsample/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fairsample/error.hpp"

namespace fairsample {
namespace {

std::string num(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

PlotArtifacts emit_plot(const std::vector<ResultRow>& rows, const PlotSpec& spec) {
  if (rows.empty()) throw InputError("nothing to plot");
  struct Point {
    const ResultRow* row;
    double x;
    double y;  // log10 nsrfs
  };
  std::vector<Point> pts;
  for (const auto& r : rows) {
    const auto& x = spec.predictor == Predictor::Gsp ? r.gsp : r.aggregate_error;
    if (r.error.empty() && x && r.nsrfs.status == NsrfsResult::Status::Value && r.nsrfs.shots > 0)
      pts.push_back({&r, *x, std::log10(static_cast<double>(r.nsrfs.shots))});
  }

  PlotArtifacts out;
  if (spec.fit_degree) {
    try {
      out.fit = fit_trend(rows, spec.predictor, *spec.fit_degree);
    } catch (const Error&) {
      out.fit.reset();
    }
  }

  std::ostringstream csv;
  csv << "problem,architecture,backend,embedding,seed,x,nsrfs\n";
  for (const auto& p : pts)
    csv << p.row->problem << ',' << p.row->architecture << ',' << p.row->backend << ',' << p.row->embedding << ','
        << p.row->seed << ',' << num(p.x, 6) << ',' << p.row->nsrfs.shots << '\n';
  out.csv = csv.str();

  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = spec.width - left - right, ph = spec.height - top - bottom;
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 1.0;
  if (!pts.empty()) {
    auto [xmin, xmax] = std::minmax_element(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.x < b.x; });
    auto [ymin, ymax] = std::minmax_element(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.y < b.y; });
    x0 = xmin->x;
    x1 = xmax->x;
    if (x1 - x0 < 1e-9) {
      x0 -= 0.05;
      x1 += 0.05;
    }
    y0 = std::floor(ymin->y);
    y1 = std::max(y0 + 1.0, std::ceil(ymax->y));
  }
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::vector<std::string> groups;
  for (const auto& p : pts) {
    const std::string g = p.row->problem + " " + p.row->architecture;
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(g);
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty())
    svg << "<text x=\"" << num(spec.width / 2.0) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << xml_escape(spec.title) << "</text>\n";
  svg << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(y0); e <= static_cast<int>(y1); ++e) {
    svg << "<line x1=\"" << num(left - 4) << "\" y1=\"" << num(sy(e)) << "\" x2=\"" << num(left) << "\" y2=\""
        << num(sy(e)) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(left - 8) << "\" y=\"" << num(sy(e) + 4) << "\" text-anchor=\"end\">1e" << e
        << "</text>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double x = x0 + (x1 - x0) * t / 4.0;
    svg << "<line x1=\"" << num(sx(x)) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(sx(x)) << "\" y2=\""
        << num(top + ph + 4) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(sx(x)) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">" << num(x, 3)
        << "</text>\n";
  }
  svg << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(spec.height - 10.0) << "\" text-anchor=\"middle\">"
      << (spec.predictor == Predictor::Gsp ? "ground-state probability" : "aggregate error") << "</text>\n";
  svg << "<text transform=\"translate(16," << num(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << "shots to reject fair sampling</text>\n";
  for (const auto& p : pts) {
    const auto g = std::find(groups.begin(), groups.end(), p.row->problem + " " + p.row->architecture) - groups.begin();
    svg << "<circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y)) << "\" r=\"3\" fill=\""
        << kPalette[static_cast<std::size_t>(g) % std::size(kPalette)] << "\"/>\n";
  }
  if (out.fit) {
    svg << "<polyline fill=\"none\" stroke=\"black\" points=\"";
    for (int i = 0; i <= 50; ++i) {
      const double x = out.fit->x_min + (out.fit->x_max - out.fit->x_min) * i / 50.0;
      const double y = std::clamp(out.fit->evaluate(x), y0, y1);
      svg << (i ? " " : "") << num(sx(x)) << ',' << num(sy(y));
    }
    svg << "\"/>\n";
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double y = top + 14.0 + 16.0 * static_cast<double>(g);
    svg << "<circle cx=\"" << num(left + pw - 80) << "\" cy=\"" << num(y - 4) << "\" r=\"3\" fill=\""
        << kPalette[g % std::size(kPalette)] << "\"/>\n";
    svg << "<text x=\"" << num(left + pw - 72) << "\" y=\"" << num(y) << "\">" << xml_escape(groups[g]) << "</text>\n";
  }
  svg << "</svg>\n";
  out.svg = svg.str();
  return out;
}

PlotArtifacts write_plot(const std::vector<ResultRow>& rows, const PlotSpec& spec, const std::filesystem::path& dir,
                         const std::string& stem) {
  auto art = emit_plot(rows, spec);
  std::filesystem::create_directories(dir);
  std::ofstream(dir / (stem + ".svg")) << art.svg;
  std::ofstream(dir / (stem + ".csv")) << art.csv;
  return art;
}

}  // namespace fairsample
