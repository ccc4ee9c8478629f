#include "fairsample/mitigation.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "fairsample/error.hpp"
#include "fairsample/random.hpp"
#include "fairsample/simulator.hpp"

namespace fairsample {
namespace {

std::string bits_of(std::size_t index, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int k = 0; k < width; ++k)
    if ((index >> (width - 1 - k)) & 1U) s[static_cast<std::size_t>(k)] = '1';
  return s;
}

std::size_t index_of(const std::string& bits) {
  std::size_t idx = 0;
  for (char c : bits) idx = (idx << 1) | static_cast<std::size_t>(c == '1');
  return idx;
}

void check_size(int n) {
  if (n < 1 || n > kMaxCalibrationQubits) throw CapabilityError("calibration supports 1 to 6 qubits");
}

Eigen::MatrixXd as_eigen(const CalibrationMatrix& cal) {
  const auto d = static_cast<Eigen::Index>(cal.dim());
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = cal.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return m;
}

}  // namespace

CalibrationMatrix build_calibration_matrix(int n, const NoiseModel& noise, long long shots_per_state,
                                           std::uint64_t seed) {
  check_size(n);
  if (shots_per_state < 1) throw InputError("calibration needs at least one shot per state");
  NoiseModel prep_noise = noise;
  prep_noise.instance_depolarizing.clear();
  CalibrationMatrix cal{n, std::vector<double>(std::size_t{1} << (2 * n), 0.0)};
  for (std::size_t j = 0; j < cal.dim(); ++j) {
    Circuit prep(n);
    for (int w = 0; w < n; ++w)
      if ((j >> (n - 1 - w)) & 1U) prep.append(Gate::x(w));
    const auto h = sample(prep, &prep_noise, shots_per_state, derive_seed(seed, j));
    for (const auto& [bits, c] : h.counts()) cal.at(index_of(bits), j) = c / h.total();
  }
  return cal;
}

CalibrationMatrix exact_calibration_matrix(int n, const NoiseModel& noise) {
  check_size(n);
  noise.validate();
  const double p_x = noise.depolarizing(static_cast<std::size_t>(-1), GateKind::X);
  const double flip_x = std::pow(std::sin(noise.coherent_overrotation / 2), 2);
  CalibrationMatrix cal{n, std::vector<double>(std::size_t{1} << (2 * n), 0.0)};
  for (std::size_t j = 0; j < cal.dim(); ++j) {
    // Per-wire probability of reading 1, for the prepared branch and the uniform branch.
    std::vector<double> one(static_cast<std::size_t>(n));
    std::vector<double> one_uniform(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) {
      const auto r = noise.readout_for(w);
      double p1 = 0.0;
      if ((j >> (n - 1 - w)) & 1U) {
        // Over-rotated X leaves |0> with probability sin^2(delta/2); X and Y errors flip.
        p1 = 1.0 - flip_x;
        p1 = p1 * (1.0 - 2.0 * p_x / 3.0) + (1.0 - p1) * (2.0 * p_x / 3.0);
      }
      one[static_cast<std::size_t>(w)] = p1 * (1.0 - r.p10) + (1.0 - p1) * r.p01;
      one_uniform[static_cast<std::size_t>(w)] = 0.5 * (1.0 - r.p10) + 0.5 * r.p01;
    }
    for (std::size_t i = 0; i < cal.dim(); ++i) {
      double a = 1.0;
      double b = 1.0;
      for (int w = 0; w < n; ++w) {
        const bool bit = (i >> (n - 1 - w)) & 1U;
        a *= bit ? one[static_cast<std::size_t>(w)] : 1.0 - one[static_cast<std::size_t>(w)];
        b *= bit ? one_uniform[static_cast<std::size_t>(w)] : 1.0 - one_uniform[static_cast<std::size_t>(w)];
      }
      cal.at(i, j) = (1.0 - noise.global_depolarizing) * a + noise.global_depolarizing * b;
    }
  }
  return cal;
}

double condition_number(const CalibrationMatrix& cal) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(as_eigen(cal));
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  return smin == 0.0 ? INFINITY : s(0) / smin;
}

CountsHistogram mitigate(const CountsHistogram& counts, const CalibrationMatrix& cal, double max_condition) {
  if (!counts.empty() && counts.width() != cal.n)
    throw InputError("histogram width does not match calibration register size");
  const double cond = condition_number(cal);
  if (!(cond <= max_condition)) {
    std::ostringstream os;
    os << "calibration matrix is ill-conditioned (condition number estimate " << cond << ")";
    throw NumericError(os.str());
  }
  const auto d = static_cast<Eigen::Index>(cal.dim());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
  for (const auto& [bits, v] : counts.counts()) c(static_cast<Eigen::Index>(index_of(bits))) = v;
  Eigen::VectorXd x = as_eigen(cal).partialPivLu().solve(c);
  double positive = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (x(i) < 0.0) x(i) = 0.0;
    positive += x(i);
  }
  CountsHistogram out;
  if (positive > 0.0) {
    const double scale = counts.total() / positive;
    for (Eigen::Index i = 0; i < d; ++i)
      if (x(i) > 0.0) out.add(bits_of(static_cast<std::size_t>(i), cal.n), x(i) * scale);
  }
  out.add_discarded(counts.discarded());
  return out;
}

std::string to_csv(const CalibrationMatrix& cal) {
  std::ostringstream os;
  os.precision(17);
  os << "measured";
  for (std::size_t j = 0; j < cal.dim(); ++j) os << ',' << bits_of(j, cal.n);
  os << '\n';
  for (std::size_t i = 0; i < cal.dim(); ++i) {
    os << bits_of(i, cal.n);
    for (std::size_t j = 0; j < cal.dim(); ++j) os << ',' << cal.at(i, j);
    os << '\n';
  }
  return os.str();
}

CalibrationMatrix calibration_from_csv(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  if (rows.size() < 3) throw InputError("calibration CSV needs a header and at least two rows");
  const std::size_t dim = rows.size() - 1;
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim) throw InputError("calibration CSV row count is not a power of two");
  check_size(n);
  CalibrationMatrix cal{n, std::vector<double>(dim * dim, 0.0)};
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& r = rows[i + 1];
    if (r.size() != dim + 1) throw InputError("calibration CSV row " + std::to_string(i + 2) + " has the wrong width");
    for (std::size_t j = 0; j < dim; ++j) {
      try {
        cal.at(i, j) = std::stod(r[j + 1]);
      } catch (const std::exception&) {
        throw InputError("calibration CSV has a non-numeric cell on row " + std::to_string(i + 2));
      }
    }
  }
  for (std::size_t j = 0; j < dim; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += cal.at(i, j);
    if (std::abs(s - 1.0) > 1e-9) throw InputError("calibration CSV column " + std::to_string(j) + " does not sum to 1");
  }
  return cal;
}

}  // namespace fairsample
