#pragma once

// Slow, independent reference computations used to check the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fairsample/circuit.hpp"

namespace oracle {

using cd = std::complex<double>;
using Matrix = std::vector<std::vector<cd>>;

inline Matrix identity(std::size_t d) {
  Matrix m(d, std::vector<cd>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1.0;
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.size() * b.size(), std::vector<cd>(a.size() * b.size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k)
        for (std::size_t l = 0; l < b.size(); ++l) m[i * b.size() + k][j * b.size() + l] = a[i][j] * b[k][l];
  return m;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  const std::size_t d = a.size();
  Matrix m(d, std::vector<cd>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      if (a[i][k] != 0.0)
        for (std::size_t j = 0; j < d; ++j) m[i][j] += a[i][k] * b[k][j];
  return m;
}

inline Matrix single(const fairsample::Gate& g) {
  const double r = 1.0 / std::sqrt(2.0);
  const double pi = std::numbers::pi;
  using K = fairsample::GateKind;
  switch (g.kind) {
    case K::H: return {{r, r}, {r, -r}};
    case K::X: return {{0.0, 1.0}, {1.0, 0.0}};
    case K::T: return {{1.0, 0.0}, {0.0, std::polar(1.0, pi / 4)}};
    case K::Tdg: return {{1.0, 0.0}, {0.0, std::polar(1.0, -pi / 4)}};
    case K::PhaseShift: return {{1.0, 0.0}, {0.0, std::polar(1.0, pi * g.exponent)}};
    default: break;
  }
  return identity(2);
}

// Full 2^n matrix for one gate; qubit 0 is the leftmost tensor factor.
inline Matrix gate_matrix(const fairsample::Gate& g, int n) {
  const std::size_t d = std::size_t{1} << n;
  using K = fairsample::GateKind;
  if (g.arity() == 1) {
    Matrix m = {{1.0}};
    for (int q = 0; q < n; ++q) m = kron(m, q == g.qubits[0] ? single(g) : identity(2));
    return m;
  }
  const int a = g.qubits[0], b = g.qubits[1];
  auto bit = [&](std::size_t x, int q) { return (x >> (n - 1 - q)) & 1U; };
  Matrix m(d, std::vector<cd>(d, 0.0));
  for (std::size_t x = 0; x < d; ++x) {
    std::size_t y = x;
    cd phase = 1.0;
    if (g.kind == K::CNOT && bit(x, a)) y ^= std::size_t{1} << (n - 1 - b);
    if (g.kind == K::SWAP && bit(x, a) != bit(x, b))
      y ^= (std::size_t{1} << (n - 1 - a)) | (std::size_t{1} << (n - 1 - b));
    if (g.kind == K::CPhaseShift && bit(x, a) && bit(x, b)) phase = std::polar(1.0, std::numbers::pi * g.exponent);
    m[y][x] = phase;
  }
  return m;
}

inline Matrix circuit_unitary(const fairsample::Circuit& c) {
  Matrix u = identity(std::size_t{1} << c.num_wires());
  for (const auto& g : c.gates()) u = matmul(gate_matrix(g, c.num_wires()), u);
  return u;
}

// |<x|U|0>|^2 for every x.
inline std::vector<double> output_probabilities(const fairsample::Circuit& c) {
  const auto u = circuit_unitary(c);
  std::vector<double> p(u.size());
  for (std::size_t x = 0; x < u.size(); ++x) p[x] = std::norm(u[x][0]);
  return p;
}

// Energy -J z z - h z evaluated straight from a bitstring.
inline double energy(const std::string& bits, const std::vector<std::tuple<int, int, double>>& couplings,
                     const std::vector<std::pair<int, double>>& fields) {
  auto z = [&](int q) { return bits[static_cast<std::size_t>(q)] == '0' ? 1.0 : -1.0; };
  double e = 0.0;
  for (auto [i, j, J] : couplings) e -= J * z(i) * z(j);
  for (auto [i, h] : fields) e -= h * z(i);
  return e;
}

inline std::string bits_of(std::uint64_t x, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q)
    if ((x >> (n - 1 - q)) & 1U) s[static_cast<std::size_t>(q)] = '1';
  return s;
}

// Chi-square density with k degrees of freedom.
inline double chi2_pdf(double x, int k) {
  if (x <= 0.0) return 0.0;
  const double h = 0.5 * k;
  return std::exp((h - 1.0) * std::log(x) - 0.5 * x - h * std::log(2.0) - std::lgamma(h));
}

// Upper tail by composite Simpson after the substitution x = t^2, which removes the
// k = 1 singularity at zero.
inline double chi2_upper_tail(double c, int k, int steps = 200000) {
  const double t0 = std::sqrt(c), t1 = std::sqrt(c + 400.0 + 40.0 * k);
  const double h = (t1 - t0) / steps;
  auto f = [&](double t) { return chi2_pdf(t * t, k) * 2.0 * t; };
  double s = f(t0) + f(t1);
  for (int i = 1; i < steps; ++i) s += f(t0 + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Labeled embeddings by trying every injective assignment.
inline std::vector<std::vector<int>> brute_force_embeddings(int backend_qubits,
                                                            const std::vector<std::pair<int, int>>& backend_edges,
                                                            int k, const std::vector<std::pair<int, int>>& arch_edges) {
  std::set<std::pair<int, int>> e;
  for (auto [a, b] : backend_edges) {
    e.insert({a, b});
    e.insert({b, a});
  }
  std::vector<std::vector<int>> out;
  std::vector<int> pool(static_cast<std::size_t>(backend_qubits));
  for (int i = 0; i < backend_qubits; ++i) pool[static_cast<std::size_t>(i)] = i;
  // Enumerate k-permutations via sorted subsets and their permutations.
  std::vector<bool> pick(static_cast<std::size_t>(backend_qubits), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<int> subset;
    for (int i = 0; i < backend_qubits; ++i)
      if (pick[static_cast<std::size_t>(i)]) subset.push_back(i);
    std::sort(subset.begin(), subset.end());
    do {
      bool ok = true;
      for (auto [a, b] : arch_edges)
        ok = ok && e.count({subset[static_cast<std::size_t>(a)], subset[static_cast<std::size_t>(b)]});
      if (ok) out.push_back(subset);
    } while (std::next_permutation(subset.begin(), subset.end()));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

}  // namespace oracle
