#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "fairsample/circuit.hpp"
#include "fairsample/histogram.hpp"
#include "fairsample/ising.hpp"
#include "fairsample/noise.hpp"

namespace fairsample {

inline constexpr int kMaxSimulationWires = 24;

// Amplitudes indexed with wire 0 as the most significant bit.
class Statevector {
 public:
  explicit Statevector(int n);

  int num_wires() const noexcept { return n_; }
  const std::vector<std::complex<double>>& amplitudes() const noexcept { return amps_; }
  std::vector<std::complex<double>>& amplitudes() noexcept { return amps_; }

  // Ideal gate, or with the coherent parts of `noise` folded into the unitary.
  void apply(const Gate& g);
  void apply(const Gate& g, double overrotation, double zz_after_cnot);
  // pauli: 1 = X, 2 = Y, 3 = Z
  void apply_pauli(int wire, int pauli);

  std::vector<double> probabilities() const;
  double norm_squared() const;

 private:
  std::uint64_t mask(int wire) const { return std::uint64_t{1} << (n_ - 1 - wire); }
  void apply_1q(int wire, const std::complex<double> m[4]);
  void apply_phase(int wire, std::complex<double> phase);
  void apply_cnot(int c, int t);
  void apply_zz(int a, int b, double theta);

  int n_;
  std::vector<std::complex<double>> amps_;
};

Statevector simulate(const Circuit& circuit);
// Coherent error terms of `noise` applied deterministically; stochastic terms ignored.
Statevector simulate(const Circuit& circuit, const NoiseModel& noise);

double expectation(const Statevector& state, const IsingModel& model);
double expectation(const std::vector<double>& probs, const IsingModel& model);

// Distribution over measured output bitstrings (measured_wires order), conditioned on
// every ancilla reading 0. `retained` is the post-selection probability.
struct MeasuredDistribution {
  int width = 0;
  std::vector<double> probs;
  double retained = 1.0;
};
MeasuredDistribution measured_distribution(const Circuit& circuit, const std::vector<double>& wire_probs);

// Reorder output bits so position l holds logical label l. Labels must cover 0..width-1.
std::vector<double> to_logical_order(const std::vector<double>& probs, const std::vector<int>& labels);

// Post-selected distribution indexed by logical label order.
std::vector<double> logical_distribution(const Circuit& circuit);
std::vector<double> logical_distribution(const Circuit& circuit, const NoiseModel& coherent);

// Shots from |0...0>. Without noise (or with a noiseless model) samples |amplitudes|^2.
// Results depend only on (circuit, noise, shots, seed), not on `jobs`.
CountsHistogram sample(const Circuit& circuit, const NoiseModel* noise, long long shots,
                       std::uint64_t seed, int jobs = 1);

// Expected counts (shots * probability) with no randomness; used for exact noiseless cells.
CountsHistogram expected_counts(const Circuit& circuit, long long shots);

}  // namespace fairsample
