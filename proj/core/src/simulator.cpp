#include "fairsample/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "fairsample/error.hpp"
#include "fairsample/random.hpp"

namespace fairsample {
namespace {

using cd = std::complex<double>;
constexpr long long kShotBlock = 4096;
constexpr int kPrefixCacheWires = 12;

std::string bits_of(std::uint64_t index, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int k = 0; k < width; ++k)
    if ((index >> (width - 1 - k)) & 1U) s[static_cast<std::size_t>(k)] = '1';
  return s;
}

std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) cdf[i] = acc += p[i];
  return cdf;
}

std::uint64_t draw(const std::vector<double>& cdf, double u) {
  const double x = u * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
  if (it == cdf.end()) --it;
  // Skip zero-probability entries sharing the same cumulative value.
  return static_cast<std::uint64_t>(it - cdf.begin());
}

template <typename Fn>
void run_blocks(long long blocks, int jobs, Fn&& fn) {
  if (jobs <= 1 || blocks <= 1) {
    for (long long b = 0; b < blocks; ++b) fn(b);
    return;
  }
  std::atomic<long long> next{0};
  std::vector<std::thread> pool;
  const int workers = static_cast<int>(std::min<long long>(jobs, blocks));
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (long long b = next++; b < blocks; b = next++) fn(b);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

Statevector::Statevector(int n) : n_(n) {
  if (n < 0) throw InputError("wire count must be nonnegative");
  if (n > kMaxSimulationWires) throw CapabilityError("statevector simulation limited to 24 wires");
  amps_.assign(std::size_t{1} << n, cd{0.0, 0.0});
  amps_[0] = 1.0;
}

void Statevector::apply_1q(int wire, const cd m[4]) {
  const std::uint64_t bit = mask(wire);
  const std::uint64_t dim = amps_.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const cd a = amps_[i];
    const cd b = amps_[i | bit];
    amps_[i] = m[0] * a + m[1] * b;
    amps_[i | bit] = m[2] * a + m[3] * b;
  }
}

void Statevector::apply_phase(int wire, cd phase) {
  const std::uint64_t bit = mask(wire);
  for (std::uint64_t i = 0; i < amps_.size(); ++i)
    if (i & bit) amps_[i] *= phase;
}

void Statevector::apply_cnot(int c, int t) {
  const std::uint64_t cb = mask(c);
  const std::uint64_t tb = mask(t);
  for (std::uint64_t i = 0; i < amps_.size(); ++i)
    if ((i & cb) && !(i & tb)) std::swap(amps_[i], amps_[i | tb]);
}

void Statevector::apply_zz(int a, int b, double theta) {
  const std::uint64_t ab = mask(a);
  const std::uint64_t bb = mask(b);
  const cd even = std::polar(1.0, -theta / 2);
  const cd odd = std::polar(1.0, theta / 2);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) amps_[i] *= (((i & ab) != 0) != ((i & bb) != 0)) ? odd : even;
}

void Statevector::apply(const Gate& g) { apply(g, 0.0, 0.0); }

void Statevector::apply(const Gate& g, double overrotation, double zz_after_cnot) {
  const int a = g.qubits[0];
  const int b = g.qubits[1];
  if (a < 0 || a >= n_ || (g.arity() == 2 && (b < 0 || b >= n_)))
    throw InputError("gate wire outside the statevector");
  const double pi = std::numbers::pi;
  const cd I{0.0, 1.0};
  switch (g.kind) {
    case GateKind::H: {
      if (overrotation == 0.0) {
        const double r = std::numbers::sqrt2 / 2;
        const cd m[4] = {r, r, r, -r};
        apply_1q(a, m);
      } else {
        // Rotation by pi + delta about (x + z) / sqrt(2); equals -i H at delta = 0.
        const double th = pi + overrotation;
        const double c = std::cos(th / 2);
        const double s = std::sin(th / 2) / std::numbers::sqrt2;
        const cd m[4] = {c - I * s, -I * s, -I * s, c + I * s};
        apply_1q(a, m);
      }
      break;
    }
    case GateKind::X: {
      if (overrotation == 0.0) {
        const cd m[4] = {0.0, 1.0, 1.0, 0.0};
        apply_1q(a, m);
      } else {
        const double th = pi + overrotation;
        const double c = std::cos(th / 2);
        const double s = std::sin(th / 2);
        const cd m[4] = {c, -I * s, -I * s, c};
        apply_1q(a, m);
      }
      break;
    }
    case GateKind::T: apply_phase(a, std::polar(1.0, pi / 4 + overrotation)); break;
    case GateKind::Tdg: apply_phase(a, std::polar(1.0, -pi / 4 + overrotation)); break;
    case GateKind::PhaseShift: apply_phase(a, std::polar(1.0, pi * g.exponent + overrotation)); break;
    case GateKind::CPhaseShift: {
      const cd ph = std::polar(1.0, pi * g.exponent + overrotation);
      const std::uint64_t both = mask(a) | mask(b);
      for (std::uint64_t i = 0; i < amps_.size(); ++i)
        if ((i & both) == both) amps_[i] *= ph;
      break;
    }
    case GateKind::CNOT:
      apply_cnot(a, b);
      if (zz_after_cnot != 0.0) apply_zz(a, b, zz_after_cnot);
      break;
    case GateKind::SWAP: {
      const std::uint64_t ab = mask(a);
      const std::uint64_t bb = mask(b);
      for (std::uint64_t i = 0; i < amps_.size(); ++i)
        if ((i & ab) && !(i & bb)) std::swap(amps_[i], amps_[(i & ~ab) | bb]);
      break;
    }
  }
}

void Statevector::apply_pauli(int wire, int pauli) {
  const std::uint64_t bit = mask(wire);
  if (pauli == 1 || pauli == 2) {
    for (std::uint64_t i = 0; i < amps_.size(); ++i)
      if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
  }
  // Y = i X Z; the global phase is dropped.
  if (pauli == 2 || pauli == 3) apply_phase(wire, cd{-1.0, 0.0});
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

double Statevector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

Statevector simulate(const Circuit& circuit) {
  Statevector sv(circuit.num_wires());
  for (const auto& g : circuit.gates()) sv.apply(g);
  return sv;
}

Statevector simulate(const Circuit& circuit, const NoiseModel& noise) {
  Statevector sv(circuit.num_wires());
  for (const auto& g : circuit.gates()) sv.apply(g, noise.coherent_overrotation, noise.zz_after_cnot);
  return sv;
}

double expectation(const std::vector<double>& probs, const IsingModel& model) {
  if (probs.size() != (std::size_t{1} << model.n())) throw InputError("distribution size does not match model");
  double e = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (probs[i] != 0.0) e += probs[i] * model.energy_of_index(i);
  return e;
}

double expectation(const Statevector& state, const IsingModel& model) {
  if (state.num_wires() != model.n()) throw InputError("statevector size does not match model");
  return expectation(state.probabilities(), model);
}

MeasuredDistribution measured_distribution(const Circuit& circuit, const std::vector<double>& wire_probs) {
  const int n = circuit.num_wires();
  if (wire_probs.size() != (std::size_t{1} << n)) throw InputError("distribution size does not match circuit");
  std::uint64_t anc = 0;
  for (int w : circuit.ancilla_wires()) anc |= std::uint64_t{1} << (n - 1 - w);
  const auto& measured = circuit.measured_wires();
  const int width = static_cast<int>(measured.size());
  MeasuredDistribution out;
  out.width = width;
  out.probs.assign(std::size_t{1} << width, 0.0);
  double kept = 0.0;
  for (std::uint64_t i = 0; i < wire_probs.size(); ++i) {
    if (wire_probs[i] == 0.0 || (i & anc)) continue;
    std::uint64_t key = 0;
    for (int w : measured) key = (key << 1) | ((i >> (n - 1 - w)) & 1U);
    out.probs[key] += wire_probs[i];
    kept += wire_probs[i];
  }
  out.retained = kept;
  if (kept > 0.0)
    for (auto& p : out.probs) p /= kept;
  return out;
}

std::vector<double> to_logical_order(const std::vector<double>& probs, const std::vector<int>& labels) {
  const int width = static_cast<int>(labels.size());
  if (probs.size() != (std::size_t{1} << width)) throw InputError("label list does not match distribution width");
  std::vector<char> seen(static_cast<std::size_t>(width), 0);
  for (int l : labels) {
    if (l < 0 || l >= width || seen[static_cast<std::size_t>(l)]) throw InputError("measured labels must be a permutation");
    seen[static_cast<std::size_t>(l)] = 1;
  }
  std::vector<double> out(probs.size(), 0.0);
  for (std::uint64_t raw = 0; raw < probs.size(); ++raw) {
    std::uint64_t logical = 0;
    for (int k = 0; k < width; ++k)
      if ((raw >> (width - 1 - k)) & 1U) logical |= std::uint64_t{1} << (width - 1 - labels[static_cast<std::size_t>(k)]);
    out[logical] += probs[raw];
  }
  return out;
}

std::vector<double> logical_distribution(const Circuit& circuit) {
  auto md = measured_distribution(circuit, simulate(circuit).probabilities());
  if (md.retained <= 0.0) throw NumericError("post-selection keeps no probability mass");
  return to_logical_order(md.probs, circuit.measured_labels());
}

std::vector<double> logical_distribution(const Circuit& circuit, const NoiseModel& coherent) {
  auto md = measured_distribution(circuit, simulate(circuit, coherent).probabilities());
  if (md.retained <= 0.0) throw NumericError("post-selection keeps no probability mass");
  return to_logical_order(md.probs, circuit.measured_labels());
}

bool equivalent(const Circuit& c1, const Circuit& c2, double tol) {
  const auto p1 = logical_distribution(c1);
  const auto p2 = logical_distribution(c2);
  if (p1.size() != p2.size()) throw InputError("circuits measure different numbers of logical qubits");
  for (std::size_t i = 0; i < p1.size(); ++i)
    if (std::abs(p1[i] - p2[i]) > tol) return false;
  return true;
}

CountsHistogram expected_counts(const Circuit& circuit, long long shots) {
  if (shots < 1) throw InputError("shots must be at least 1");
  auto md = measured_distribution(circuit, simulate(circuit).probabilities());
  CountsHistogram h;
  const double kept = static_cast<double>(shots) * md.retained;
  for (std::uint64_t i = 0; i < md.probs.size(); ++i)
    if (md.probs[i] > 0.0) h.add(bits_of(i, md.width), kept * md.probs[i]);
  h.add_discarded(shots - std::llround(kept));
  return h;
}

namespace {

// Per-shot Monte Carlo trajectories. The error-free trajectory is shared by all shots
// that draw no stochastic gate error.
class TrajectorySampler {
 public:
  TrajectorySampler(const Circuit& c, const NoiseModel& noise) : c_(c), noise_(noise), n_(c.num_wires()) {
    const auto& gates = c.gates();
    rates_.resize(gates.size());
    for (std::size_t g = 0; g < gates.size(); ++g) rates_[g] = noise.depolarizing(g, gates[g].kind);
    gate_noise_ = noise.has_gate_noise();
    Statevector sv(n_);
    cache_prefix_ = gate_noise_ && n_ <= kPrefixCacheWires;
    for (const auto& g : gates) {
      sv.apply(g, noise.coherent_overrotation, noise.zz_after_cnot);
      if (cache_prefix_) prefix_.push_back(sv);
    }
    clean_cdf_ = cumulative(sv.probabilities());
    for (int w = 0; w < n_; ++w) readout_.push_back(noise.readout_for(w));
    for (int w : c.ancilla_wires()) ancilla_mask_ |= bit(w);
  }

  CountsHistogram run(long long shots, std::uint64_t seed) const {
    Rng rng(seed);
    std::vector<std::pair<std::size_t, int>> errors;
    std::vector<long long> tally(std::size_t{1} << c_.measured_wires().size(), 0);
    long long discarded = 0;
    const std::uint64_t dim = std::uint64_t{1} << n_;
    for (long long s = 0; s < shots; ++s) {
      errors.clear();
      if (gate_noise_) {
        for (std::size_t g = 0; g < rates_.size(); ++g) {
          if (rates_[g] > 0.0 && rng.uniform() < rates_[g]) {
            const int choices = c_.gates()[g].arity() == 2 ? 15 : 3;
            errors.emplace_back(g, 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(choices))));
          }
        }
      }
      std::uint64_t outcome = errors.empty() ? draw(clean_cdf_, rng.uniform()) : noisy_outcome(errors, rng);
      if (noise_.global_depolarizing > 0.0 && rng.uniform() < noise_.global_depolarizing) outcome = rng.below(dim);
      for (int w = 0; w < n_; ++w) {
        const auto& r = readout_[static_cast<std::size_t>(w)];
        const bool one = outcome & bit(w);
        const double p = one ? r.p10 : r.p01;
        if (p > 0.0 && rng.uniform() < p) outcome ^= bit(w);
      }
      if (outcome & ancilla_mask_) {
        ++discarded;
        continue;
      }
      std::uint64_t key = 0;
      for (int w : c_.measured_wires()) key = (key << 1) | ((outcome & bit(w)) ? 1U : 0U);
      ++tally[key];
    }
    CountsHistogram h;
    const int width = static_cast<int>(c_.measured_wires().size());
    for (std::uint64_t k = 0; k < tally.size(); ++k)
      if (tally[k] > 0) h.add(bits_of(k, width), static_cast<double>(tally[k]));
    h.add_discarded(discarded);
    return h;
  }

 private:
  std::uint64_t bit(int w) const { return std::uint64_t{1} << (n_ - 1 - w); }

  void apply_error(Statevector& sv, std::size_t g, int code) const {
    const auto& gate = c_.gates()[g];
    if (gate.arity() == 1) {
      sv.apply_pauli(gate.qubits[0], code);
    } else {
      if (code / 4) sv.apply_pauli(gate.qubits[0], code / 4);
      if (code % 4) sv.apply_pauli(gate.qubits[1], code % 4);
    }
  }

  std::uint64_t noisy_outcome(const std::vector<std::pair<std::size_t, int>>& errors, Rng& rng) const {
    const auto& gates = c_.gates();
    std::size_t start = errors.front().first;
    Statevector sv(n_);
    if (cache_prefix_) {
      sv = prefix_[start];
    } else {
      for (std::size_t g = 0; g <= start; ++g) sv.apply(gates[g], noise_.coherent_overrotation, noise_.zz_after_cnot);
    }
    std::size_t e = 0;
    for (std::size_t g = start; g < gates.size(); ++g) {
      if (g > start) sv.apply(gates[g], noise_.coherent_overrotation, noise_.zz_after_cnot);
      while (e < errors.size() && errors[e].first == g) apply_error(sv, g, errors[e++].second);
    }
    const double u = rng.uniform();
    double acc = 0.0;
    const auto& amps = sv.amplitudes();
    const double total = sv.norm_squared();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
      acc += std::norm(amps[i]);
      if (u * total < acc) return i;
    }
    return amps.size() - 1;
  }

  const Circuit& c_;
  const NoiseModel& noise_;
  int n_;
  std::vector<double> rates_;
  bool gate_noise_ = false;
  bool cache_prefix_ = false;
  std::vector<Statevector> prefix_;
  std::vector<double> clean_cdf_;
  std::vector<ReadoutError> readout_;
  std::uint64_t ancilla_mask_ = 0;
};

}  // namespace

CountsHistogram sample(const Circuit& circuit, const NoiseModel* noise, long long shots, std::uint64_t seed,
                       int jobs) {
  if (shots < 1) throw InputError("shots must be at least 1");
  NoiseModel none;
  const NoiseModel& nm = noise ? *noise : none;
  nm.validate();
  TrajectorySampler sampler(circuit, nm);
  const long long blocks = (shots + kShotBlock - 1) / kShotBlock;
  std::vector<CountsHistogram> parts(static_cast<std::size_t>(blocks));
  run_blocks(blocks, jobs, [&](long long b) {
    const long long n = std::min(kShotBlock, shots - b * kShotBlock);
    parts[static_cast<std::size_t>(b)] = sampler.run(n, derive_seed(seed, static_cast<std::uint64_t>(b)));
  });
  CountsHistogram out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

}  // namespace fairsample
