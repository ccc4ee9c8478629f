#include "fairsample/parity_network.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <queue>
#include <unordered_map>

#include "fairsample/error.hpp"

namespace fairsample {
namespace {

constexpr std::size_t kMaxExpansions = 20'000'000;
constexpr int kMaxTableBits = 26;
constexpr int kMaxWires = 6;

using Rows = std::array<std::uint8_t, kMaxWires>;

struct Layout {
  int wires = 0;
  int bits = 0;

  std::uint64_t pack(const Rows& r) const {
    std::uint64_t k = 0;
    for (int w = 0; w < wires; ++w) k |= std::uint64_t{r[static_cast<std::size_t>(w)]} << (w * bits);
    return k;
  }
  Rows unpack(std::uint64_t k) const {
    Rows r{};
    const std::uint64_t m = (std::uint64_t{1} << bits) - 1;
    for (int w = 0; w < wires; ++w) r[static_cast<std::size_t>(w)] = static_cast<std::uint8_t>((k >> (w * bits)) & m);
    return r;
  }
  int total_bits() const { return wires * bits; }
};

std::vector<std::pair<int, int>> directed_edges(const Architecture& arch) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [a, b] : arch.edges) {
    out.emplace_back(a, b);
    out.emplace_back(b, a);
  }
  return out;
}

// CNOT distance from every row configuration to the nearest permutation of `goal`.
// Empty when the configuration space is too large to tabulate.
std::vector<std::uint8_t> distance_table(const Architecture& arch, const Layout& L, std::vector<std::uint32_t> goal) {
  if (L.total_bits() > kMaxTableBits) return {};
  std::vector<std::uint8_t> dist(std::size_t{1} << L.total_bits(), 255);
  std::deque<std::uint32_t> q;
  std::sort(goal.begin(), goal.end());
  do {
    Rows r{};
    for (int w = 0; w < L.wires; ++w) r[static_cast<std::size_t>(w)] = static_cast<std::uint8_t>(goal[static_cast<std::size_t>(w)]);
    const auto k = static_cast<std::uint32_t>(L.pack(r));
    if (dist[k] == 255) {
      dist[k] = 0;
      q.push_back(k);
    }
  } while (std::next_permutation(goal.begin(), goal.end()));
  const auto edges = directed_edges(arch);
  while (!q.empty()) {
    const std::uint32_t k = q.front();
    q.pop_front();
    const Rows r = L.unpack(k);
    for (auto [c, t] : edges) {
      if (r[static_cast<std::size_t>(c)] == 0) continue;
      Rows s = r;
      s[static_cast<std::size_t>(t)] ^= r[static_cast<std::size_t>(c)];
      const auto k2 = static_cast<std::uint32_t>(L.pack(s));
      if (dist[k2] == 255) {
        dist[k2] = static_cast<std::uint8_t>(dist[k] + 1);
        q.push_back(k2);
      }
    }
  }
  return dist;
}

bool is_permutation_of(const Rows& r, int wires, const std::vector<std::uint32_t>& sorted_goal) {
  std::vector<std::uint32_t> v(r.begin(), r.begin() + wires);
  std::sort(v.begin(), v.end());
  return v == sorted_goal;
}

// Best-first search shared by both network flavours. The domain supplies packed
// states, successors with step costs, a heuristic and a goal test.
template <typename Domain>
NetworkPlan search(const Domain& d, double weight) {
  struct Info {
    int g;
    std::uint64_t parent;
    NetworkStep step;
    bool closed;
  };
  struct Entry {
    double f;
    int g;
    std::uint64_t key;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.key > b.key;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);
  std::unordered_map<std::uint64_t, Info> info;
  const std::uint64_t start = d.start();
  info[start] = {0, start, {}, false};
  open.push({weight * d.h(start), 0, start});
  std::size_t expansions = 0;
  while (!open.empty()) {
    const Entry e = open.top();
    open.pop();
    auto& cur = info[e.key];
    if (cur.closed || cur.g < e.g) continue;
    cur.closed = true;
    if (d.goal(e.key)) {
      NetworkPlan plan;
      plan.cnots = e.g;
      for (std::uint64_t k = e.key; k != start; k = info[k].parent) plan.steps.push_back(info[k].step);
      std::reverse(plan.steps.begin(), plan.steps.end());
      return plan;
    }
    if (++expansions > kMaxExpansions) throw CompilationError("parity network search exceeded its expansion budget");
    d.expand(e.key, [&](std::uint64_t next, const NetworkStep& step, int cost) {
      const int g = e.g + cost;
      auto it = info.find(next);
      if (it != info.end() && (it->second.closed || it->second.g <= g)) return;
      info[next] = {g, e.key, step, false};
      open.push({g + weight * d.h(next), g, next});
    });
  }
  throw CompilationError("no parity network exists for this connectivity");
}

void check_rows(const std::vector<std::uint32_t>& rows, int num_vars, int wires) {
  if (static_cast<int>(rows.size()) != wires) throw InputError("one row per architecture wire required");
  if (wires > kMaxWires) throw CapabilityError("parity network synthesis supports at most 6 wires");
  std::uint32_t seen = 0;
  for (auto r : rows) {
    if (r == 0) continue;
    if (std::popcount(r) != 1 || r >= (1U << num_vars) || (seen & r)) throw InputError("rows must hold distinct single variables");
    seen |= r;
  }
  if (seen != (1U << num_vars) - 1) throw InputError("every variable must sit on some wire");
}

class ParityDomain {
 public:
  ParityDomain(const Architecture& arch, const std::vector<std::uint32_t>& rows, int num_vars)
      : L_{arch.num_wires, num_vars}, edges_(directed_edges(arch)), goal_(rows) {
    std::sort(goal_.begin(), goal_.end());
    target_ = num_vars >= 1 ? static_cast<std::uint32_t>((std::uint64_t{1} << ((1U << num_vars) - 1)) - 1) : 0U;
    dist_ = distance_table(arch, L_, rows);
    Rows r{};
    std::uint32_t vis = 0;
    for (int w = 0; w < L_.wires; ++w) {
      r[static_cast<std::size_t>(w)] = static_cast<std::uint8_t>(rows[static_cast<std::size_t>(w)]);
      if (rows[static_cast<std::size_t>(w)]) vis |= 1U << (rows[static_cast<std::size_t>(w)] - 1);
    }
    start_ = L_.pack(r) | (std::uint64_t{vis} << 32);
  }

  std::uint64_t start() const { return start_; }

  double h(std::uint64_t key) const {
    const auto vis = static_cast<std::uint32_t>(key >> 32);
    const int unvisited = std::popcount(target_ & ~vis);
    const std::uint64_t rows = key & 0xffffffffULL;
    int back = 0;
    if (!dist_.empty()) back = dist_[rows];
    else back = is_permutation_of(L_.unpack(rows), L_.wires, goal_) ? 0 : 1;
    return std::max(unvisited, back);
  }

  bool goal(std::uint64_t key) const {
    const auto vis = static_cast<std::uint32_t>(key >> 32);
    return (vis & target_) == target_ && is_permutation_of(L_.unpack(key & 0xffffffffULL), L_.wires, goal_);
  }

  template <typename Fn>
  void expand(std::uint64_t key, Fn&& fn) const {
    const Rows r = L_.unpack(key & 0xffffffffULL);
    const auto vis = static_cast<std::uint32_t>(key >> 32);
    for (auto [c, t] : edges_) {
      if (r[static_cast<std::size_t>(c)] == 0) continue;
      Rows s = r;
      s[static_cast<std::size_t>(t)] ^= r[static_cast<std::size_t>(c)];
      const std::uint32_t row = s[static_cast<std::size_t>(t)];
      const std::uint32_t v2 = row ? vis | (1U << (row - 1)) : vis;
      fn(L_.pack(s) | (std::uint64_t{v2} << 32), NetworkStep{NetworkStep::Kind::Cnot, c, -1, t}, 1);
    }
  }

 private:
  Layout L_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint32_t> goal_;
  std::uint32_t target_ = 0;
  std::vector<std::uint8_t> dist_;
  std::uint64_t start_ = 0;
};

// Parities of the reduced variable set R = {y} + (vars other than the AND inputs),
// compressed to a local index so the visited mask stays small.
struct ReducedSet {
  std::uint32_t mask = 0;              // bits of R within a row
  std::vector<int> local;              // row -> 1-based local parity index, 0 if not inside R
  std::uint32_t full = 0;              // all local parities visited
};

ReducedSet reduced_set(int num_vars, int i, int j) {
  ReducedSet rs;
  rs.mask = (1U << num_vars);  // y
  for (int k = 0; k < num_vars; ++k)
    if (k != i && k != j) rs.mask |= 1U << k;
  rs.local.assign(std::size_t{1} << (num_vars + 1), 0);
  std::vector<int> positions;
  for (int b = 0; b <= num_vars; ++b)
    if (rs.mask & (1U << b)) positions.push_back(b);
  for (std::uint32_t r = 1; r < rs.local.size(); ++r) {
    if (r & ~rs.mask) continue;
    int idx = 0;
    for (std::size_t p = 0; p < positions.size(); ++p)
      if (r & (1U << positions[p])) idx |= 1 << p;
    rs.local[r] = idx;
  }
  rs.full = (1U << ((1U << positions.size()) - 1)) - 1;
  return rs;
}

class AndDomain {
 public:
  // Key layout: rows | visited << 32 | pair << 48 | stage << 56.
  AndDomain(const Architecture& arch, const std::vector<std::uint32_t>& rows, int num_vars)
      : arch_(arch), L_{arch.num_wires, num_vars + 1}, edges_(directed_edges(arch)), goal_(rows), nv_(num_vars) {
    std::sort(goal_.begin(), goal_.end());
    dist_ = distance_table(arch, L_, rows);
    for (int i = 0; i < nv_; ++i)
      for (int j = i + 1; j < nv_; ++j) {
        pairs_.emplace_back(i, j);
        sets_.push_back(reduced_set(nv_, i, j));
      }
    Rows r{};
    for (int w = 0; w < L_.wires; ++w) r[static_cast<std::size_t>(w)] = static_cast<std::uint8_t>(rows[static_cast<std::size_t>(w)]);
    start_ = L_.pack(r);
  }

  std::uint64_t start() const { return start_; }

  static int stage(std::uint64_t k) { return static_cast<int>(k >> 56); }
  static int pair(std::uint64_t k) { return static_cast<int>((k >> 48) & 0xff); }
  static std::uint32_t visited(std::uint64_t k) { return static_cast<std::uint32_t>((k >> 32) & 0xffff); }
  static std::uint64_t make(std::uint64_t rows, std::uint32_t vis, int pair, int stage) {
    return rows | (std::uint64_t{vis} << 32) | (std::uint64_t(pair) << 48) | (std::uint64_t(stage) << 56);
  }

  double h(std::uint64_t key) const {
    const std::uint64_t rows = key & 0xffffffffULL;
    switch (stage(key)) {
      case 0: return 6.0;
      case 1: return 3.0 + std::popcount(sets_[static_cast<std::size_t>(pair(key))].full & ~visited(key));
      default:
        if (!dist_.empty()) return dist_[rows];
        return is_permutation_of(L_.unpack(rows), L_.wires, goal_) ? 0.0 : 1.0;
    }
  }

  bool goal(std::uint64_t key) const {
    return stage(key) == 2 && is_permutation_of(L_.unpack(key & 0xffffffffULL), L_.wires, goal_);
  }

  template <typename Fn>
  void expand(std::uint64_t key, Fn&& fn) const {
    const Rows r = L_.unpack(key & 0xffffffffULL);
    const int st = stage(key);
    const int pr = pair(key);
    const std::uint32_t vis = visited(key);
    const std::uint32_t y = 1U << nv_;
    for (auto [c, t] : edges_) {
      if (r[static_cast<std::size_t>(c)] == 0) continue;
      Rows s = r;
      s[static_cast<std::size_t>(t)] ^= r[static_cast<std::size_t>(c)];
      std::uint32_t v2 = vis;
      if (st == 1) {
        const int loc = sets_[static_cast<std::size_t>(pr)].local[s[static_cast<std::size_t>(t)]];
        if (loc) v2 |= 1U << (loc - 1);
      }
      fn(make(L_.pack(s), v2, pr, st), NetworkStep{NetworkStep::Kind::Cnot, c, -1, t}, 1);
    }
    auto single_var = [&](std::uint32_t row) { return row != 0 && row != y && std::popcount(row) == 1; };
    if (st == 0) {
      for (int t = 0; t < L_.wires; ++t) {
        if (r[static_cast<std::size_t>(t)] != 0) continue;
        const auto nb = arch_.neighbors(t);
        for (std::size_t p = 0; p < nb.size(); ++p)
          for (std::size_t q = p + 1; q < nb.size(); ++q) {
            const std::uint32_t ra = r[static_cast<std::size_t>(nb[p])];
            const std::uint32_t rb = r[static_cast<std::size_t>(nb[q])];
            if (!single_var(ra) || !single_var(rb)) continue;
            int i = std::countr_zero(ra);
            int j = std::countr_zero(rb);
            if (i > j) std::swap(i, j);
            const int pidx = pair_index(i, j);
            Rows s = r;
            s[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(y);
            std::uint32_t v2 = 0;
            for (int w = 0; w < L_.wires; ++w) {
              const int loc = sets_[static_cast<std::size_t>(pidx)].local[s[static_cast<std::size_t>(w)]];
              if (loc) v2 |= 1U << (loc - 1);
            }
            fn(make(L_.pack(s), v2, pidx, 1), NetworkStep{NetworkStep::Kind::And, nb[p], nb[q], t}, 3);
          }
      }
    } else if (st == 1 && (vis & sets_[static_cast<std::size_t>(pr)].full) == sets_[static_cast<std::size_t>(pr)].full) {
      const auto [i, j] = pairs_[static_cast<std::size_t>(pr)];
      const std::uint32_t want = (1U << i) | (1U << j);
      for (int t = 0; t < L_.wires; ++t) {
        if (r[static_cast<std::size_t>(t)] != y) continue;
        const auto nb = arch_.neighbors(t);
        for (std::size_t p = 0; p < nb.size(); ++p)
          for (std::size_t q = p + 1; q < nb.size(); ++q) {
            const std::uint32_t ra = r[static_cast<std::size_t>(nb[p])];
            const std::uint32_t rb = r[static_cast<std::size_t>(nb[q])];
            if (!single_var(ra) || !single_var(rb) || (ra | rb) != want) continue;
            Rows s = r;
            s[static_cast<std::size_t>(t)] = 0;
            fn(make(L_.pack(s), 0, 0, 2), NetworkStep{NetworkStep::Kind::AndDagger, nb[p], nb[q], t}, 3);
          }
      }
    }
  }

 private:
  int pair_index(int i, int j) const {
    for (std::size_t p = 0; p < pairs_.size(); ++p)
      if (pairs_[p].first == i && pairs_[p].second == j) return static_cast<int>(p);
    return -1;
  }

  const Architecture& arch_;
  Layout L_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint32_t> goal_;
  int nv_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<ReducedSet> sets_;
  std::vector<std::uint8_t> dist_;
  std::uint64_t start_ = 0;
};

void append_and(Circuit& c, int a, int b, int t) {
  c.append(Gate::h(t));
  c.append(Gate::t(t));
  c.append(Gate::cnot(a, t));
  c.append(Gate::tdg(t));
  c.append(Gate::cnot(b, t));
  c.append(Gate::t(t));
  c.append(Gate::cnot(a, t));
  c.append(Gate::tdg(t));
  c.append(Gate::h(t));
}

}  // namespace

NetworkPlan plan_parity_network(const Architecture& arch, const std::vector<std::uint32_t>& rows, int num_vars,
                                double weight) {
  if (num_vars < 0 || num_vars > 5) throw CapabilityError("parity network synthesis supports at most 5 variables");
  check_rows(rows, num_vars, arch.num_wires);
  if (num_vars == 0) return {};
  return search(ParityDomain(arch, rows, num_vars), weight);
}

NetworkPlan plan_and_parity_network(const Architecture& arch, const std::vector<std::uint32_t>& rows, int num_vars,
                                    double weight) {
  if (num_vars < 2 || num_vars > 4) throw CapabilityError("ancilla network synthesis supports 2 to 4 variables");
  check_rows(rows, num_vars, arch.num_wires);
  if (std::count(rows.begin(), rows.end(), 0U) < 1) throw CompilationError("no clean ancilla wire available");
  return search(AndDomain(arch, rows, num_vars), weight);
}

Circuit emit_parity_network(const NetworkPlan& plan, int num_wires, const std::vector<std::uint32_t>& rows_in,
                            int num_vars, double exponent, std::vector<std::uint32_t>* final_rows) {
  Circuit c(num_wires);
  std::vector<std::uint32_t> rows = rows_in;
  const bool uses_and = std::any_of(plan.steps.begin(), plan.steps.end(),
                                    [](const NetworkStep& s) { return s.kind == NetworkStep::Kind::And; });
  // Variables of the product the phases expand; for the AND flavour y replaces the pair.
  std::uint32_t scope = (1U << num_vars) - 1;
  int k = num_vars;
  bool active = !uses_and;
  std::vector<char> emitted(std::size_t{1} << (num_vars + 1), 0);

  auto maybe_phase = [&](int wire) {
    const std::uint32_t r = rows[static_cast<std::size_t>(wire)];
    if (!active || r == 0 || (r & ~scope) || emitted[r]) return;
    emitted[r] = 1;
    const int sign = (std::popcount(r) % 2 == 1) ? 1 : -1;
    c.append(Gate::phase(wire, exponent * sign / static_cast<double>(1U << (k - 1))));
  };

  for (int w = 0; w < num_wires; ++w) maybe_phase(w);
  for (const auto& s : plan.steps) {
    switch (s.kind) {
      case NetworkStep::Kind::Cnot:
        c.append(Gate::cnot(s.a, s.target));
        rows[static_cast<std::size_t>(s.target)] ^= rows[static_cast<std::size_t>(s.a)];
        maybe_phase(s.target);
        break;
      case NetworkStep::Kind::And: {
        append_and(c, s.a, s.b, s.target);
        const std::uint32_t pair = rows[static_cast<std::size_t>(s.a)] | rows[static_cast<std::size_t>(s.b)];
        rows[static_cast<std::size_t>(s.target)] = 1U << num_vars;
        scope = (((1U << num_vars) - 1) & ~pair) | (1U << num_vars);
        k = num_vars - 1;
        active = true;
        for (int w = 0; w < num_wires; ++w) maybe_phase(w);
        break;
      }
      case NetworkStep::Kind::AndDagger:
        append_and(c, s.a, s.b, s.target);
        rows[static_cast<std::size_t>(s.target)] = 0;
        active = false;
        break;
    }
  }
  if (final_rows) *final_rows = rows;
  return c;
}

}  // namespace fairsample
