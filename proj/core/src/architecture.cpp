#include "fairsample/architecture.hpp"

#include <algorithm>

#include "fairsample/error.hpp"

namespace fairsample {

bool Architecture::adjacent(int a, int b) const {
  return std::any_of(edges.begin(), edges.end(), [&](const auto& e) {
    return (e.first == a && e.second == b) || (e.first == b && e.second == a);
  });
}

std::vector<int> Architecture::neighbors(int w) const {
  std::vector<int> out;
  for (const auto& [a, b] : edges) {
    if (a == w) out.push_back(b);
    if (b == w) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Architecture::connected() const {
  if (num_wires <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(num_wires), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int w = stack.back();
    stack.pop_back();
    for (int v : neighbors(w)) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == num_wires;
}

const std::vector<std::string>& Architecture::names() {
  static const std::vector<std::string> n{"2L", "3L", "4L", "4T", "5T"};
  return n;
}

Architecture Architecture::named(std::string_view name) {
  if (name == "2L") return {"2L", 2, {{0, 1}}};
  if (name == "3L") return {"3L", 3, {{0, 1}, {1, 2}}};
  if (name == "4L") return {"4L", 4, {{0, 1}, {1, 2}, {2, 3}}};
  // Claw centred on wire 1.
  if (name == "4T") return {"4T", 4, {{0, 1}, {1, 2}, {1, 3}}};
  // Claw with the third leg extended by one wire.
  if (name == "5T") return {"5T", 5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}}};
  throw InputError("unknown architecture '" + std::string(name) + "'");
}

}  // namespace fairsample
