#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fairsample {

// Target connectivity for compilation. Wires are 0..num_wires-1.
struct Architecture {
  std::string name;
  int num_wires = 0;
  std::vector<std::pair<int, int>> edges;

  bool adjacent(int a, int b) const;
  std::vector<int> neighbors(int w) const;
  bool connected() const;

  // One of 2L, 3L, 4L, 4T, 5T.
  static Architecture named(std::string_view name);
  static const std::vector<std::string>& names();
};

}  // namespace fairsample
