#include <gtest/gtest.h>

#include "fairsample/architecture.hpp"
#include "fairsample/error.hpp"

using namespace fairsample;

TEST(Architecture, NamedShapes) {
  const std::vector<std::pair<std::string, int>> expect{{"2L", 1}, {"3L", 2}, {"4L", 3}, {"4T", 3}, {"5T", 4}};
  for (const auto& [name, edges] : expect) {
    const auto a = Architecture::named(name);
    EXPECT_EQ(a.name, name);
    EXPECT_EQ(static_cast<int>(a.edges.size()), edges);
    EXPECT_EQ(a.num_wires, edges + 1);
    EXPECT_TRUE(a.connected());
  }
  EXPECT_EQ(Architecture::names().size(), 5u);
  EXPECT_THROW(Architecture::named("6Q"), InputError);
}

TEST(Architecture, TeeHasADegreeThreeHub) {
  const auto t = Architecture::named("4T");
  EXPECT_EQ(t.neighbors(1).size(), 3u);
  EXPECT_TRUE(t.adjacent(3, 1));
  EXPECT_FALSE(t.adjacent(0, 2));
  const auto t5 = Architecture::named("5T");
  EXPECT_TRUE(t5.adjacent(3, 4));
  EXPECT_EQ(t5.neighbors(1).size(), 3u);
}

TEST(Architecture, LinesAreChains) {
  const auto l = Architecture::named("4L");
  for (int w = 0; w + 1 < l.num_wires; ++w) EXPECT_TRUE(l.adjacent(w, w + 1));
  EXPECT_FALSE(l.adjacent(0, 3));
  Architecture broken{"x", 3, {{0, 1}}};
  EXPECT_FALSE(broken.connected());
}
