#include "cfgraph/generators.h"

#include <gtest/gtest.h>

#include <sstream>

namespace cfgraph {
namespace {

std::string Dump(const PointSet& p) {
  std::ostringstream out;
  WritePointFile(out, p);
  return out.str();
}

TEST(GenerateTest, ConvexQuadrilateral) {
  const PointSet p = GenerateConvex(4, 1);
  EXPECT_EQ(p.size(), 4);
  EXPECT_TRUE(InConvexPosition(p));
  for (PointId i = 1; i < p.size(); ++i) EXPECT_LT(p[i - 1].x, p[i].x);
}

TEST(GenerateTest, ConvexUpToSixteen) {
  for (int n = 3; n <= 16; ++n) {
    EXPECT_TRUE(InConvexPosition(GenerateConvex(n, 100 + n))) << n;
  }
}

TEST(GenerateTest, Deterministic) {
  EXPECT_EQ(Dump(GenerateRandom(8, 7)), Dump(GenerateRandom(8, 7)));
  EXPECT_EQ(Dump(GenerateConvex(8, 7)), Dump(GenerateConvex(8, 7)));
  EXPECT_NE(Dump(GenerateRandom(8, 7)), Dump(GenerateRandom(8, 8)));
}

TEST(GenerateTest, RandomTriangle) {
  const PointSet p = GenerateRandom(3, 2);
  ASSERT_EQ(p.size(), 3);
  EXPECT_NE(p.Orientation(0, 1, 2), 0);
}

TEST(GenerateTest, Bounds) {
  EXPECT_THROW(GenerateRandom(0, 1), GenerationFailed);
  EXPECT_THROW(GenerateConvex(65, 1), GenerationFailed);
}

TEST(ConvexChainsTest, PatternSidesAreRespected) {
  for (int n = 3; n <= 9; ++n) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 2)); ++mask) {
      const PointSet p = ConvexChains(n, mask);
      ASSERT_TRUE(InConvexPosition(p));
      for (PointId i = 1; i + 1 < n; ++i) {
        // Upper chain points lie left of the directed line p1 -> pn.
        const int side = p.Orientation(0, n - 1, i);
        EXPECT_EQ(side > 0, ((mask >> (i - 1)) & 1) == 1) << n << ' ' << i;
      }
    }
  }
  EXPECT_TRUE(InConvexPosition(ConvexChains(64, 0x5555)));
  EXPECT_THROW(ConvexChains(0, 0), GenerationFailed);
}

TEST(InConvexPositionTest, InteriorPoint) {
  const std::vector<Point> raw{{0, 0}, {1, 2}, {2, 5}, {4, 1}};
  EXPECT_FALSE(InConvexPosition(PointSet::Validate(raw)));
}

TEST(BoundedDrawTest, Range) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(BoundedDraw(rng, 7), 7u);
  EXPECT_EQ(BoundedDraw(rng, 1), 0u);
}

}  // namespace
}  // namespace cfgraph
