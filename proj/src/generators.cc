#include "cfgraph/generators.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace cfgraph {
namespace {

constexpr int kAttempts = 200;
constexpr double kRadius = 100000.0;
constexpr std::int64_t kBox = std::int64_t{1} << 16;

bool GeneralPosition(const std::vector<Point>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i].x == pts[j].x) return false;
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        if (Orientation(pts[i], pts[j], pts[k]) == 0) return false;
      }
    }
  }
  return true;
}

}  // namespace

std::uint64_t BoundedDraw(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejects the top partial block so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

bool InConvexPosition(const PointSet& points) {
  const int n = points.size();
  for (PointId p = 0; p < n; ++p) {
    // p is a hull vertex iff it is not inside any triangle of other points.
    for (PointId a = 0; a < n; ++a) {
      if (a == p) continue;
      for (PointId b = a + 1; b < n; ++b) {
        if (b == p) continue;
        for (PointId c = b + 1; c < n; ++c) {
          if (c == p) continue;
          const int o1 = points.Orientation(a, b, p);
          const int o2 = points.Orientation(b, c, p);
          const int o3 = points.Orientation(c, a, p);
          if (o1 == o2 && o2 == o3) return false;
        }
      }
    }
  }
  return true;
}

PointSet GenerateConvex(int n, std::uint64_t seed) {
  if (n < 1 || n > kMaxPoints) {
    throw GenerationFailed("n must lie in [1, 64], got " + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  constexpr std::uint64_t kSteps = 1 << 20;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<Point> pts;
    for (int k = 0; k < n; ++k) {
      // Jitter within the middle half of each angular slot.
      const double u =
          0.25 + 0.5 * static_cast<double>(BoundedDraw(rng, kSteps)) / kSteps;
      const double angle = 2 * std::numbers::pi * (k + u) / n;
      pts.push_back({std::llround(kRadius * std::cos(angle)),
                     std::llround(kRadius * std::sin(angle))});
    }
    if (!GeneralPosition(pts)) continue;
    PointSet set = PointSet::Validate(pts);
    if (InConvexPosition(set)) return set;
  }
  throw GenerationFailed("no convex set of " + std::to_string(n) +
                         " points found");
}

PointSet GenerateRandom(int n, std::uint64_t seed) {
  if (n < 1 || n > kMaxPoints) {
    throw GenerationFailed("n must lie in [1, 64], got " + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  int failures = 0;
  while (static_cast<int>(pts.size()) < n) {
    const Point candidate{static_cast<std::int64_t>(BoundedDraw(rng, kBox)),
                          static_cast<std::int64_t>(BoundedDraw(rng, kBox))};
    pts.push_back(candidate);
    if (GeneralPosition(pts)) continue;
    pts.pop_back();
    if (++failures > kAttempts * n) {
      throw GenerationFailed("no random set of " + std::to_string(n) +
                             " points found");
    }
  }
  return PointSet::Validate(pts);
}

PointSet ConvexChains(int n, std::uint64_t upper) {
  if (n < 1 || n > kMaxPoints) {
    throw GenerationFailed("n must lie in [1, 64], got " + std::to_string(n));
  }
  // Two parabolas bent away from each other, ends at mid height.
  constexpr std::int64_t kHeight = 1000000;
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) {
    const std::int64_t d = 2 * i - (n - 1);
    const std::int64_t bend = 7 * d * d;
    std::int64_t y;
    if (i == 0 || i == n - 1) {
      y = kHeight / 2 + i;
    } else {
      y = (upper >> (i - 1)) & 1 ? kHeight - bend : bend;
    }
    pts.push_back({10 * std::int64_t{i}, y});
  }
  if (!GeneralPosition(pts)) {
    throw GenerationFailed("chain pattern produced a collinear triple");
  }
  PointSet set = PointSet::Validate(pts);
  if (!InConvexPosition(set)) {
    throw GenerationFailed("chain pattern is not convex");
  }
  return set;
}

PointSet Generate(PointSetKind kind, int n, std::uint64_t seed) {
  return kind == PointSetKind::kConvex ? GenerateConvex(n, seed)
                                       : GenerateRandom(n, seed);
}

}  // namespace cfgraph
