#ifndef CFGRAPH_GENERATORS_H_
#define CFGRAPH_GENERATORS_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

#include "cfgraph/geometry.h"

namespace cfgraph {

class GenerationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PointSetKind { kConvex, kRandom };

// Uniform in [0, bound). Standard distributions are implementation-defined,
// so generated files would differ between standard libraries.
std::uint64_t BoundedDraw(std::mt19937_64& rng, std::uint64_t bound);

// n integer points in convex position near a circle of radius 100000.
PointSet GenerateConvex(int n, std::uint64_t seed);
// n integer points in general position in a 2^16 box.
PointSet GenerateRandom(int n, std::uint64_t seed);
PointSet Generate(PointSetKind kind, int n, std::uint64_t seed);

// Convex n-gon with a fixed chain pattern: interior point i (1 <= i < n-1,
// x-order) lies on the upper chain iff bit i-1 of `upper` is set. Every
// convex order type is one of these patterns.
PointSet ConvexChains(int n, std::uint64_t upper);

// True iff every point is a vertex of the convex hull.
bool InConvexPosition(const PointSet& points);

}  // namespace cfgraph

#endif  // CFGRAPH_GENERATORS_H_
