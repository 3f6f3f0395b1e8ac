#ifndef CFGRAPH_ORACLE_H_
#define CFGRAPH_ORACLE_H_

// Brute-force reference enumerators for small point sets. Only Orientation,
// SegmentsCross and the per-segment weights are shared with the compiler.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "cfgraph/cgraph.h"
#include "cfgraph/geometry.h"

namespace cfgraph {

inline constexpr int kOracleMaxPoints = 9;
inline constexpr int kOracleMaxCrossingFreePoints = 6;

class OracleTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sorted labels of one solution.
using LabelSet = std::vector<Label>;

struct CycleRecord {
  LabelSet segments;
  // Visiting order starting at point 0, counter-clockwise.
  std::vector<PointId> ccw_order;
  std::int64_t twice_area = 0;
  // Sum of FixedPointLength over the segments.
  std::int64_t length = 0;
};

struct OracleResult {
  std::set<LabelSet> solutions;
  std::uint64_t count = 0;
  // Filled by BruteSpanningCycles only, in discovery order.
  std::vector<CycleRecord> cycles;
};

OracleResult BruteSpanningTrees(const PointSet& points);
OracleResult BruteSpanningCycles(const PointSet& points);
// Counts pairwise non-crossing segment sets, the empty set included.
BigCount BruteCrossingFreeCount(const PointSet& points);

// The counter-clockwise directed version of a cycle, as sorted labels.
LabelSet DirectedLabels(const CycleRecord& cycle);
std::set<LabelSet> BruteDirectedCycles(const PointSet& points);

enum class Objective { kArea, kLength };

struct BruteOptimum {
  std::int64_t value = 0;
  CycleRecord cycle;
};

// Extremal cycle over BruteSpanningCycles. Area is the doubled area, length
// the fixed-point length. Returns nullopt when there is no cycle.
std::optional<BruteOptimum> BruteOptimize(const PointSet& points,
                                          Objective objective, Sense sense);

}  // namespace cfgraph

#endif  // CFGRAPH_ORACLE_H_
