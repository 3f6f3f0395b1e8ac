#include "cfgraph/oracle.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

namespace cfgraph {
namespace {

void RequireAtMost(const PointSet& points, int limit, const char* what) {
  if (points.size() > limit) {
    throw OracleTooLarge(std::string(what) + " oracle supports at most " +
                         std::to_string(limit) + " points, got " +
                         std::to_string(points.size()));
  }
}

std::vector<Segment> AllSegments(int n) {
  std::vector<Segment> out;
  for (PointId i = 0; i < n; ++i) {
    for (PointId j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

// crosses[a][b] over segment indices.
std::vector<std::vector<bool>> CrossingTable(const PointSet& points,
                                             const std::vector<Segment>& segs) {
  std::vector<std::vector<bool>> crosses(segs.size(),
                                         std::vector<bool>(segs.size()));
  for (std::size_t a = 0; a < segs.size(); ++a) {
    for (std::size_t b = a + 1; b < segs.size(); ++b) {
      crosses[a][b] = crosses[b][a] = SegmentsCross(points, segs[a], segs[b]);
    }
  }
  return crosses;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int Find(int x) const {
    while (parent[x] != x) x = parent[x];
    return x;
  }
};

LabelSet ToLabels(const std::vector<Segment>& segs) {
  LabelSet out;
  for (Segment s : segs) out.push_back(Label::Of(s));
  std::sort(out.begin(), out.end());
  return out;
}

class TreeSearch {
 public:
  TreeSearch(const PointSet& points, OracleResult& result)
      : n_(points.size()),
        segs_(AllSegments(n_)),
        crosses_(CrossingTable(points, segs_)),
        result_(result) {}

  void Run() {
    UnionFind uf(n_);
    Recurse(0, uf);
  }

 private:
  // No path compression, so undoing a union only needs the changed root.
  void Recurse(std::size_t next, UnionFind& uf) {
    if (static_cast<int>(chosen_.size()) == n_ - 1) {
      std::vector<Segment> segs;
      for (std::size_t idx : chosen_) segs.push_back(segs_[idx]);
      result_.solutions.insert(ToLabels(segs));
      return;
    }
    const std::size_t needed = n_ - 1 - chosen_.size();
    for (std::size_t idx = next; idx + needed <= segs_.size(); ++idx) {
      const Segment s = segs_[idx];
      const int ra = uf.Find(s.lo);
      const int rb = uf.Find(s.hi);
      if (ra == rb) continue;
      bool ok = true;
      for (std::size_t other : chosen_) {
        if (crosses_[idx][other]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      uf.parent[ra] = rb;
      chosen_.push_back(idx);
      Recurse(idx + 1, uf);
      chosen_.pop_back();
      uf.parent[ra] = ra;
    }
  }

  int n_;
  std::vector<Segment> segs_;
  std::vector<std::vector<bool>> crosses_;
  OracleResult& result_;
  std::vector<std::size_t> chosen_;
};

}  // namespace

OracleResult BruteSpanningTrees(const PointSet& points) {
  RequireAtMost(points, kOracleMaxPoints, "spanning tree");
  OracleResult result;
  if (points.size() == 1) {
    result.solutions.insert(LabelSet{});
  } else {
    TreeSearch(points, result).Run();
  }
  result.count = result.solutions.size();
  return result;
}

OracleResult BruteSpanningCycles(const PointSet& points) {
  RequireAtMost(points, kOracleMaxPoints, "spanning cycle");
  OracleResult result;
  const int n = points.size();
  if (n < 3) return result;
  std::vector<PointId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  // perm[0] stays 0; each undirected cycle appears once with perm[1] <
  // perm[n-1].
  do {
    if (perm[1] > perm[n - 1]) continue;
    std::vector<Segment> segs;
    for (int k = 0; k < n; ++k) segs.emplace_back(perm[k], perm[(k + 1) % n]);
    bool crossing = false;
    for (int a = 0; a < n && !crossing; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (SegmentsCross(points, segs[a], segs[b])) {
          crossing = true;
          break;
        }
      }
    }
    if (crossing) continue;

    CycleRecord record;
    record.segments = ToLabels(segs);
    record.ccw_order = perm;
    record.twice_area = TwiceSignedArea(points, perm);
    if (record.twice_area < 0) {
      std::reverse(record.ccw_order.begin() + 1, record.ccw_order.end());
      record.twice_area = -record.twice_area;
    }
    for (Segment s : segs) record.length += FixedPointLength(points, s);
    result.solutions.insert(record.segments);
    result.cycles.push_back(std::move(record));
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  result.count = result.solutions.size();
  return result;
}

BigCount BruteCrossingFreeCount(const PointSet& points) {
  RequireAtMost(points, kOracleMaxCrossingFreePoints, "crossing-free");
  const std::vector<Segment> segs = AllSegments(points.size());
  const auto crosses = CrossingTable(points, segs);
  const std::size_t m = segs.size();
  std::vector<std::uint32_t> conflicts(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (crosses[a][b]) conflicts[a] |= std::uint32_t{1} << b;
    }
  }
  // ok[mask] for every subset, built from the subset without its top bit.
  std::vector<bool> ok(std::size_t{1} << m);
  ok[0] = true;
  BigCount count = 1;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    const int top = 31 - std::countl_zero(mask);
    const std::uint32_t rest = mask & ~(std::uint32_t{1} << top);
    ok[mask] = ok[rest] && (conflicts[top] & rest) == 0;
    if (ok[mask]) ++count;
  }
  return count;
}

LabelSet DirectedLabels(const CycleRecord& cycle) {
  LabelSet out;
  const std::size_t n = cycle.ccw_order.size();
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(Label::Of(
        DirectedSegment{cycle.ccw_order[k], cycle.ccw_order[(k + 1) % n]}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<LabelSet> BruteDirectedCycles(const PointSet& points) {
  std::set<LabelSet> out;
  for (const CycleRecord& cycle : BruteSpanningCycles(points).cycles) {
    out.insert(DirectedLabels(cycle));
  }
  return out;
}

std::optional<BruteOptimum> BruteOptimize(const PointSet& points,
                                          Objective objective, Sense sense) {
  OracleResult all = BruteSpanningCycles(points);
  std::optional<BruteOptimum> best;
  for (CycleRecord& cycle : all.cycles) {
    const std::int64_t value =
        objective == Objective::kArea ? cycle.twice_area : cycle.length;
    const bool better =
        !best || (sense == Sense::kMin ? value < best->value
                                       : value > best->value);
    if (better) best = BruteOptimum{value, cycle};
  }
  return best;
}

}  // namespace cfgraph
