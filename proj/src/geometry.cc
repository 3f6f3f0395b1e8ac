#include "cfgraph/geometry.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cfgraph {

int Orientation(const Point& p, const Point& q, const Point& r) {
  const __int128 cross =
      static_cast<__int128>(q.x - p.x) * (r.y - p.y) -
      static_cast<__int128>(q.y - p.y) * (r.x - p.x);
  return (cross > 0) - (cross < 0);
}

PointSet PointSet::Validate(std::span<const Point> raw) {
  if (raw.empty()) {
    throw GeometryError(GeometryErrorCode::kEmpty, "point set is empty");
  }
  if (raw.size() > kMaxPoints) {
    throw GeometryError(GeometryErrorCode::kTooManyPoints,
                        "at most 64 points are supported, got " +
                            std::to_string(raw.size()));
  }
  for (const Point& p : raw) {
    if (p.x < -kMaxCoordinate || p.x > kMaxCoordinate ||
        p.y < -kMaxCoordinate || p.y > kMaxCoordinate) {
      throw GeometryError(GeometryErrorCode::kCoordinateRange,
                          "coordinate out of range (|c| <= 2^20): (" +
                              std::to_string(p.x) + ", " +
                              std::to_string(p.y) + ")");
    }
  }
  std::vector<Point> sorted(raw.begin(), raw.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Point& a, const Point& b) { return a.x < b.x; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].x == sorted[i - 1].x) {
      throw GeometryError(GeometryErrorCode::kDuplicateX,
                          "two points share x = " +
                              std::to_string(sorted[i].x));
    }
  }
  const std::size_t n = sorted.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (cfgraph::Orientation(sorted[i], sorted[j], sorted[k]) == 0) {
          throw GeometryError(GeometryErrorCode::kCollinear,
                              "points " + std::to_string(i + 1) + ", " +
                                  std::to_string(j + 1) + ", " +
                                  std::to_string(k + 1) +
                                  " (x-order) are collinear");
        }
      }
    }
  }
  return PointSet(std::move(sorted));
}

bool SegmentsCross(const PointSet& points, Segment a, Segment b) {
  if ((a.points() & b.points()) != 0) return false;
  const int o1 = points.Orientation(a.lo, a.hi, b.lo);
  const int o2 = points.Orientation(a.lo, a.hi, b.hi);
  const int o3 = points.Orientation(b.lo, b.hi, a.lo);
  const int o4 = points.Orientation(b.lo, b.hi, a.hi);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

std::int64_t TwiceTrapezoidWeight(const PointSet& points, DirectedSegment d) {
  const Point& a = points[d.head];
  const Point& b = points[d.tail];
  return (b.x + a.x) * (b.y - a.y);
}

namespace {

std::uint64_t ISqrt(unsigned __int128 v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  auto sq = [](std::uint64_t x) {
    return static_cast<unsigned __int128>(x) * x;
  };
  while (r > 0 && sq(r) > v) --r;
  while (sq(r + 1) <= v) ++r;
  return r;
}

}  // namespace

std::int64_t FixedPointLength(const PointSet& points, Segment s) {
  const Point& a = points[s.lo];
  const Point& b = points[s.hi];
  const auto dx = static_cast<unsigned __int128>(b.x - a.x);
  const __int128 dy_signed = b.y - a.y;
  const auto dy = static_cast<unsigned __int128>(dy_signed < 0 ? -dy_signed
                                                               : dy_signed);
  const unsigned __int128 squared = dx * dx + dy * dy;
  return static_cast<std::int64_t>(ISqrt(squared << (2 * kLengthFractionBits)));
}

std::int64_t TwiceSignedArea(const PointSet& points,
                             std::span<const PointId> cycle) {
  std::int64_t twice = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Point& p = points[cycle[i]];
    const Point& q = points[cycle[(i + 1) % cycle.size()]];
    twice += p.x * q.y - q.x * p.y;
  }
  return twice;
}

ShadowTable::ShadowTable(const PointSet& points)
    : n_(points.size()),
      low_(static_cast<std::size_t>(n_) * n_, 0),
      upp_(static_cast<std::size_t>(n_) * n_, 0) {
  for (PointId i = 0; i < n_; ++i) {
    for (PointId j = i + 1; j < n_; ++j) {
      PointMask low = 0;
      PointMask upp = 0;
      // Ids are x-ranks, so the strict x-range of (i, j) is i < k < j.
      for (PointId k = i + 1; k < j; ++k) {
        if (points.Orientation(i, j, k) > 0) {
          upp |= Bit(k);
        } else {
          low |= Bit(k);
        }
      }
      low_[Index(Segment(i, j))] = low;
      upp_[Index(Segment(i, j))] = upp;
    }
  }
}

PointSet ReadPointFile(std::istream& in) {
  std::vector<Point> raw;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    Point p;
    std::string rest;
    if (!(fields >> p.x >> p.y) || (fields >> rest)) {
      throw GeometryError(GeometryErrorCode::kParse,
                          "line " + std::to_string(line_no) +
                              ": expected two integers \"x y\"");
    }
    raw.push_back(p);
  }
  return PointSet::Validate(raw);
}

PointSet ReadPointFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw GeometryError(GeometryErrorCode::kParse,
                        "cannot open point file " + path);
  }
  return ReadPointFile(in);
}

void WritePointFile(std::ostream& out, const PointSet& points) {
  for (const Point& p : points.points()) {
    out << p.x << ' ' << p.y << '\n';
  }
}

}  // namespace cfgraph
