#ifndef CFGRAPH_GEOMETRY_H_
#define CFGRAPH_GEOMETRY_H_

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfgraph {

// Point ids are 0-based x-ranks internally; every user-facing rendering
// (point files aside) prints them 1-based.
using PointId = int;

// One bit per point id. Limits point sets to 64 points, far beyond what any
// exponential compilation can handle.
using PointMask = std::uint64_t;

inline constexpr int kMaxPoints = 64;

// Coordinates are bounded so that every derived quantity (cross products,
// doubled trapezoid areas, fixed-point lengths and their sums over a cycle)
// stays inside 64-bit integers.
inline constexpr std::int64_t kMaxCoordinate = std::int64_t{1} << 20;

inline constexpr PointMask Bit(PointId p) { return PointMask{1} << p; }
inline int PopCount(PointMask m) { return std::popcount(m); }
inline bool Contains(PointMask m, PointId p) { return (m >> p) & 1U; }

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

// An undirected segment between two distinct points, lo < hi in x-order.
struct Segment {
  PointId lo = 0;
  PointId hi = 0;

  Segment() = default;
  // Endpoints may be passed in either order.
  Segment(PointId a, PointId b) : lo(a < b ? a : b), hi(a < b ? b : a) {}

  PointMask points() const { return Bit(lo) | Bit(hi); }
  friend auto operator<=>(const Segment&, const Segment&) = default;
};

// A directed segment from `head` (origin) to `tail` (destination).
struct DirectedSegment {
  PointId head = 0;
  PointId tail = 0;

  Segment underlying() const { return Segment(head, tail); }
  friend auto operator<=>(const DirectedSegment&,
                          const DirectedSegment&) = default;
};

enum class GeometryErrorCode {
  kEmpty,
  kDuplicateX,
  kCollinear,
  kTooManyPoints,
  kCoordinateRange,
  kParse,
};

class GeometryError : public std::runtime_error {
 public:
  GeometryError(GeometryErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  GeometryErrorCode code() const { return code_; }

 private:
  GeometryErrorCode code_;
};

// Sign of (q - p) x (r - p): +1 for a left turn, -1 for a right turn, 0 when
// collinear. Exact for any coordinates within kMaxCoordinate.
int Orientation(const Point& p, const Point& q, const Point& r);

// A validated point set in general position, sorted by x. Immutable.
class PointSet {
 public:
  // Sorts by x and assigns ids by x-rank. Throws GeometryError on empty
  // input, equal x-coordinates, collinear triples, more than kMaxPoints
  // points, or coordinates outside [-kMaxCoordinate, kMaxCoordinate].
  static PointSet Validate(std::span<const Point> raw);

  int size() const { return static_cast<int>(points_.size()); }
  const Point& operator[](PointId id) const { return points_[id]; }
  std::span<const Point> points() const { return points_; }
  PointMask all() const {
    return size() == 64 ? ~PointMask{0} : Bit(size()) - 1;
  }

  int Orientation(PointId p, PointId q, PointId r) const {
    return cfgraph::Orientation(points_[p], points_[q], points_[r]);
  }

 private:
  explicit PointSet(std::vector<Point> points) : points_(std::move(points)) {}
  std::vector<Point> points_;
};

// True iff the relative interiors of the two segments intersect. Segments
// sharing an endpoint never cross (general position).
bool SegmentsCross(const PointSet& points, Segment a, Segment b);

// (x_tail + x_head) * (y_tail - y_head): twice the signed area of the
// trapezoid between the directed segment and the y-axis. Summed over a
// counter-clockwise cycle it gives twice the enclosed area.
std::int64_t TwiceTrapezoidWeight(const PointSet& points, DirectedSegment d);

// Number of fractional bits in fixed-point segment lengths.
inline constexpr int kLengthFractionBits = 32;

// floor(|s| * 2^32), computed with an exact integer square root.
std::int64_t FixedPointLength(const PointSet& points, Segment s);

// Twice the signed area of the polygon visiting `cycle` in order (shoelace).
// Positive for counter-clockwise order.
std::int64_t TwiceSignedArea(const PointSet& points,
                             std::span<const PointId> cycle);

// Lower/upper shadows of every segment: the points strictly inside the
// segment's x-range lying strictly below/above it.
class ShadowTable {
 public:
  explicit ShadowTable(const PointSet& points);

  int size() const { return n_; }
  PointMask low(Segment s) const { return low_[Index(s)]; }
  PointMask upp(Segment s) const { return upp_[Index(s)]; }

  // True iff `second` depends on `first`, i.e. an endpoint of `first` lies
  // in low(second) or an endpoint of `second` lies in upp(first).
  bool Depends(Segment first, Segment second) const {
    return (first.points() & low(second)) != 0 ||
           (upp(first) & second.points()) != 0;
  }

 private:
  std::size_t Index(Segment s) const {
    return static_cast<std::size_t>(s.lo) * n_ + s.hi;
  }

  int n_;
  std::vector<PointMask> low_;
  std::vector<PointMask> upp_;
};

// Reads "x y" lines; blank lines and lines starting with '#' are skipped.
// Returns the validated set, so file order does not matter.
PointSet ReadPointFile(std::istream& in);
PointSet ReadPointFile(const std::string& path);
void WritePointFile(std::ostream& out, const PointSet& points);

}  // namespace cfgraph

#endif  // CFGRAPH_GEOMETRY_H_
