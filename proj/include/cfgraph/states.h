#ifndef CFGRAPH_STATES_H_
#define CFGRAPH_STATES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cfgraph/geometry.h"

namespace cfgraph {

// cf: all crossing-free graphs; st: spanning trees; sc: spanning cycles;
// dsc: counter-clockwise spanning cycles over directed segments.
enum class Family { kCrossingFree, kSpanningTree, kSpanningCycle, kDirectedCycle };

std::string_view FamilyName(Family family);
std::optional<Family> ParseFamily(std::string_view name);

enum class Color : std::uint8_t { kWhite, kGray, kBlack };

// Why a transition (or a connector update) was refused.
enum class RejectReason {
  kUppHit,            // a used point lies in upp(s)
  kEndpointShadowed,  // an endpoint of s is black
  kOrderViolation,    // rgt(s) does not lie strictly right of the mark
  kSelfLoop,          // s is already the last segment; the state would repeat
  kHidden,            // a component would end up entirely under s
  kCycle,             // both endpoints already connected (trees)
  kLowDegreeUnder,    // a point of degree < 2 lies under s (cycles)
  kIsolatedCycle,     // closing a cycle that does not span every point
  kDirection,         // endpoint roles clash with the directed paths
  kP1Sink,            // an open path would end at the leftmost point
  kConnectorCrossing, // the connector would stop being non-crossing
};

std::string_view RejectReasonName(RejectReason reason);

// A partition of the gray points, stored as a restricted-growth string over
// the gray points in x-order: labels[k] is the block of the k-th gray point
// and blocks are numbered by first occurrence.
class NonCrossingPartition {
 public:
  NonCrossingPartition() = default;
  explicit NonCrossingPartition(std::vector<std::uint8_t> labels);

  // Blocks given as masks of global point ids; every block must lie in gray
  // and together they must cover it.
  static NonCrossingPartition FromBlocks(std::span<const PointMask> blocks,
                                         PointMask gray);

  // Blocks as global-id masks, in block-number order.
  std::vector<PointMask> Blocks(PointMask gray) const;

  int size() const { return static_cast<int>(labels_.size()); }
  int block_count() const;
  std::span<const std::uint8_t> labels() const { return labels_; }

  // No a < b < c < d with a, c in one block and b, d in another.
  bool IsNonCrossing() const;

  // Block numbers in base 36, one character per gray point.
  std::string ToString() const;

  friend bool operator==(const NonCrossingPartition&,
                         const NonCrossingPartition&) = default;

 private:
  std::vector<std::uint8_t> labels_;
};

// A non-crossing perfect matching of the gray points as a balanced
// parenthesis string: bit k of `opens` is '(' at the k-th gray point.
class NonCrossingMatching {
 public:
  NonCrossingMatching() = default;
  NonCrossingMatching(std::uint64_t opens, int length)
      : opens_(opens), length_(length) {}

  // Pairs of global ids covering `gray` exactly. Returns nullopt when the
  // pairs cross, since such a matching has no parenthesis form.
  static std::optional<NonCrossingMatching> FromPairs(
      std::span<const std::pair<PointId, PointId>> pairs, PointMask gray);

  // (left, right) global ids, ordered by the left point.
  std::vector<std::pair<PointId, PointId>> Pairs(PointMask gray) const;

  std::uint64_t opens() const { return opens_; }
  int length() const { return length_; }
  int pair_count() const { return length_ / 2; }
  bool IsBalanced() const;
  std::string ToString() const;

  friend bool operator==(const NonCrossingMatching&,
                         const NonCrossingMatching&) = default;

 private:
  std::uint64_t opens_ = 0;
  int length_ = 0;
};

// An open directed path, reduced to its endpoints: it starts at `head` (out
// degree 1, in degree 0) and ends at `tail`.
struct OpenPath {
  PointId head;
  PointId tail;
  friend bool operator==(const OpenPath&, const OpenPath&) = default;
};

// A non-crossing matching plus one bit per pair (in order of the left
// points): set iff the pair's left point is the head of its path.
class DirectedMatching {
 public:
  DirectedMatching() = default;
  DirectedMatching(NonCrossingMatching shape, std::uint64_t head_on_left)
      : shape_(shape), head_on_left_(head_on_left) {}

  static std::optional<DirectedMatching> FromPaths(
      std::span<const OpenPath> paths, PointMask gray);

  // Ordered by the left point of each pair.
  std::vector<OpenPath> Paths(PointMask gray) const;

  const NonCrossingMatching& shape() const { return shape_; }
  std::uint64_t head_on_left() const { return head_on_left_; }
  bool HasTailAt(PointId p, PointMask gray) const;

  // Parentheses, then ':' and one orientation digit per pair.
  std::string ToString() const;

  friend bool operator==(const DirectedMatching&,
                         const DirectedMatching&) = default;

 private:
  NonCrossingMatching shape_;
  std::uint64_t head_on_left_ = 0;
};

using Connector = std::variant<std::monostate, NonCrossingPartition,
                               NonCrossingMatching, DirectedMatching>;

// Equivalence-class state of a partial combination: point colors, the mark
// (left endpoint of the last segment added) and the family's connector.
struct Signature {
  Family family = Family::kCrossingFree;
  int n = 0;
  PointMask gray = 0;
  PointMask black = 0;
  std::optional<PointId> mark;
  Connector connector;

  // The state of the empty combination.
  static Signature Empty(Family family, int n);

  PointMask all() const { return n == 64 ? ~PointMask{0} : Bit(n) - 1; }
  PointMask white() const { return all() & ~(gray | black); }
  Color color(PointId p) const {
    return Contains(gray, p)    ? Color::kGray
           : Contains(black, p) ? Color::kBlack
                                : Color::kWhite;
  }

  // Injective byte encoding: family, n, 2 bits of color per point, mark,
  // connector bytes. Equal signatures give equal strings and vice versa.
  std::string Encode() const;

  // "colors|mark|connector", e.g. "GWG|1|()"; mark 1-based, '-' for nil.
  std::string DebugString() const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

template <typename T>
struct ConnectorUpdate {
  enum class Kind { kExtended, kClosing, kReject };
  Kind kind = Kind::kReject;
  T connector{};
  RejectReason reason = RejectReason::kConnectorCrossing;

  static ConnectorUpdate Extended(T value) {
    return {Kind::kExtended, std::move(value), {}};
  }
  static ConnectorUpdate Closing() { return {Kind::kClosing, {}, {}}; }
  static ConnectorUpdate Reject(RejectReason why) {
    return {Kind::kReject, {}, why};
  }
};

// Adds segment (a, b) to the connectivity partition: lifts the partition to
// the white points as singletons, merges the blocks of a and b, then drops
// `covered` (the points newly under the segment) and restricts to
// `gray_after`. Rejects kHidden when a block would lie entirely inside
// `covered`, then kCycle when a and b share a block. Never returns kClosing.
ConnectorUpdate<NonCrossingPartition> UpdatePartition(
    const NonCrossingPartition& partition, PointMask gray_before,
    PointMask white_before, Segment s, PointMask covered,
    PointMask gray_after);

// Adds segment (a, b), both endpoints white or gray, to the path-endpoint
// matching. Returns kClosing when a and b are the two ends of one path.
ConnectorUpdate<NonCrossingMatching> UpdateMatching(
    const NonCrossingMatching& matching, PointMask gray_before, Segment s);

// Directed analogue of UpdateMatching. The head of `d` must currently end a
// path or be white, its tail must start a path or be white (else
// kDirection); a resulting path ending at point 0 is refused (kP1Sink).
ConnectorUpdate<DirectedMatching> UpdateDirectedMatching(
    const DirectedMatching& matching, PointMask gray_before,
    DirectedSegment d);

}  // namespace cfgraph

#endif  // CFGRAPH_STATES_H_
