#ifndef CFGRAPH_COMPILERS_H_
#define CFGRAPH_COMPILERS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfgraph/cgraph.h"
#include "cfgraph/geometry.h"
#include "cfgraph/states.h"

namespace cfgraph {

struct TransitionOutcome {
  enum class Kind { kAccept, kAcceptFinal, kReject };

  Kind kind = Kind::kReject;
  Signature next;
  RejectReason reason = RejectReason::kUppHit;

  bool accepted() const { return kind != Kind::kReject; }
  static TransitionOutcome Reject(RejectReason why) {
    TransitionOutcome out;
    out.reason = why;
    return out;
  }
};

// Tests that adding `s` to any combination of class `q` keeps it
// crossing-free with `s` as its right-most extreme segment:
//   E1  upp(s) holds no gray or black point;
//   E2  neither endpoint of s is black;
//   E3  rgt(s) lies strictly right of the mark.
// `strict_order = false` relaxes E3 to >=; only the mutation tests use it.
std::optional<RejectReason> CommonChecks(const Signature& q, Segment s,
                                         const ShadowTable& shadows,
                                         bool strict_order = true);

TransitionOutcome SuccessorCrossingFree(const Signature& q, Segment s,
                                        const ShadowTable& shadows,
                                        bool strict_order = true);
TransitionOutcome SuccessorSpanningTree(const Signature& q, Segment s,
                                        const ShadowTable& shadows,
                                        bool strict_order = true);
TransitionOutcome SuccessorSpanningCycle(const Signature& q, Segment s,
                                         const ShadowTable& shadows,
                                         bool strict_order = true);
TransitionOutcome SuccessorDirectedCycle(const Signature& q,
                                         DirectedSegment d,
                                         const ShadowTable& shadows,
                                         bool strict_order = true);

// Dispatches on q.family; `label` must match the family's label kind.
TransitionOutcome Successor(const Signature& q, Label label,
                            const ShadowTable& shadows,
                            bool strict_order = true);

// Whether the class gets an edge to the sink: every cf state, spanning trees
// with no white point and a single block, closed spanning cycles.
bool IsAccepting(const Signature& q);

LabelKind LabelKindOf(Family family);
// Smallest point count each family accepts: cf 1, st 2, sc/dsc 3.
int MinimumPoints(Family family);

class CompileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using TransitionObserver = std::function<void(
    const Signature& from, Label label, const TransitionOutcome& outcome)>;

struct CompileOptions {
  // Re-checks every new state: non-crossing partitions, balanced matchings,
  // even gray count for cycles, no path ending at the leftmost point.
  // Violations throw std::logic_error.
  bool check_invariants = false;
  // Mutation switch for the oracle tests; see CommonChecks.
  bool strict_order = true;
  // Off keeps dead-end states; the path set is the same either way.
  bool trim = true;
  // Called for every accepted transition, in discovery order.
  TransitionObserver observer;
};

struct CompileStats {
  // Distinct signatures discovered, the empty state included.
  std::uint64_t states = 0;
  // Largest breadth-first layer.
  std::uint64_t peak_layer = 0;
  std::uint64_t transitions = 0;
  std::uint64_t untrimmed_edges = 0;
  double build_ms = 0;
};

struct CompileResult {
  CombinationGraph graph;
  CompileStats stats;
};

// Breadth-first search over signatures from the empty state; candidate
// labels are tried in sorted order, so node numbering is reproducible. Throws CompileError when the point set is too
// small for the family.
CompileResult CompileDetailed(const PointSet& points, Family family,
                              const CompileOptions& options = {});

CombinationGraph Compile(const PointSet& points, Family family);

}  // namespace cfgraph

#endif  // CFGRAPH_COMPILERS_H_
