#include "cfgraph/compilers.h"

#include <chrono>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cfgraph {

std::optional<RejectReason> CommonChecks(const Signature& q, Segment s,
                                         const ShadowTable& shadows,
                                         bool strict_order) {
  if ((shadows.upp(s) & (q.gray | q.black)) != 0) {
    return RejectReason::kUppHit;
  }
  if ((s.points() & q.black) != 0) return RejectReason::kEndpointShadowed;
  if (q.mark) {
    const bool ok = strict_order ? s.hi > *q.mark : s.hi >= *q.mark;
    if (!ok) return RejectReason::kOrderViolation;
  }
  return std::nullopt;
}

namespace {

TransitionOutcome Accept(Signature next, TransitionOutcome::Kind kind =
                                             TransitionOutcome::Kind::kAccept) {
  TransitionOutcome out;
  out.kind = kind;
  out.next = std::move(next);
  return out;
}

// Cycle families: endpoints go white -> gray -> black with their degree.
void RecolorByDegree(Signature& next, const Signature& q, Segment s) {
  next.gray = q.gray ^ s.points();
  next.black = q.black | (q.gray & s.points());
  next.mark = s.lo;
}

}  // namespace

TransitionOutcome SuccessorCrossingFree(const Signature& q, Segment s,
                                        const ShadowTable& shadows,
                                        bool strict_order) {
  if (auto why = CommonChecks(q, s, shadows, strict_order)) {
    return TransitionOutcome::Reject(*why);
  }
  const PointMask low = shadows.low(s);
  Signature next = q;
  next.gray = (q.gray | s.points()) & ~low;
  next.black = q.black | low;
  next.mark = s.lo;
  if (next == q) return TransitionOutcome::Reject(RejectReason::kSelfLoop);
  return Accept(std::move(next));
}

TransitionOutcome SuccessorSpanningTree(const Signature& q, Segment s,
                                        const ShadowTable& shadows,
                                        bool strict_order) {
  if (auto why = CommonChecks(q, s, shadows, strict_order)) {
    return TransitionOutcome::Reject(*why);
  }
  const PointMask low = shadows.low(s);
  const PointMask gray_after = (q.gray | s.points()) & ~low;
  auto update = UpdatePartition(std::get<NonCrossingPartition>(q.connector),
                                q.gray, q.white(), s, low, gray_after);
  if (update.kind != decltype(update)::Kind::kExtended) {
    return TransitionOutcome::Reject(update.reason);
  }
  Signature next;
  next.family = q.family;
  next.n = q.n;
  next.gray = gray_after;
  next.black = q.black | low;
  next.mark = s.lo;
  next.connector = std::move(update.connector);
  if (next == q) return TransitionOutcome::Reject(RejectReason::kSelfLoop);
  return Accept(std::move(next));
}

TransitionOutcome SuccessorSpanningCycle(const Signature& q, Segment s,
                                         const ShadowTable& shadows,
                                         bool strict_order) {
  if (auto why = CommonChecks(q, s, shadows, strict_order)) {
    return TransitionOutcome::Reject(*why);
  }
  if ((shadows.low(s) & ~q.black) != 0) {
    return TransitionOutcome::Reject(RejectReason::kLowDegreeUnder);
  }
  const auto& matching = std::get<NonCrossingMatching>(q.connector);
  auto update = UpdateMatching(matching, q.gray, s);
  using Kind = decltype(update)::Kind;
  if (update.kind == Kind::kReject) {
    return TransitionOutcome::Reject(update.reason);
  }
  Signature next;
  next.family = q.family;
  next.n = q.n;
  RecolorByDegree(next, q, s);
  if (update.kind == Kind::kClosing) {
    if (q.white() != 0 || matching.pair_count() != 1) {
      return TransitionOutcome::Reject(RejectReason::kIsolatedCycle);
    }
    next.connector = NonCrossingMatching();
    return Accept(std::move(next), TransitionOutcome::Kind::kAcceptFinal);
  }
  next.connector = update.connector;
  return Accept(std::move(next));
}

TransitionOutcome SuccessorDirectedCycle(const Signature& q,
                                         DirectedSegment d,
                                         const ShadowTable& shadows,
                                         bool strict_order) {
  const Segment s = d.underlying();
  if (auto why = CommonChecks(q, s, shadows, strict_order)) {
    return TransitionOutcome::Reject(*why);
  }
  if ((shadows.low(s) & ~q.black) != 0) {
    return TransitionOutcome::Reject(RejectReason::kLowDegreeUnder);
  }
  const auto& matching = std::get<DirectedMatching>(q.connector);
  auto update = UpdateDirectedMatching(matching, q.gray, d);
  using Kind = decltype(update)::Kind;
  if (update.kind == Kind::kReject) {
    return TransitionOutcome::Reject(update.reason);
  }
  Signature next;
  next.family = q.family;
  next.n = q.n;
  RecolorByDegree(next, q, s);
  if (update.kind == Kind::kClosing) {
    if (q.white() != 0 || matching.shape().pair_count() != 1) {
      return TransitionOutcome::Reject(RejectReason::kIsolatedCycle);
    }
    next.connector = DirectedMatching();
    return Accept(std::move(next), TransitionOutcome::Kind::kAcceptFinal);
  }
  next.connector = update.connector;
  return Accept(std::move(next));
}

TransitionOutcome Successor(const Signature& q, Label label,
                            const ShadowTable& shadows, bool strict_order) {
  switch (q.family) {
    case Family::kCrossingFree:
      return SuccessorCrossingFree(q, label.segment(), shadows, strict_order);
    case Family::kSpanningTree:
      return SuccessorSpanningTree(q, label.segment(), shadows, strict_order);
    case Family::kSpanningCycle:
      return SuccessorSpanningCycle(q, label.segment(), shadows, strict_order);
    case Family::kDirectedCycle:
      return SuccessorDirectedCycle(q, label.directed(), shadows,
                                    strict_order);
  }
  throw std::logic_error("unknown family");
}

bool IsAccepting(const Signature& q) {
  switch (q.family) {
    case Family::kCrossingFree:
      return true;
    case Family::kSpanningTree:
      return q.white() == 0 &&
             std::get<NonCrossingPartition>(q.connector).block_count() == 1;
    case Family::kSpanningCycle:
    case Family::kDirectedCycle:
      return q.white() == 0 && q.gray == 0 && q.mark.has_value();
  }
  return false;
}

LabelKind LabelKindOf(Family family) {
  return family == Family::kDirectedCycle ? LabelKind::kDirected
                                          : LabelKind::kSegment;
}

int MinimumPoints(Family family) {
  switch (family) {
    case Family::kCrossingFree:
      return 1;
    case Family::kSpanningTree:
      return 2;
    case Family::kSpanningCycle:
    case Family::kDirectedCycle:
      return 3;
  }
  return 1;
}

namespace {

std::vector<Label> CandidateLabels(int n, Family family) {
  std::vector<Label> labels;
  if (family == Family::kDirectedCycle) {
    for (PointId h = 0; h < n; ++h) {
      for (PointId t = 0; t < n; ++t) {
        if (h != t) labels.push_back(Label::Of(DirectedSegment{h, t}));
      }
    }
  } else {
    for (PointId i = 0; i < n; ++i) {
      for (PointId j = i + 1; j < n; ++j) {
        labels.push_back(Label::Of(Segment(i, j)));
      }
    }
  }
  return labels;
}

void CheckInvariants(const Signature& from, const Signature& next) {
  auto fail = [&](const char* what) {
    throw std::logic_error(std::string("invariant violated (") + what +
                           "): " + from.DebugString() + " -> " +
                           next.DebugString());
  };
  if ((next.gray & next.black) != 0) fail("gray and black overlap");
  if (((next.gray | next.black) & ~next.all()) != 0) fail("point range");
  if (next.Encode() == from.Encode()) fail("self loop");
  const int gray_count = PopCount(next.gray);
  switch (next.family) {
    case Family::kCrossingFree:
      break;
    case Family::kSpanningTree: {
      const auto& partition = std::get<NonCrossingPartition>(next.connector);
      if (partition.size() != gray_count) fail("partition size");
      if (!partition.IsNonCrossing()) fail("crossing partition");
      break;
    }
    case Family::kSpanningCycle: {
      const auto& matching = std::get<NonCrossingMatching>(next.connector);
      if (gray_count % 2 != 0) fail("odd gray count");
      if (matching.length() != gray_count) fail("matching size");
      if (!matching.IsBalanced()) fail("unbalanced matching");
      break;
    }
    case Family::kDirectedCycle: {
      const auto& directed = std::get<DirectedMatching>(next.connector);
      if (gray_count % 2 != 0) fail("odd gray count");
      if (directed.shape().length() != gray_count) fail("matching size");
      if (!directed.shape().IsBalanced()) fail("unbalanced matching");
      if (gray_count > 0 && directed.HasTailAt(0, next.gray)) {
        fail("path ends at the leftmost point");
      }
      break;
    }
  }
}

}  // namespace

CompileResult CompileDetailed(const PointSet& points, Family family,
                              const CompileOptions& options) {
  const int n = static_cast<int>(points.size());
  if (n < MinimumPoints(family)) {
    throw CompileError(std::string(FamilyName(family)) + " needs at least " +
                       std::to_string(MinimumPoints(family)) + " points, got " +
                       std::to_string(n));
  }
  const auto start = std::chrono::steady_clock::now();
  const ShadowTable shadows(points);
  const std::vector<Label> candidates = CandidateLabels(n, family);
  // Only cf signatures can recur at different depths; the other families
  // grow the black set or the degree sum with every segment.
  const bool global_index = family == Family::kCrossingFree;

  GraphBuilder builder(LabelKindOf(family));
  CompileStats stats;

  std::vector<Signature> layer{Signature::Empty(family, n)};
  std::vector<NodeId> layer_ids{builder.AddNode()};
  std::unordered_map<std::string, NodeId> global;
  if (global_index) global.emplace(layer.front().Encode(), layer_ids.front());
  stats.states = 1;

  while (!layer.empty()) {
    stats.peak_layer =
        std::max<std::uint64_t>(stats.peak_layer, layer.size());
    std::unordered_map<std::string, NodeId> local;
    auto& index = global_index ? global : local;
    std::vector<Signature> next_layer;
    std::vector<NodeId> next_ids;

    for (std::size_t k = 0; k < layer.size(); ++k) {
      const Signature& q = layer[k];
      const NodeId from = layer_ids[k];
      if (IsAccepting(q)) {
        builder.AddEdge(from, GraphBuilder::kPendingSink, Label::Unlabeled());
        ++stats.untrimmed_edges;
      }
      for (Label label : candidates) {
        TransitionOutcome outcome =
            Successor(q, label, shadows, options.strict_order);
        if (!outcome.accepted()) {
          if (outcome.reason == RejectReason::kConnectorCrossing) {
            throw std::logic_error("connector crossing at " + q.DebugString());
          }
          continue;
        }
        if (options.check_invariants) CheckInvariants(q, outcome.next);
        if (options.observer) options.observer(q, label, outcome);
        ++stats.transitions;

        std::string key = outcome.next.Encode();
        NodeId to;
        auto it = index.find(key);
        if (it != index.end()) {
          to = it->second;
        } else {
          to = builder.AddNode();
          index.emplace(std::move(key), to);
          next_layer.push_back(std::move(outcome.next));
          next_ids.push_back(to);
          ++stats.states;
        }
        builder.AddEdge(from, to, label);
        ++stats.untrimmed_edges;
      }
    }
    layer = std::move(next_layer);
    layer_ids = std::move(next_ids);
  }

  const NodeId sink = builder.AddNode();
  builder.SetSource(0);
  builder.SetSink(sink);
  CombinationGraph graph = std::move(builder).Build();
  if (options.trim) graph = Trim(graph);
  stats.build_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return {std::move(graph), stats};
}

CombinationGraph Compile(const PointSet& points, Family family) {
  return std::move(CompileDetailed(points, family).graph);
}

}  // namespace cfgraph
