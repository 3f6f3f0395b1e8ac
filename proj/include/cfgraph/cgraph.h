#ifndef CFGRAPH_CGRAPH_H_
#define CFGRAPH_CGRAPH_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cfgraph/geometry.h"

namespace cfgraph {

using BigCount = mpz_class;
using NodeId = std::uint32_t;

enum class LabelKind { kSegment, kDirected };

// An edge label: a segment (lo, hi), a directed segment (head, tail), or the
// unlabeled marker used on edges into the sink. Unlabeled orders before every
// real label, so a path that stops compares smaller than one that continues.
class Label {
 public:
  constexpr Label() = default;
  static constexpr Label Unlabeled() { return Label(); }
  static Label Of(Segment s) { return Label(s.lo, s.hi); }
  static Label Of(DirectedSegment d) { return Label(d.head, d.tail); }

  bool unlabeled() const { return first_ == kNone; }
  PointId first() const { return first_; }
  PointId second() const { return second_; }
  Segment segment() const { return Segment(first_, second_); }
  DirectedSegment directed() const { return {first_, second_}; }

  friend bool operator==(const Label&, const Label&) = default;
  friend std::strong_ordering operator<=>(const Label& a, const Label& b) {
    return a.Key() <=> b.Key();
  }

 private:
  static constexpr std::uint8_t kNone = 0xFF;
  constexpr Label(int first, int second)
      : first_(static_cast<std::uint8_t>(first)),
        second_(static_cast<std::uint8_t>(second)) {}
  int Key() const { return unlabeled() ? -1 : first_ * 256 + second_; }

  std::uint8_t first_ = kNone;
  std::uint8_t second_ = kNone;
};

// A combination: the sorted labels of one source-sink path.
using Solution = std::vector<Label>;

// "i-j" for segments, "i>j" for directed segments, 1-based ids, labels
// sorted and space-separated.
std::string FormatSolution(const Solution& solution, LabelKind kind);

struct Edge {
  NodeId target;
  Label label;
};

enum class GraphErrorCode { kCyclic, kMalformed, kEmptyGraph, kOverflow };

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  GraphErrorCode code() const { return code_; }

 private:
  GraphErrorCode code_;
};

class CombinationGraph;

// Collects nodes and edges, then validates them into a CombinationGraph.
class GraphBuilder {
 public:
  // Stands for the sink in AddEdge before the sink node exists.
  static constexpr NodeId kPendingSink = ~NodeId{0};

  explicit GraphBuilder(LabelKind kind) : kind_(kind) {}

  NodeId AddNode() { return node_count_++; }
  void AddNodes(NodeId count) { node_count_ += count; }
  NodeId node_count() const { return node_count_; }
  void AddEdge(NodeId from, NodeId to, Label label) {
    edges_.push_back({from, to, label});
  }
  void SetSource(NodeId id) { source_ = id; }
  void SetSink(NodeId id) { sink_ = id; }

  // Throws GraphError(kMalformed) if the sink has out-edges, an edge not
  // ending at the sink is unlabeled, or an endpoint is out of range, and
  // GraphError(kCyclic) if the edges contain a cycle. Out-edges of every node
  // are ordered by label (stable).
  CombinationGraph Build() &&;

 private:
  struct RawEdge {
    NodeId from;
    NodeId to;
    Label label;
  };

  LabelKind kind_;
  NodeId node_count_ = 0;
  std::optional<NodeId> source_;
  std::optional<NodeId> sink_;
  std::vector<RawEdge> edges_;
};

// A labeled DAG with source and sink whose source-sink paths are the
// solutions. Immutable; the path counts and cumulative sums used by the
// queries are computed on first use and are safe to request concurrently.
class CombinationGraph {
 public:
  // The graph with no nodes: no solutions at all.
  static CombinationGraph Empty(LabelKind kind);

  CombinationGraph(CombinationGraph&&) noexcept;
  CombinationGraph& operator=(CombinationGraph&&) noexcept;
  ~CombinationGraph();

  LabelKind label_kind() const { return kind_; }
  bool empty() const { return node_count() == 0; }
  NodeId node_count() const {
    return static_cast<NodeId>(offsets_.empty() ? 0 : offsets_.size() - 1);
  }
  std::size_t edge_count() const { return edges_.size(); }
  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }

  std::span<const Edge> out_edges(NodeId node) const {
    return {edges_.data() + offsets_[node], edges_.data() + offsets_[node + 1]};
  }
  std::span<const NodeId> topological_order() const { return topo_; }

  // Number of node-to-sink paths, cnt(node).
  const BigCount& PathCount(NodeId node) const;
  // Number of solutions, cnt(source); 0 for the empty graph.
  BigCount Count() const;

  // Running sums of PathCount over the out-edges of `node`, in edge order.
  std::span<const BigCount> CumulativeCounts(NodeId node) const;

 private:
  friend class GraphBuilder;
  struct Caches;

  CombinationGraph(LabelKind kind, NodeId source, NodeId sink,
                   std::vector<std::size_t> offsets, std::vector<Edge> edges,
                   std::vector<NodeId> topo);

  LabelKind kind_;
  NodeId source_ = 0;
  NodeId sink_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Edge> edges_;
  std::vector<NodeId> topo_;
  std::unique_ptr<Caches> caches_;
};

// Removes every node and edge not on a source-sink path, keeping the
// relative order of the survivors. Returns the empty graph when the source
// cannot reach the sink.
CombinationGraph Trim(const CombinationGraph& graph);

struct GraphStats {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  // Most edges on a source-sink path, the unlabeled sink edge included.
  int height = 0;
  BigCount count;
};

GraphStats Stats(const CombinationGraph& graph);

// Depth-first enumeration of the solutions, out-edges taken in label order.
// Holds a reference to the graph, which should be trimmed: then every
// solution is produced after O(height) steps.
class SolutionEnumerator {
 public:
  explicit SolutionEnumerator(const CombinationGraph& graph,
                              std::optional<std::uint64_t> limit = {});
  SolutionEnumerator(CombinationGraph&&, std::optional<std::uint64_t> = {}) =
      delete;

  // Writes the next solution into `out`; false once exhausted.
  bool Next(Solution* out);
  std::uint64_t produced() const { return produced_; }

 private:
  struct Frame {
    NodeId node;
    std::size_t next_edge;
    Label entered_by;
  };

  const CombinationGraph& graph_;
  std::optional<std::uint64_t> limit_;
  std::uint64_t produced_ = 0;
  std::vector<Frame> frames_;
};

// Convenience wrapper collecting up to `limit` solutions.
std::vector<Solution> Enumerate(const CombinationGraph& graph,
                                std::optional<std::uint64_t> limit = {});

// The rank-th path (1-based) in child order: at each node, the first out-edge
// whose cumulative count reaches the remaining rank. Requires
// 1 <= rank <= Count().
Solution Unrank(const CombinationGraph& graph, const BigCount& rank);

// Uniform integer in [1, bound], by rejection over the bit length of bound.
BigCount UniformRank(const BigCount& bound, std::mt19937_64& rng);

// k independent uniform samples. Throws GraphError(kEmptyGraph) when the
// graph has no solutions.
std::vector<Solution> Sample(const CombinationGraph& graph,
                             std::mt19937_64& rng, std::size_t k);

enum class Sense { kMin, kMax };

using WeightFunction = std::function<std::int64_t(Label)>;

struct OptimizationResult {
  std::int64_t value = 0;
  Solution solution;
};

// Extremal path under the sum of label weights (unlabeled edges weigh 0).
// Ties go to the lexicographically smallest label sequence along the path.
// Throws GraphError(kEmptyGraph) when there is no solution.
OptimizationResult Optimize(const CombinationGraph& graph,
                            const WeightFunction& weight, Sense sense);

// Graphviz rendering: one node per state, edges labeled "i-j" or "i->j".
void WriteDot(std::ostream& out, const CombinationGraph& graph);

}  // namespace cfgraph

#endif  // CFGRAPH_CGRAPH_H_
