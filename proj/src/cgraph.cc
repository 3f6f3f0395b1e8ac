#include "cfgraph/cgraph.h"

#include <algorithm>
#include <mutex>
#include <ostream>

namespace cfgraph {

std::string FormatSolution(const Solution& solution, LabelKind kind) {
  Solution sorted = solution;
  std::sort(sorted.begin(), sorted.end());
  const char* sep = kind == LabelKind::kSegment ? "-" : ">";
  std::string out;
  for (const Label& label : sorted) {
    if (label.unlabeled()) continue;
    if (!out.empty()) out += ' ';
    out += std::to_string(label.first() + 1);
    out += sep;
    out += std::to_string(label.second() + 1);
  }
  return out;
}

struct CombinationGraph::Caches {
  std::once_flag counts_once;
  std::vector<BigCount> counts;
  std::once_flag sums_once;
  std::vector<BigCount> sums;
};

CombinationGraph::CombinationGraph(LabelKind kind, NodeId source, NodeId sink,
                                   std::vector<std::size_t> offsets,
                                   std::vector<Edge> edges,
                                   std::vector<NodeId> topo)
    : kind_(kind),
      source_(source),
      sink_(sink),
      offsets_(std::move(offsets)),
      edges_(std::move(edges)),
      topo_(std::move(topo)),
      caches_(std::make_unique<Caches>()) {}

CombinationGraph::CombinationGraph(CombinationGraph&&) noexcept = default;
CombinationGraph& CombinationGraph::operator=(CombinationGraph&&) noexcept =
    default;
CombinationGraph::~CombinationGraph() = default;

CombinationGraph CombinationGraph::Empty(LabelKind kind) {
  return CombinationGraph(kind, 0, 0, {}, {}, {});
}

const BigCount& CombinationGraph::PathCount(NodeId node) const {
  std::call_once(caches_->counts_once, [this] {
    std::vector<BigCount>& counts = caches_->counts;
    counts.assign(node_count(), 0);
    for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
      const NodeId node = *it;
      if (node == sink_) {
        counts[node] = 1;
        continue;
      }
      BigCount& total = counts[node];
      for (const Edge& e : out_edges(node)) total += counts[e.target];
    }
  });
  return caches_->counts[node];
}

BigCount CombinationGraph::Count() const {
  if (empty()) return 0;
  return PathCount(source_);
}

std::span<const BigCount> CombinationGraph::CumulativeCounts(
    NodeId node) const {
  std::call_once(caches_->sums_once, [this] {
    std::vector<BigCount>& sums = caches_->sums;
    sums.resize(edges_.size());
    for (NodeId v = 0; v < node_count(); ++v) {
      BigCount running = 0;
      for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
        running += PathCount(edges_[i].target);
        sums[i] = running;
      }
    }
  });
  return {caches_->sums.data() + offsets_[node],
          caches_->sums.data() + offsets_[node + 1]};
}

CombinationGraph GraphBuilder::Build() && {
  if (node_count_ == 0) return CombinationGraph::Empty(kind_);
  if (!source_ || !sink_ || *source_ >= node_count_ ||
      *sink_ >= node_count_ || *source_ == *sink_) {
    throw GraphError(GraphErrorCode::kMalformed,
                     "source and sink must be two distinct nodes");
  }
  const NodeId sink = *sink_;
  for (RawEdge& e : edges_) {
    if (e.to == kPendingSink) e.to = sink;
    if (e.from >= node_count_ || e.to >= node_count_) {
      throw GraphError(GraphErrorCode::kMalformed, "edge endpoint out of range");
    }
    if (e.from == sink) {
      throw GraphError(GraphErrorCode::kMalformed, "sink has an out-edge");
    }
    if (e.label.unlabeled() && e.to != sink) {
      throw GraphError(GraphErrorCode::kMalformed,
                       "unlabeled edge not ending at the sink");
    }
  }
  auto by_source_then_label = [](const RawEdge& a, const RawEdge& b) {
    if (a.from != b.from) return a.from < b.from;
    return a.label < b.label;
  };
  if (!std::is_sorted(edges_.begin(), edges_.end(), by_source_then_label)) {
    std::stable_sort(edges_.begin(), edges_.end(), by_source_then_label);
  }

  std::vector<std::size_t> offsets(node_count_ + 1, 0);
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  std::vector<NodeId> indegree(node_count_, 0);
  for (const RawEdge& e : edges_) {
    ++offsets[e.from + 1];
    ++indegree[e.to];
    edges.push_back({e.to, e.label});
  }
  edges_.clear();
  edges_.shrink_to_fit();
  for (NodeId v = 0; v < node_count_; ++v) offsets[v + 1] += offsets[v];

  // Kahn's algorithm; FIFO over ascending ids keeps the order deterministic.
  std::vector<NodeId> topo;
  topo.reserve(node_count_);
  for (NodeId v = 0; v < node_count_; ++v) {
    if (indegree[v] == 0) topo.push_back(v);
  }
  for (std::size_t head = 0; head < topo.size(); ++head) {
    const NodeId v = topo[head];
    for (std::size_t i = offsets[v]; i < offsets[v + 1]; ++i) {
      if (--indegree[edges[i].target] == 0) topo.push_back(edges[i].target);
    }
  }
  if (topo.size() != node_count_) {
    throw GraphError(GraphErrorCode::kCyclic, "combination graph has a cycle");
  }
  return CombinationGraph(kind_, *source_, sink, std::move(offsets),
                          std::move(edges), std::move(topo));
}

CombinationGraph Trim(const CombinationGraph& graph) {
  if (graph.empty()) return CombinationGraph::Empty(graph.label_kind());
  const NodeId n = graph.node_count();

  std::vector<char> forward(n, 0);
  std::vector<NodeId> stack = {graph.source()};
  forward[graph.source()] = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (const Edge& e : graph.out_edges(v)) {
      if (!forward[e.target]) {
        forward[e.target] = 1;
        stack.push_back(e.target);
      }
    }
  }

  // Reverse topological sweep decides co-reachability without a reverse
  // adjacency list.
  std::vector<char> backward(n, 0);
  backward[graph.sink()] = 1;
  const auto topo = graph.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    for (const Edge& e : graph.out_edges(*it)) {
      if (backward[e.target]) {
        backward[*it] = 1;
        break;
      }
    }
  }

  if (!forward[graph.source()] || !backward[graph.source()]) {
    return CombinationGraph::Empty(graph.label_kind());
  }

  constexpr NodeId kDropped = ~NodeId{0};
  std::vector<NodeId> remap(n, kDropped);
  GraphBuilder builder(graph.label_kind());
  for (NodeId v = 0; v < n; ++v) {
    if (forward[v] && backward[v]) remap[v] = builder.AddNode();
  }
  for (NodeId v = 0; v < n; ++v) {
    if (remap[v] == kDropped) continue;
    for (const Edge& e : graph.out_edges(v)) {
      if (remap[e.target] != kDropped) {
        builder.AddEdge(remap[v], remap[e.target], e.label);
      }
    }
  }
  builder.SetSource(remap[graph.source()]);
  builder.SetSink(remap[graph.sink()]);
  return std::move(builder).Build();
}

GraphStats Stats(const CombinationGraph& graph) {
  GraphStats stats;
  stats.nodes = graph.node_count();
  stats.edges = graph.edge_count();
  stats.count = graph.Count();
  if (graph.empty()) return stats;

  std::vector<int> height(graph.node_count(), -1);
  height[graph.sink()] = 0;
  const auto topo = graph.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    for (const Edge& e : graph.out_edges(*it)) {
      if (height[e.target] >= 0) {
        height[*it] = std::max(height[*it], height[e.target] + 1);
      }
    }
  }
  stats.height = std::max(height[graph.source()], 0);
  return stats;
}

SolutionEnumerator::SolutionEnumerator(const CombinationGraph& graph,
                                       std::optional<std::uint64_t> limit)
    : graph_(graph), limit_(limit) {
  if (!graph_.empty()) {
    frames_.push_back({graph_.source(), 0, Label::Unlabeled()});
  }
}

bool SolutionEnumerator::Next(Solution* out) {
  if (limit_ && produced_ >= *limit_) return false;
  while (!frames_.empty()) {
    Frame& top = frames_.back();
    const auto edges = graph_.out_edges(top.node);
    if (top.next_edge == edges.size()) {
      frames_.pop_back();
      continue;
    }
    const Edge& e = edges[top.next_edge++];
    if (e.target != graph_.sink()) {
      frames_.push_back({e.target, 0, e.label});
      continue;
    }
    out->clear();
    for (std::size_t i = 1; i < frames_.size(); ++i) {
      out->push_back(frames_[i].entered_by);
    }
    if (!e.label.unlabeled()) out->push_back(e.label);
    std::sort(out->begin(), out->end());
    ++produced_;
    return true;
  }
  return false;
}

std::vector<Solution> Enumerate(const CombinationGraph& graph,
                                std::optional<std::uint64_t> limit) {
  std::vector<Solution> all;
  SolutionEnumerator enumerator(graph, limit);
  Solution solution;
  while (enumerator.Next(&solution)) all.push_back(solution);
  return all;
}

Solution Unrank(const CombinationGraph& graph, const BigCount& rank) {
  if (graph.empty() || rank < 1 || rank > graph.Count()) {
    throw GraphError(GraphErrorCode::kEmptyGraph,
                     "rank outside [1, count] or graph without solutions");
  }
  Solution solution;
  BigCount remaining = rank;
  NodeId node = graph.source();
  while (node != graph.sink()) {
    const auto sums = graph.CumulativeCounts(node);
    const auto it = std::lower_bound(sums.begin(), sums.end(), remaining);
    const std::size_t index = static_cast<std::size_t>(it - sums.begin());
    if (index > 0) remaining -= sums[index - 1];
    const Edge& e = graph.out_edges(node)[index];
    if (!e.label.unlabeled()) solution.push_back(e.label);
    node = e.target;
  }
  std::sort(solution.begin(), solution.end());
  return solution;
}

BigCount UniformRank(const BigCount& bound, std::mt19937_64& rng) {
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const unsigned top_bits = bits % 64;
  std::vector<std::uint64_t> buffer(words);
  BigCount draw;
  while (true) {
    for (auto& w : buffer) w = rng();
    if (top_bits != 0) buffer.back() &= (std::uint64_t{1} << top_bits) - 1;
    mpz_import(draw.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0,
               buffer.data());
    if (draw < bound) return draw + 1;
  }
}

std::vector<Solution> Sample(const CombinationGraph& graph,
                             std::mt19937_64& rng, std::size_t k) {
  const BigCount total = graph.Count();
  if (total == 0) {
    throw GraphError(GraphErrorCode::kEmptyGraph,
                     "cannot sample from a graph without solutions");
  }
  std::vector<Solution> samples;
  samples.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    samples.push_back(Unrank(graph, UniformRank(total, rng)));
  }
  return samples;
}

namespace {

constexpr std::size_t kNoChoice = ~std::size_t{0};

class PathChooser {
 public:
  PathChooser(const CombinationGraph& graph, std::vector<std::size_t>& choice)
      : graph_(graph), choice_(choice) {}

  // Lexicographic comparison of the label sequences of the chosen paths
  // starting with edges `a` and `b`; the end of a path sorts first.
  int CompareFrom(const Edge& a, const Edge& b) const {
    const Edge* x = &a;
    const Edge* y = &b;
    while (true) {
      if (x->label != y->label) return x->label < y->label ? -1 : 1;
      if (x->label.unlabeled() || x->target == graph_.sink() ||
          y->target == graph_.sink()) {
        const bool x_done = x->target == graph_.sink();
        const bool y_done = y->target == graph_.sink();
        if (x_done && y_done) return 0;
        return x_done ? -1 : 1;
      }
      x = &Chosen(x->target);
      y = &Chosen(y->target);
    }
  }

 private:
  const Edge& Chosen(NodeId node) const {
    return graph_.out_edges(node)[choice_[node]];
  }

  const CombinationGraph& graph_;
  const std::vector<std::size_t>& choice_;
};

}  // namespace

OptimizationResult Optimize(const CombinationGraph& graph,
                            const WeightFunction& weight, Sense sense) {
  if (graph.empty()) {
    throw GraphError(GraphErrorCode::kEmptyGraph,
                     "cannot optimize over a graph without solutions");
  }
  const NodeId n = graph.node_count();
  std::vector<std::int64_t> best(n, 0);
  std::vector<char> reachable(n, 0);
  std::vector<std::size_t> choice(n, kNoChoice);
  reachable[graph.sink()] = 1;
  PathChooser chooser(graph, choice);

  const auto topo = graph.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const NodeId node = *it;
    const auto edges = graph.out_edges(node);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      if (!reachable[e.target]) continue;
      const std::int64_t w = e.label.unlabeled() ? 0 : weight(e.label);
      std::int64_t value;
      if (__builtin_add_overflow(w, best[e.target], &value)) {
        throw GraphError(GraphErrorCode::kOverflow,
                         "path weight overflows 64 bits");
      }
      bool take = !reachable[node];
      if (!take) {
        const bool better =
            sense == Sense::kMin ? value < best[node] : value > best[node];
        take = better ||
               (value == best[node] &&
                chooser.CompareFrom(e, edges[choice[node]]) < 0);
      }
      if (take) {
        reachable[node] = 1;
        best[node] = value;
        choice[node] = i;
      }
    }
  }
  if (!reachable[graph.source()]) {
    throw GraphError(GraphErrorCode::kEmptyGraph,
                     "cannot optimize over a graph without solutions");
  }

  OptimizationResult result;
  result.value = best[graph.source()];
  NodeId node = graph.source();
  while (node != graph.sink()) {
    const Edge& e = graph.out_edges(node)[choice[node]];
    if (!e.label.unlabeled()) result.solution.push_back(e.label);
    node = e.target;
  }
  std::sort(result.solution.begin(), result.solution.end());
  return result;
}

void WriteDot(std::ostream& out, const CombinationGraph& graph) {
  out << "digraph combination_graph {\n";
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    out << "  n" << v;
    if (v == graph.source()) {
      out << " [label=\"source\"]";
    } else if (v == graph.sink()) {
      out << " [label=\"sink\"]";
    }
    out << ";\n";
  }
  const char* arrow = graph.label_kind() == LabelKind::kSegment ? "-" : "->";
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    for (const Edge& e : graph.out_edges(v)) {
      out << "  n" << v << " -> n" << e.target;
      if (!e.label.unlabeled()) {
        out << " [label=\"" << e.label.first() + 1 << arrow
            << e.label.second() + 1 << "\"]";
      }
      out << ";\n";
    }
  }
  out << "}\n";
}

}  // namespace cfgraph
