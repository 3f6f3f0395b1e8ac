#include "cfgraph/states.h"

#include <algorithm>
#include <array>
#include <bit>

namespace cfgraph {

namespace {

int RankIn(PointMask set, PointId p) { return PopCount(set & (Bit(p) - 1)); }

std::vector<PointId> Members(PointMask set) {
  std::vector<PointId> ids;
  ids.reserve(PopCount(set));
  while (set != 0) {
    ids.push_back(std::countr_zero(set));
    set &= set - 1;
  }
  return ids;
}

void AppendBits(std::string& out, std::uint64_t bits, int count) {
  for (int i = 0; i < count; i += 8) {
    out.push_back(static_cast<char>((bits >> i) & 0xFF));
  }
}

}  // namespace

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kCrossingFree:
      return "cf";
    case Family::kSpanningTree:
      return "st";
    case Family::kSpanningCycle:
      return "sc";
    case Family::kDirectedCycle:
      return "dsc";
  }
  return "?";
}

std::optional<Family> ParseFamily(std::string_view name) {
  for (Family f : {Family::kCrossingFree, Family::kSpanningTree,
                   Family::kSpanningCycle, Family::kDirectedCycle}) {
    if (FamilyName(f) == name) return f;
  }
  return std::nullopt;
}

std::string_view RejectReasonName(RejectReason reason) {
  switch (reason) {
    case RejectReason::kUppHit:
      return "UppHit";
    case RejectReason::kEndpointShadowed:
      return "EndpointShadowed";
    case RejectReason::kOrderViolation:
      return "OrderViolation";
    case RejectReason::kSelfLoop:
      return "SelfLoop";
    case RejectReason::kHidden:
      return "Hidden";
    case RejectReason::kCycle:
      return "Cycle";
    case RejectReason::kLowDegreeUnder:
      return "LowDegreeUnder";
    case RejectReason::kIsolatedCycle:
      return "IsolatedCycle";
    case RejectReason::kDirection:
      return "Direction";
    case RejectReason::kP1Sink:
      return "P1Sink";
    case RejectReason::kConnectorCrossing:
      return "ConnectorCrossing";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// NonCrossingPartition

NonCrossingPartition::NonCrossingPartition(std::vector<std::uint8_t> labels)
    : labels_(std::move(labels)) {}

NonCrossingPartition NonCrossingPartition::FromBlocks(
    std::span<const PointMask> blocks, PointMask gray) {
  std::vector<std::uint8_t> labels;
  labels.reserve(PopCount(gray));
  std::array<int, kMaxPoints> renumber;
  renumber.fill(-1);
  int next = 0;
  for (PointId p : Members(gray)) {
    std::size_t block = 0;
    while (block < blocks.size() && !Contains(blocks[block], p)) ++block;
    if (renumber[block] < 0) renumber[block] = next++;
    labels.push_back(static_cast<std::uint8_t>(renumber[block]));
  }
  return NonCrossingPartition(std::move(labels));
}

std::vector<PointMask> NonCrossingPartition::Blocks(PointMask gray) const {
  std::vector<PointMask> blocks(block_count(), 0);
  const std::vector<PointId> ids = Members(gray);
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    blocks[labels_[k]] |= Bit(ids[k]);
  }
  return blocks;
}

int NonCrossingPartition::block_count() const {
  int count = 0;
  for (std::uint8_t label : labels_) count = std::max(count, label + 1);
  return count;
}

bool NonCrossingPartition::IsNonCrossing() const {
  // Scanning left to right, a block may only be revisited while it is the
  // innermost unfinished block.
  std::array<int, kMaxPoints> last;
  last.fill(-1);
  for (std::size_t k = 0; k < labels_.size(); ++k) last[labels_[k]] = k;
  std::array<bool, kMaxPoints> started{};
  std::vector<std::uint8_t> open;
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    const std::uint8_t block = labels_[k];
    if (!started[block]) {
      started[block] = true;
      open.push_back(block);
    } else if (open.empty() || open.back() != block) {
      return false;
    }
    if (last[block] == static_cast<int>(k)) open.pop_back();
  }
  return true;
}

std::string NonCrossingPartition::ToString() const {
  static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string out;
  for (std::uint8_t label : labels_) {
    out.push_back(label < 36 ? kDigits[label] : '?');
  }
  return out;
}

// ---------------------------------------------------------------------------
// NonCrossingMatching

std::optional<NonCrossingMatching> NonCrossingMatching::FromPairs(
    std::span<const std::pair<PointId, PointId>> pairs, PointMask gray) {
  PointMask covered = 0;
  std::uint64_t opens = 0;
  std::vector<std::pair<PointId, PointId>> normalized;
  normalized.reserve(pairs.size());
  for (auto [x, y] : pairs) {
    const PointId left = std::min(x, y);
    const PointId right = std::max(x, y);
    if (left == right || Contains(covered, left) || Contains(covered, right) ||
        !Contains(gray, left) || !Contains(gray, right)) {
      return std::nullopt;
    }
    covered |= Bit(left) | Bit(right);
    opens |= std::uint64_t{1} << RankIn(gray, left);
    normalized.emplace_back(left, right);
  }
  if (covered != gray) return std::nullopt;
  NonCrossingMatching matching(opens, PopCount(gray));
  // Crossing pairs still yield a balanced string, but it decodes to a
  // different matching.
  std::sort(normalized.begin(), normalized.end());
  if (matching.Pairs(gray) != normalized) return std::nullopt;
  return matching;
}

std::vector<std::pair<PointId, PointId>> NonCrossingMatching::Pairs(
    PointMask gray) const {
  const std::vector<PointId> ids = Members(gray);
  std::vector<std::pair<PointId, PointId>> pairs;
  pairs.reserve(ids.size() / 2);
  std::vector<PointId> stack;
  for (int k = 0; k < length_ && k < static_cast<int>(ids.size()); ++k) {
    if ((opens_ >> k) & 1U) {
      stack.push_back(ids[k]);
    } else if (!stack.empty()) {
      pairs.emplace_back(stack.back(), ids[k]);
      stack.pop_back();
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

bool NonCrossingMatching::IsBalanced() const {
  int depth = 0;
  for (int k = 0; k < length_; ++k) {
    depth += ((opens_ >> k) & 1U) ? 1 : -1;
    if (depth < 0) return false;
  }
  return depth == 0 && (length_ >= 64 || (opens_ >> length_) == 0);
}

std::string NonCrossingMatching::ToString() const {
  std::string out;
  for (int k = 0; k < length_; ++k) out.push_back(((opens_ >> k) & 1U) ? '(' : ')');
  return out;
}

// ---------------------------------------------------------------------------
// DirectedMatching

std::optional<DirectedMatching> DirectedMatching::FromPaths(
    std::span<const OpenPath> paths, PointMask gray) {
  std::vector<std::pair<PointId, PointId>> pairs;
  pairs.reserve(paths.size());
  for (const OpenPath& path : paths) pairs.emplace_back(path.head, path.tail);
  const auto shape = NonCrossingMatching::FromPairs(pairs, gray);
  if (!shape) return std::nullopt;
  const auto ordered = shape->Pairs(gray);
  std::uint64_t head_on_left = 0;
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    const PointId left = ordered[k].first;
    for (const OpenPath& path : paths) {
      if (path.head == left) head_on_left |= std::uint64_t{1} << k;
    }
  }
  return DirectedMatching(*shape, head_on_left);
}

std::vector<OpenPath> DirectedMatching::Paths(PointMask gray) const {
  std::vector<OpenPath> paths;
  const auto pairs = shape_.Pairs(gray);
  paths.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [left, right] = pairs[k];
    if ((head_on_left_ >> k) & 1U) {
      paths.push_back({left, right});
    } else {
      paths.push_back({right, left});
    }
  }
  return paths;
}

bool DirectedMatching::HasTailAt(PointId p, PointMask gray) const {
  for (const OpenPath& path : Paths(gray)) {
    if (path.tail == p) return true;
  }
  return false;
}

std::string DirectedMatching::ToString() const {
  std::string out = shape_.ToString();
  out.push_back(':');
  for (int k = 0; k < shape_.pair_count(); ++k) {
    out.push_back(((head_on_left_ >> k) & 1U) ? '1' : '0');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Signature

Signature Signature::Empty(Family family, int n) {
  Signature sig;
  sig.family = family;
  sig.n = n;
  switch (family) {
    case Family::kCrossingFree:
      break;
    case Family::kSpanningTree:
      sig.connector = NonCrossingPartition();
      break;
    case Family::kSpanningCycle:
      sig.connector = NonCrossingMatching();
      break;
    case Family::kDirectedCycle:
      sig.connector = DirectedMatching();
      break;
  }
  return sig;
}

std::string Signature::Encode() const {
  std::string out;
  out.reserve(3 + (n + 3) / 4 + PopCount(gray) + 2);
  out.push_back(static_cast<char>(family));
  out.push_back(static_cast<char>(n));
  for (int base = 0; base < n; base += 4) {
    unsigned byte = 0;
    for (int i = 0; i < 4 && base + i < n; ++i) {
      byte |= static_cast<unsigned>(color(base + i)) << (2 * i);
    }
    out.push_back(static_cast<char>(byte));
  }
  out.push_back(static_cast<char>(mark ? *mark : 0xFF));
  if (const auto* partition = std::get_if<NonCrossingPartition>(&connector)) {
    for (std::uint8_t label : partition->labels()) {
      out.push_back(static_cast<char>(label));
    }
  } else if (const auto* matching =
                 std::get_if<NonCrossingMatching>(&connector)) {
    AppendBits(out, matching->opens(), matching->length());
  } else if (const auto* directed =
                 std::get_if<DirectedMatching>(&connector)) {
    AppendBits(out, directed->shape().opens(), directed->shape().length());
    AppendBits(out, directed->head_on_left(), directed->shape().pair_count());
  }
  return out;
}

std::string Signature::DebugString() const {
  std::string out;
  for (PointId p = 0; p < n; ++p) {
    out.push_back("WGB"[static_cast<int>(color(p))]);
  }
  out.push_back('|');
  out += mark ? std::to_string(*mark + 1) : "-";
  out.push_back('|');
  if (const auto* partition = std::get_if<NonCrossingPartition>(&connector)) {
    out += partition->ToString();
  } else if (const auto* matching =
                 std::get_if<NonCrossingMatching>(&connector)) {
    out += matching->ToString();
  } else if (const auto* directed =
                 std::get_if<DirectedMatching>(&connector)) {
    out += directed->ToString();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Connector updates

ConnectorUpdate<NonCrossingPartition> UpdatePartition(
    const NonCrossingPartition& partition, PointMask gray_before,
    PointMask white_before, Segment s, PointMask covered,
    PointMask gray_after) {
  using Update = ConnectorUpdate<NonCrossingPartition>;
  std::vector<PointMask> blocks = partition.Blocks(gray_before);
  for (PointId w : Members(white_before)) blocks.push_back(Bit(w));

  auto block_of = [&](PointId p) -> std::size_t {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (Contains(blocks[i], p)) return i;
    }
    return blocks.size();
  };
  const std::size_t a = block_of(s.lo);
  const std::size_t b = block_of(s.hi);
  if (a == blocks.size() || b == blocks.size()) {
    return Update::Reject(RejectReason::kEndpointShadowed);
  }
  // Endpoints are never covered, so a block hidden after the merge was
  // already hidden before it.
  for (PointMask block : blocks) {
    if ((block & ~covered) == 0) return Update::Reject(RejectReason::kHidden);
  }
  if (a == b) return Update::Reject(RejectReason::kCycle);
  blocks[a] |= blocks[b];
  blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(b));

  std::vector<PointMask> restricted;
  restricted.reserve(blocks.size());
  for (PointMask block : blocks) {
    if ((block & gray_after) != 0) restricted.push_back(block & gray_after);
  }
  return Update::Extended(
      NonCrossingPartition::FromBlocks(restricted, gray_after));
}

ConnectorUpdate<NonCrossingMatching> UpdateMatching(
    const NonCrossingMatching& matching, PointMask gray_before, Segment s) {
  using Update = ConnectorUpdate<NonCrossingMatching>;
  const PointId a = s.lo;
  const PointId b = s.hi;
  std::array<PointId, kMaxPoints> partner;
  partner.fill(-1);
  auto pairs = matching.Pairs(gray_before);
  for (auto [x, y] : pairs) {
    partner[x] = y;
    partner[y] = x;
  }
  const bool a_gray = Contains(gray_before, a);
  const bool b_gray = Contains(gray_before, b);
  if (a_gray && b_gray && partner[a] == b) return Update::Closing();

  std::erase_if(pairs, [&](const auto& pair) {
    return pair.first == a || pair.second == a || pair.first == b ||
           pair.second == b;
  });
  const PointId new_left = a_gray ? partner[a] : a;
  const PointId new_right = b_gray ? partner[b] : b;
  pairs.emplace_back(new_left, new_right);

  const PointMask gray_after = gray_before ^ Bit(a) ^ Bit(b);
  auto updated = NonCrossingMatching::FromPairs(pairs, gray_after);
  if (!updated) return Update::Reject(RejectReason::kConnectorCrossing);
  return Update::Extended(*updated);
}

ConnectorUpdate<DirectedMatching> UpdateDirectedMatching(
    const DirectedMatching& matching, PointMask gray_before,
    DirectedSegment d) {
  using Update = ConnectorUpdate<DirectedMatching>;
  std::vector<OpenPath> paths = matching.Paths(gray_before);
  // Index of the path starting / ending at each gray point.
  std::array<int, kMaxPoints> starts;
  std::array<int, kMaxPoints> ends;
  starts.fill(-1);
  ends.fill(-1);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    starts[paths[i].head] = static_cast<int>(i);
    ends[paths[i].tail] = static_cast<int>(i);
  }
  const bool head_gray = Contains(gray_before, d.head);
  const bool tail_gray = Contains(gray_before, d.tail);
  // The new segment leaves d.head and enters d.tail.
  if ((head_gray && ends[d.head] < 0) || (tail_gray && starts[d.tail] < 0)) {
    return Update::Reject(RejectReason::kDirection);
  }
  if (head_gray && tail_gray && ends[d.head] == starts[d.tail]) {
    return Update::Closing();
  }
  const PointId new_head = head_gray ? paths[ends[d.head]].head : d.head;
  const PointId new_tail = tail_gray ? paths[starts[d.tail]].tail : d.tail;
  std::erase_if(paths, [&](const OpenPath& path) {
    return (head_gray && path.tail == d.head) ||
           (tail_gray && path.head == d.tail);
  });
  paths.push_back({new_head, new_tail});
  for (const OpenPath& path : paths) {
    if (path.tail == 0) return Update::Reject(RejectReason::kP1Sink);
  }

  const PointMask gray_after = gray_before ^ Bit(d.head) ^ Bit(d.tail);
  auto updated = DirectedMatching::FromPaths(paths, gray_after);
  if (!updated) return Update::Reject(RejectReason::kConnectorCrossing);
  return Update::Extended(*updated);
}

}  // namespace cfgraph
