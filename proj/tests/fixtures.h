#ifndef CFGRAPH_TESTS_FIXTURES_H_
#define CFGRAPH_TESTS_FIXTURES_H_

#include <algorithm>
#include <set>
#include <vector>

#include "cfgraph/cgraph.h"
#include "cfgraph/geometry.h"
#include "cfgraph/oracle.h"

namespace cfgraph::testing {

inline PointSet T3() { return PointSet::Validate(std::vector<Point>{{0, 0}, {2, 1}, {4, 0}}); }
inline PointSet Q4() {
  return PointSet::Validate(std::vector<Point>{{0, 0}, {4, 1}, {5, 5}, {1, 4}});
}
inline PointSet N4() {
  return PointSet::Validate(std::vector<Point>{{0, 0}, {1, 2}, {2, 5}, {4, 1}});
}

// 1-based, as in p1..pn.
inline Segment S(int i, int j) { return Segment(i - 1, j - 1); }
inline DirectedSegment D(int h, int t) { return {h - 1, t - 1}; }
inline Label L(int i, int j) { return Label::Of(S(i, j)); }
inline Label DL(int h, int t) { return Label::Of(D(h, t)); }

inline LabelSet Canonical(const Solution& solution) {
  LabelSet out;
  for (Label l : solution) {
    if (!l.unlabeled()) out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Solution sets of a graph; `duplicates` counts paths repeating a set.
inline std::set<LabelSet> SolutionSets(const CombinationGraph& graph,
                                       std::size_t* duplicates = nullptr) {
  std::set<LabelSet> out;
  std::size_t dup = 0;
  SolutionEnumerator it(graph);
  Solution s;
  while (it.Next(&s)) {
    if (!out.insert(Canonical(s)).second) ++dup;
  }
  if (duplicates) *duplicates = dup;
  return out;
}

}  // namespace cfgraph::testing

#endif  // CFGRAPH_TESTS_FIXTURES_H_
