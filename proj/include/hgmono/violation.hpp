// Copyright 2026 The hgmono Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HGMONO_VIOLATION_HPP_
#define HGMONO_VIOLATION_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hgmono/grid.hpp"
#include "hgmono/oracle.hpp"

namespace hgmono {

enum class ViolationMode {
  // Every comparable pair x < y with f(x) = 1, f(y) = 0.
  full_comparable,
  // Only pairs that differ in exactly one coordinate.
  augmented_axis,
};

const char* to_string(ViolationMode m);

struct ViolationEdge {
  PointIndex low = 0;
  PointIndex high = 0;
  // The single differing dimension (0-based), or -1 when several differ.
  std::int32_t dimension = -1;

  friend auto operator<=>(const ViolationEdge&, const ViolationEdge&) = default;
};

// Bipartite violation graph. `left` holds the 1-valued endpoints and `right`
// the 0-valued endpoints of the edges, both sorted; edges are sorted by
// (low, high).
class ViolationGraph {
 public:
  ViolationGraph(GridShape shape, ViolationMode mode, std::vector<ViolationEdge> edges);

  const GridShape& shape() const { return shape_; }
  ViolationMode mode() const { return mode_; }
  std::span<const ViolationEdge> edges() const { return edges_; }
  std::span<const PointIndex> left() const { return left_; }
  std::span<const PointIndex> right() const { return right_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  // The graph on a subset of the edges (indices into edges()).
  ViolationGraph subgraph(std::span<const std::size_t> edge_ids) const;

  // Rows "x_index,y_index,dimension_or_-1".
  void write_csv(std::ostream& out) const;

  friend bool operator==(const ViolationGraph& a, const ViolationGraph& b) {
    return a.shape_ == b.shape_ && a.mode_ == b.mode_ && a.edges_ == b.edges_;
  }

 private:
  GridShape shape_;
  ViolationMode mode_;
  std::vector<ViolationEdge> edges_;
  std::vector<PointIndex> left_;
  std::vector<PointIndex> right_;
};

// Comparable pairs examined by a full_comparable build: (n(n+1)/2)^d.
double comparable_pair_count(const GridShape& shape);

// Enumerates every violation of f in the chosen mode, in parallel over the
// lower endpoint. Throws ResourceError when the pairs to examine exceed the
// budget.
ViolationGraph build_violation_graph(const FunctionOracle& f, ViolationMode mode,
                                     std::uint64_t budget = 100'000'000);
// Single-threaded reference for build_violation_graph.
ViolationGraph build_violation_graph_serial(const FunctionOracle& f, ViolationMode mode,
                                            std::uint64_t budget = 100'000'000);

// Per-vertex statistics over the vertices of `left` and `right`.
struct VertexDegrees {
  PointIndex point = 0;
  std::uint64_t degree = 0;
  // i-degree per dimension.
  std::vector<std::uint64_t> per_dimension;
  std::uint32_t thresholded = 0;
};

struct SideAggregates {
  std::uint64_t max_degree = 0;              // D(.)
  std::vector<std::uint64_t> max_per_dimension;  // Gamma_i(.)
  std::uint64_t max_dimension_degree = 0;    // Gamma(.)
  std::uint32_t max_thresholded = 0;         // Phi(.)
  std::uint64_t vertices = 0;
  // Vertex count over n^d.
  double density = 0.0;
};

struct DegreeProfile {
  std::vector<VertexDegrees> left;
  std::vector<VertexDegrees> right;
  SideAggregates x;
  SideAggregates y;
  std::uint64_t edges = 0;  // m(G)

  // D <= Gamma * Phi on both sides.
  bool degree_bounds_hold() const;
};

// Edges with dimension -1 contribute to the degree but to no i-degree.
DegreeProfile degree_profile(const ViolationGraph& g);

// Maximum bipartite matching of a violation graph (Hopcroft-Karp). Pairs
// (low, high); augmenting paths scan neighbours in point-index order.
std::vector<std::pair<PointIndex, PointIndex>> maximum_matching(const ViolationGraph& g);

}  // namespace hgmono

#endif  // HGMONO_VIOLATION_HPP_
