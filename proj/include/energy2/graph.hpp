#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "energy2/sample.hpp"

namespace energy2 {

struct Edge {
  std::size_t i;  // i < j
  std::size_t j;
  double weight;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct EdgeList {
  std::vector<Edge> edges;

  std::size_t count() const noexcept { return edges.size(); }
  double total_weight() const noexcept;
};

/// Dense Prim over the complete graph, O(N^2). Equal weights are ordered by
/// the (i, j) pair, so the result is the unique MST under (weight, i, j).
EdgeList minimum_spanning_tree(const DistanceMatrix& dm);

/// Number of tree edges joining observations with different labels.
std::size_t friedman_rafsky_statistic(const EdgeList& mst,
                                      std::span<const Label> labels);

/// Index of each point's nearest other point; ties go to the smaller index.
std::vector<std::size_t> nearest_neighbors(const DistanceMatrix& dm);

/// Count of points whose nearest neighbor carries the same label.
std::size_t nearest_neighbor_statistic(std::span<const std::size_t> neighbors,
                                       std::span<const Label> labels);
std::size_t nearest_neighbor_statistic(const DistanceMatrix& dm,
                                       std::span<const Label> labels);

}  // namespace energy2
