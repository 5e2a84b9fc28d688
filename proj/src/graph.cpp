#include "energy2/graph.hpp"

#include <limits>
#include <utility>

#include "energy2/error.hpp"

namespace energy2 {

double EdgeList::total_weight() const noexcept {
  double total = 0.0;
  for (const Edge& e : edges) total += e.weight;
  return total;
}

namespace {

struct Candidate {
  double weight = std::numeric_limits<double>::infinity();
  std::size_t lo = 0;
  std::size_t hi = 0;

  bool operator<(const Candidate& o) const noexcept {
    if (weight != o.weight) return weight < o.weight;
    if (lo != o.lo) return lo < o.lo;
    return hi < o.hi;
  }
};

}  // namespace

EdgeList minimum_spanning_tree(const DistanceMatrix& dm) {
  const std::size_t size = dm.size();
  if (size < 2) {
    throw InsufficientSample("a spanning tree needs at least two points");
  }
  std::vector<bool> in_tree(size, false);
  std::vector<Candidate> best(size);
  EdgeList mst;
  mst.edges.reserve(size - 1);

  std::size_t added = 0;
  in_tree[0] = true;
  for (std::size_t step = 1; step < size; ++step) {
    auto row = dm.row(added);
    for (std::size_t v = 0; v < size; ++v) {
      if (in_tree[v]) continue;
      const Candidate c{row[v], std::min(added, v), std::max(added, v)};
      if (c < best[v]) best[v] = c;
    }
    std::size_t next = size;
    for (std::size_t v = 0; v < size; ++v) {
      if (in_tree[v]) continue;
      if (next == size || best[v] < best[next]) next = v;
    }
    in_tree[next] = true;
    mst.edges.push_back({best[next].lo, best[next].hi, best[next].weight});
    added = next;
  }
  return mst;
}

std::size_t friedman_rafsky_statistic(const EdgeList& mst,
                                      std::span<const Label> labels) {
  std::size_t cross = 0;
  for (const Edge& e : mst.edges) {
    if (e.i >= labels.size() || e.j >= labels.size()) {
      throw InvalidArgument("spanning tree does not match the labeled pool");
    }
    cross += labels[e.i] != labels[e.j];
  }
  return cross;
}

std::vector<std::size_t> nearest_neighbors(const DistanceMatrix& dm) {
  const std::size_t size = dm.size();
  if (size < 2) {
    throw InsufficientSample("nearest neighbors need at least two points");
  }
  std::vector<std::size_t> nn(size);
  for (std::size_t i = 0; i < size; ++i) {
    auto row = dm.row(i);
    std::size_t arg = (i == 0) ? 1 : 0;
    for (std::size_t j = arg + 1; j < size; ++j) {
      if (j != i && row[j] < row[arg]) arg = j;
    }
    nn[i] = arg;
  }
  return nn;
}

std::size_t nearest_neighbor_statistic(std::span<const std::size_t> neighbors,
                                       std::span<const Label> labels) {
  if (neighbors.size() != labels.size()) {
    throw InvalidArgument("neighbor table does not match the labeled pool");
  }
  std::size_t same = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    same += labels[i] == labels[neighbors[i]];
  }
  return same;
}

std::size_t nearest_neighbor_statistic(const DistanceMatrix& dm,
                                       std::span<const Label> labels) {
  return nearest_neighbor_statistic(nearest_neighbors(dm), labels);
}

}  // namespace energy2
