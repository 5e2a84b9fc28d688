#include <doctest.h>

#include <cmath>

#include "energy2/distributions.hpp"
#include "energy2/graph.hpp"
#include "energy2/rng.hpp"
#include "oracles.hpp"

using namespace energy2;

namespace {

std::vector<Label> labels_of(std::initializer_list<int> xs) {
  std::vector<Label> out;
  for (int x : xs) out.push_back(x ? Label::B : Label::A);
  return out;
}

}  // namespace

TEST_CASE("spanning tree examples") {
  const auto mst = minimum_spanning_tree(distance_matrix(Sample::from_rows({{0}, {1}, {3}})));
  CHECK(mst.edges == std::vector<Edge>{{0, 1, 1.0}, {1, 2, 2.0}});
  CHECK(mst.total_weight() == 3.0);

  const auto two = minimum_spanning_tree(distance_matrix(Sample::from_rows({{0, 0}, {1, 1}})));
  CHECK(two.count() == 1);
  CHECK(two.edges[0].i == 0);
  CHECK(two.edges[0].j == 1);

  // Unit square: four equal sides; the tie-break keeps (0,1), (0,2), (1,3).
  const auto sq = minimum_spanning_tree(
      distance_matrix(Sample::from_rows({{0, 0}, {1, 0}, {0, 1}, {1, 1}})));
  CHECK(sq.total_weight() == 3.0);
  std::vector<std::pair<std::size_t, std::size_t>> got;
  for (const Edge& e : sq.edges) got.emplace_back(e.i, e.j);
  std::sort(got.begin(), got.end());
  const auto brute = oracle::brute_force_mst({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(got == brute.edges);
}

TEST_CASE("spanning tree weight matches exhaustive enumeration") {
  for (std::uint64_t key = 0; key < 200; ++key) {
    Stream s(derive_key(5, {key}));
    const std::size_t n = 2 + key % 6;
    const std::size_t d = 1 + key % 3;
    const Sample pts = sample_multivariate(Family{IsoNormal{d}}, n, s);
    std::vector<oracle::Point> raw;
    for (std::size_t i = 0; i < n; ++i) raw.emplace_back(pts.row(i).begin(), pts.row(i).end());
    const auto mst = minimum_spanning_tree(distance_matrix(pts));
    CHECK(mst.count() == n - 1);
    CHECK(std::abs(mst.total_weight() - oracle::brute_force_mst(raw).weight) <= 1e-12);
  }
}

TEST_CASE("Friedman-Rafsky statistic examples") {
  const auto pool_ = pool(Sample::from_rows({{0}, {2}}), Sample::from_rows({{1}}));
  const auto mst = minimum_spanning_tree(distance_matrix(pool_));
  CHECK(friedman_rafsky_statistic(mst, pool_.labels()) == 2);

  const auto far = pool(Sample::from_rows({{0}, {0.1}, {0.2}}),
                        Sample::from_rows({{100}, {100.3}}));
  CHECK(friedman_rafsky_statistic(minimum_spanning_tree(distance_matrix(far)),
                                  far.labels()) == 1);

  const auto same = labels_of({0, 0, 0});
  CHECK(friedman_rafsky_statistic(mst, same) == 0);
}

TEST_CASE("one-dimensional Friedman-Rafsky statistic is runs minus one") {
  for (std::uint64_t key = 0; key < 300; ++key) {
    Stream s(derive_key(11, {key}));
    const std::size_t n = 1 + key % 12, m = 1 + (key / 12) % 9;
    const Sample a = sample_univariate(Univariate::F2, n, s);
    const Sample b = sample_univariate(Univariate::F3, m, s);
    const LabeledPool p = pool(a, b);
    std::vector<double> values(p.points().data().begin(), p.points().data().end());
    std::vector<int> labels;
    for (Label l : p.labels()) labels.push_back(l == Label::B);
    CHECK(friedman_rafsky_statistic(minimum_spanning_tree(distance_matrix(p)), p.labels()) ==
          oracle::runs_minus_one(values, labels));
  }
}

TEST_CASE("nearest neighbor statistic examples") {
  const auto clusters = pool(Sample::from_rows({{0}, {0.1}}), Sample::from_rows({{5}, {5.1}}));
  CHECK(nearest_neighbor_statistic(distance_matrix(clusters), clusters.labels()) == 4);

  const auto mixed = pool(Sample::from_rows({{0}, {2}}), Sample::from_rows({{1}}));
  const auto dm = distance_matrix(mixed);
  CHECK(nearest_neighbors(dm) == std::vector<std::size_t>{2, 2, 0});
  CHECK(nearest_neighbor_statistic(dm, mixed.labels()) == 0);

  // Pairs of opposite labels, pairs far apart from each other.
  const auto alt = pool(Sample::from_rows({{0}, {100}, {200}}),
                        Sample::from_rows({{0.5}, {100.5}, {200.5}}));
  CHECK(nearest_neighbor_statistic(distance_matrix(alt), alt.labels()) == 0);
}

TEST_CASE("nearest neighbor table matches a direct scan") {
  for (std::uint64_t key = 0; key < 50; ++key) {
    Stream s(derive_key(13, {key}));
    const std::size_t n = 2 + key % 20;
    const Sample pts = sample_multivariate(Family{UniformCube{2}}, n, s);
    const auto dm = distance_matrix(pts);
    const auto nn = nearest_neighbors(dm);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = i == 0 ? 1 : 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && dm(i, j) < dm(i, best)) best = j;
      }
      CHECK(nn[i] == best);
    }
  }
}
