#include <doctest.h>

#include <cmath>

#include "energy2/error.hpp"
#include "energy2/rng.hpp"
#include "energy2/sample.hpp"

using namespace energy2;

namespace {

Sample random_sample(std::size_t rows, std::size_t dim, std::uint64_t key) {
  Stream s(key);
  std::vector<double> data(rows * dim);
  for (double& x : data) x = s.normal();
  return Sample(rows, dim, data);
}

}  // namespace

TEST_CASE("pool concatenates rows and labels") {
  const auto a = Sample::from_rows({{0}, {2}});
  const auto b = Sample::from_rows({{1}});
  const LabeledPool p = pool(a, b);
  CHECK(p.size() == 3);
  CHECK(p.n() == 2);
  CHECK(p.m() == 1);
  CHECK(p.points() == Sample::from_rows({{0}, {2}, {1}}));
  CHECK(std::vector<Label>(p.labels().begin(), p.labels().end()) ==
        std::vector<Label>{Label::A, Label::A, Label::B});

  const LabeledPool q = pool(Sample::from_rows({{1, 2}}), Sample::from_rows({{3, 4}}));
  CHECK(q.size() == 2);
  CHECK(q.dim() == 2);

  CHECK_THROWS_AS(pool(Sample::from_rows({{1, 2}}), Sample::from_rows({{1, 2, 3}})),
                  DimensionMismatch);
}

TEST_CASE("pooling then extracting by label recovers both samples") {
  for (std::uint64_t key = 0; key < 20; ++key) {
    const Sample a = random_sample(1 + key % 7, 3, key);
    const Sample b = random_sample(2 + key % 5, 3, key + 100);
    const LabeledPool p = pool(a, b);
    CHECK(p.extract(Label::A) == a);
    CHECK(p.extract(Label::B) == b);
  }
}

TEST_CASE("sample rejects non-finite entries and ragged rows") {
  CHECK_THROWS_AS(Sample(1, 1, {NAN}), InvalidArgument);
  CHECK_THROWS_AS(Sample(1, 1, {INFINITY}), InvalidArgument);
  CHECK_THROWS_AS(Sample::from_rows({{1, 2}, {3}}), DimensionMismatch);
  CHECK_THROWS_AS(Sample(0, 1, {}), InvalidArgument);
}

TEST_CASE("standardize uses pooled population moments") {
  const LabeledPool p = pool(Sample::from_rows({{0}}), Sample::from_rows({{2}}));
  const LabeledPool z = standardize(p);
  CHECK(z.points()(0, 0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(z.points()(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(z.n() == 1);

  const LabeledPool flat =
      pool(Sample::from_rows({{5}, {5}}), Sample::from_rows({{5}}));
  CHECK_THROWS_AS(standardize(flat), DegenerateCoordinate);
}

TEST_CASE("standardize is idempotent") {
  for (std::uint64_t key = 0; key < 10; ++key) {
    const LabeledPool p = pool(random_sample(13, 3, key), random_sample(9, 3, key + 50));
    const LabeledPool once = standardize(p);
    const LabeledPool twice = standardize(once);
    for (std::size_t i = 0; i < once.points().data().size(); ++i) {
      CHECK(std::abs(once.points().data()[i] - twice.points().data()[i]) <= 1e-12);
    }
  }
}

TEST_CASE("distance matrix examples") {
  const DistanceMatrix d1 = distance_matrix(Sample::from_rows({{0}, {2}, {1}}));
  CHECK(d1(0, 1) == 2.0);
  CHECK(d1(0, 2) == 1.0);
  CHECK(d1(1, 2) == 1.0);
  CHECK(d1.min_offdiag() == 1.0);

  const DistanceMatrix d2 = distance_matrix(Sample::from_rows({{0, 0}, {3, 4}}));
  CHECK(d2(0, 1) == 5.0);
  CHECK(d2.dim() == 2);

  const DistanceMatrix d3 = distance_matrix(Sample::from_rows({{1, 1}, {1, 1}}));
  CHECK(d3(0, 1) == 0.0);
  CHECK(d3.min_offdiag() == 0.0);
}

TEST_CASE("distance matrix is symmetric, metric, translation invariant and scale covariant") {
  for (std::uint64_t key = 0; key < 10; ++key) {
    const Sample s = random_sample(15, 4, key);
    const DistanceMatrix d = distance_matrix(s);
    std::vector<double> shifted(s.data().begin(), s.data().end());
    std::vector<double> scaled(s.data().begin(), s.data().end());
    for (std::size_t i = 0; i < shifted.size(); ++i) {
      shifted[i] += 3.5 - 1.25 * static_cast<double>(i % 4);
      scaled[i] *= 2.75;
    }
    const DistanceMatrix ds = distance_matrix(Sample(15, 4, shifted));
    const DistanceMatrix dc = distance_matrix(Sample(15, 4, scaled));
    for (std::size_t i = 0; i < 15; ++i) {
      CHECK(d(i, i) == 0.0);
      for (std::size_t j = 0; j < 15; ++j) {
        CHECK(d(i, j) == d(j, i));
        CHECK(std::abs(ds(i, j) - d(i, j)) <= 1e-12 * std::max(1.0, d(i, j)));
        CHECK(std::abs(dc(i, j) - 2.75 * d(i, j)) <= 1e-12 * std::max(1.0, d(i, j)));
        for (std::size_t k = 0; k < 15; ++k) {
          CHECK(d(i, k) <= d(i, j) + d(j, k) + 1e-12);
        }
      }
    }
  }
}
