#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace energy2 {

/// An n x d block of finite observations stored row-major.
class Sample {
 public:
  Sample(std::size_t rows, std::size_t dim, std::vector<double> data);

  /// Builds a sample from explicit rows; all rows must have the same length.
  static Sample from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * dim_, dim_};
  }
  double operator()(std::size_t i, std::size_t k) const noexcept {
    return data_[i * dim_ + k];
  }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const Sample&, const Sample&) = default;

 private:
  std::size_t rows_;
  std::size_t dim_;
  std::vector<double> data_;
};

enum class Label : std::uint8_t { A = 0, B = 1 };

/// Merged observations of two samples with their membership labels.
class LabeledPool {
 public:
  LabeledPool(Sample points, std::vector<Label> labels);

  const Sample& points() const noexcept { return points_; }
  std::span<const Label> labels() const noexcept { return labels_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return labels_.size() - n_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return points_.dim(); }

  /// Rows carrying `which`, in pool order.
  Sample extract(Label which) const;

 private:
  Sample points_;
  std::vector<Label> labels_;
  std::size_t n_ = 0;
};

/// Dense symmetric matrix of pairwise Euclidean distances.
class DistanceMatrix {
 public:
  DistanceMatrix(std::size_t size, std::size_t dim, std::vector<double> dist);

  std::size_t size() const noexcept { return size_; }
  /// Dimension of the points the distances were computed from.
  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return dist_[i * size_ + j];
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {dist_.data() + i * size_, size_};
  }
  /// Smallest off-diagonal entry; +inf for a single point.
  double min_offdiag() const noexcept { return min_offdiag_; }

 private:
  std::size_t size_;
  std::size_t dim_;
  std::vector<double> dist_;
  double min_offdiag_;
};

/// Rows of `a` followed by rows of `b`, labelled A then B.
LabeledPool pool(const Sample& a, const Sample& b);

/// Replaces each coordinate by (z - mean) / sd over the pooled sample, with
/// the population (divide-by-N) standard deviation.
LabeledPool standardize(const LabeledPool& p);

DistanceMatrix distance_matrix(const Sample& points);
DistanceMatrix distance_matrix(const LabeledPool& p);

}  // namespace energy2
