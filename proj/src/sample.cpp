#include "energy2/sample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "energy2/error.hpp"

namespace energy2 {

Sample::Sample(std::size_t rows, std::size_t dim, std::vector<double> data)
    : rows_(rows), dim_(dim), data_(std::move(data)) {
  if (rows_ == 0 || dim_ == 0) {
    throw InvalidArgument("sample must have at least one row and one column");
  }
  if (data_.size() != rows_ * dim_) {
    throw InvalidArgument("sample data size does not match rows x dim");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw InvalidArgument("non-finite value at row " +
                            std::to_string(i / dim_) + ", column " +
                            std::to_string(i % dim_));
    }
  }
}

Sample Sample::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    throw InvalidArgument("sample must have at least one row");
  }
  const std::size_t dim = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw DimensionMismatch("row " + std::to_string(i) + " has " +
                              std::to_string(rows[i].size()) +
                              " columns, expected " + std::to_string(dim));
    }
    data.insert(data.end(), rows[i].begin(), rows[i].end());
  }
  return Sample(rows.size(), dim, std::move(data));
}

LabeledPool::LabeledPool(Sample points, std::vector<Label> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  if (labels_.size() != points_.size()) {
    throw InvalidArgument("label count does not match the number of points");
  }
  n_ = static_cast<std::size_t>(
      std::count(labels_.begin(), labels_.end(), Label::A));
}

Sample LabeledPool::extract(Label which) const {
  std::vector<double> data;
  std::size_t rows = 0;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != which) continue;
    auto r = points_.row(i);
    data.insert(data.end(), r.begin(), r.end());
    ++rows;
  }
  return Sample(rows, points_.dim(), std::move(data));
}

DistanceMatrix::DistanceMatrix(std::size_t size, std::size_t dim,
                               std::vector<double> dist)
    : size_(size),
      dim_(dim),
      dist_(std::move(dist)),
      min_offdiag_(std::numeric_limits<double>::infinity()) {
  if (dist_.size() != size_ * size_) {
    throw InvalidArgument("distance matrix storage does not match N x N");
  }
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = i + 1; j < size_; ++j) {
      min_offdiag_ = std::min(min_offdiag_, dist_[i * size_ + j]);
    }
  }
}

LabeledPool pool(const Sample& a, const Sample& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("cannot pool samples of dimension " +
                            std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
  std::vector<double> data(a.data().begin(), a.data().end());
  data.insert(data.end(), b.data().begin(), b.data().end());
  std::vector<Label> labels(a.size(), Label::A);
  labels.resize(a.size() + b.size(), Label::B);
  return LabeledPool(Sample(a.size() + b.size(), a.dim(), std::move(data)),
                     std::move(labels));
}

LabeledPool standardize(const LabeledPool& p) {
  const Sample& pts = p.points();
  const std::size_t rows = pts.size();
  const std::size_t dim = pts.dim();
  if (rows < 2) {
    throw InsufficientSample("standardization needs at least two observations");
  }
  std::vector<double> out(pts.data().begin(), pts.data().end());
  for (std::size_t k = 0; k < dim; ++k) {
    double mean = 0.0;
    for (std::size_t i = 0; i < rows; ++i) mean += pts(i, k);
    mean /= static_cast<double>(rows);
    double ss = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      const double dev = pts(i, k) - mean;
      ss += dev * dev;
    }
    const double sd = std::sqrt(ss / static_cast<double>(rows));
    if (!(sd > 0.0)) throw DegenerateCoordinate(k);
    for (std::size_t i = 0; i < rows; ++i) {
      out[i * dim + k] = (pts(i, k) - mean) / sd;
    }
  }
  return LabeledPool(Sample(rows, dim, std::move(out)),
                     std::vector<Label>(p.labels().begin(), p.labels().end()));
}

DistanceMatrix distance_matrix(const Sample& points) {
  const std::size_t size = points.size();
  const std::size_t dim = points.dim();
  std::vector<double> dist(size * size, 0.0);
  for (std::size_t i = 0; i < size; ++i) {
    auto zi = points.row(i);
    for (std::size_t j = i + 1; j < size; ++j) {
      auto zj = points.row(j);
      double ss = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double diff = zi[k] - zj[k];
        ss += diff * diff;
      }
      const double r = std::sqrt(ss);
      dist[i * size + j] = r;
      dist[j * size + i] = r;
    }
  }
  return DistanceMatrix(size, dim, std::move(dist));
}

DistanceMatrix distance_matrix(const LabeledPool& p) {
  return distance_matrix(p.points());
}

}  // namespace energy2
