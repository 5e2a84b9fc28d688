#include "energy2/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "energy2/error.hpp"

namespace energy2 {
namespace {

void check_sorted_finite(const std::vector<double>& v, const char* name) {
  if (v.empty()) {
    throw InsufficientSample(std::string("sample ") + name + " is empty");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw InvalidArgument(std::string("sample ") + name +
                            " has a non-finite value");
    }
    if (i > 0 && v[i] < v[i - 1]) {
      throw InvalidArgument(std::string("sample ") + name + " is not sorted");
    }
  }
}

struct Counts {
  std::size_t n = 0;
  std::size_t m = 0;
};

Counts count_labels(std::span<const Label> labels) {
  Counts c;
  for (Label l : labels) (l == Label::A ? c.n : c.m) += 1;
  if (c.n == 0 || c.m == 0) {
    throw InsufficientSample("both samples need at least one observation");
  }
  return c;
}

struct PooledPair {
  std::vector<double> values;
  std::vector<Label> labels;
};

PooledPair pool_pair(const UnivariateSamplePair& pair) {
  PooledPair p;
  p.values.assign(pair.a().begin(), pair.a().end());
  p.values.insert(p.values.end(), pair.b().begin(), pair.b().end());
  p.labels.assign(pair.a().size(), Label::A);
  p.labels.resize(p.values.size(), Label::B);
  return p;
}

}  // namespace

UnivariateSamplePair::UnivariateSamplePair(std::vector<double> a,
                                           std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
  check_sorted_finite(a_, "a");
  check_sorted_finite(b_, "b");
}

UnivariateSamplePair UnivariateSamplePair::from_unsorted(
    std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return UnivariateSamplePair(std::move(a), std::move(b));
}

RankLayout::RankLayout(std::span<const double> pooled)
    : order_(pooled.size()), group_end_(pooled.size(), false) {
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t x, std::size_t y) {
                     return pooled[x] < pooled[y];
                   });
  for (std::size_t p = 0; p < order_.size(); ++p) {
    group_end_[p] = (p + 1 == order_.size()) ||
                    pooled[order_[p + 1]] != pooled[order_[p]];
  }
}

double RankLayout::ks(std::span<const Label> labels) const {
  const Counts c = count_labels(labels);
  const auto n = static_cast<std::int64_t>(c.n);
  const auto m = static_cast<std::int64_t>(c.m);
  std::int64_t ca = 0;
  std::int64_t cb = 0;
  std::int64_t widest = 0;
  for (std::size_t p = 0; p < order_.size(); ++p) {
    (labels[order_[p]] == Label::A ? ca : cb) += 1;
    if (group_end_[p]) {
      const std::int64_t diff = ca * m - cb * n;
      widest = std::max(widest, diff < 0 ? -diff : diff);
    }
  }
  return static_cast<double>(widest) / static_cast<double>(n * m);
}

double RankLayout::cvm(std::span<const Label> labels) const {
  const Counts c = count_labels(labels);
  const auto n = static_cast<std::int64_t>(c.n);
  const auto m = static_cast<std::int64_t>(c.m);
  std::int64_t ca = 0;
  std::int64_t cb = 0;
  std::size_t group = 0;
  double sum = 0.0;
  for (std::size_t p = 0; p < order_.size(); ++p) {
    (labels[order_[p]] == Label::A ? ca : cb) += 1;
    ++group;
    if (group_end_[p]) {
      const double diff = static_cast<double>(ca * m - cb * n);
      sum += static_cast<double>(group) * diff * diff;
      group = 0;
    }
  }
  const double total = static_cast<double>(order_.size());
  return sum / (static_cast<double>(n) * static_cast<double>(m) * total * total);
}

EqualProbabilityBins::EqualProbabilityBins(std::span<const double> pooled,
                                           std::size_t bins)
    : bins_(bins), bin_of_(pooled.size(), 0) {
  const std::size_t total = pooled.size();
  if (bins_ < 2) throw InvalidArgument("chi2 needs at least two bins");
  if (total < 2 * bins_) {
    throw InsufficientSample("chi2 with " + std::to_string(bins_) +
                             " bins needs at least " +
                             std::to_string(2 * bins_) + " pooled points");
  }
  std::vector<double> sorted(pooled.begin(), pooled.end());
  std::sort(sorted.begin(), sorted.end());
  edges_.reserve(bins_ - 1);
  for (std::size_t i = 1; i < bins_; ++i) {
    // Order statistics straddling rank i*N/k, 1-based.
    const std::size_t rank = i * total / bins_;
    const double lo = sorted[rank - 1];
    const double hi = sorted[rank];
    if (lo == hi) {
      throw DegenerateBins("bin edge " + std::to_string(i) +
                           " falls inside a run of tied values " +
                           std::to_string(lo));
    }
    edges_.push_back(lo + (hi - lo) / 2.0);
  }
  for (std::size_t i = 0; i < total; ++i) {
    // Values equal to an edge belong to the lower bin.
    bin_of_[i] = static_cast<std::size_t>(
        std::lower_bound(edges_.begin(), edges_.end(), pooled[i]) -
        edges_.begin());
  }
}

double EqualProbabilityBins::chi2(std::span<const Label> labels) const {
  const Counts c = count_labels(labels);
  std::vector<std::size_t> a(bins_, 0);
  std::vector<std::size_t> b(bins_, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] == Label::A ? a : b)[bin_of_[i]] += 1;
  }
  const double k = static_cast<double>(bins_);
  const double ea = static_cast<double>(c.n) / k;
  const double eb = static_cast<double>(c.m) / k;
  double stat = 0.0;
  for (std::size_t i = 0; i < bins_; ++i) {
    const double da = static_cast<double>(a[i]) - ea;
    const double db = static_cast<double>(b[i]) - eb;
    stat += da * da / ea + db * db / eb;
  }
  return stat;
}

double ks_statistic(const UnivariateSamplePair& pair) {
  const PooledPair p = pool_pair(pair);
  return RankLayout(p.values).ks(p.labels);
}

double cvm_statistic(const UnivariateSamplePair& pair) {
  const PooledPair p = pool_pair(pair);
  return RankLayout(p.values).cvm(p.labels);
}

double chi2_equal_prob_statistic(const UnivariateSamplePair& pair,
                                 std::size_t bins) {
  const PooledPair p = pool_pair(pair);
  return EqualProbabilityBins(p.values, bins).chi2(p.labels);
}

std::vector<double> pooled_values(const LabeledPool& pool) {
  if (pool.dim() != 1) {
    throw DimensionMismatch("univariate statistics need one-dimensional data, "
                            "got d = " + std::to_string(pool.dim()));
  }
  auto data = pool.points().data();
  return {data.begin(), data.end()};
}

}  // namespace energy2
