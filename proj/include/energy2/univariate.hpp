#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "energy2/sample.hpp"

namespace energy2 {

/// Two one-dimensional samples, each sorted ascending.
class UnivariateSamplePair {
 public:
  /// Requires both inputs sorted, finite and non-empty.
  UnivariateSamplePair(std::vector<double> a, std::vector<double> b);
  static UnivariateSamplePair from_unsorted(std::vector<double> a,
                                            std::vector<double> b);

  std::span<const double> a() const noexcept { return a_; }
  std::span<const double> b() const noexcept { return b_; }

 private:
  std::vector<double> a_;
  std::vector<double> b_;
};

/// Pooled sort order of a one-dimensional pool. Built once per pool; the
/// empirical-CDF statistics of any relabeling are then single O(N) sweeps.
class RankLayout {
 public:
  explicit RankLayout(std::span<const double> pooled);

  std::size_t size() const noexcept { return order_.size(); }

  double ks(std::span<const Label> labels) const;
  double cvm(std::span<const Label> labels) const;

 private:
  std::vector<std::size_t> order_;
  std::vector<bool> group_end_;  // last position of each run of tied values
};

/// Equal-probability bins placed at pooled order statistics.
class EqualProbabilityBins {
 public:
  EqualProbabilityBins(std::span<const double> pooled, std::size_t bins);

  std::size_t bins() const noexcept { return bins_; }
  std::span<const double> edges() const noexcept { return edges_; }
  double chi2(std::span<const Label> labels) const;

 private:
  std::size_t bins_;
  std::vector<double> edges_;
  std::vector<std::size_t> bin_of_;
};

/// sup |F_n - G_m| with right-continuous empirical CDFs.
double ks_statistic(const UnivariateSamplePair& pair);
/// (nm/N^2) * sum over pooled points of (F_n - G_m)^2.
double cvm_statistic(const UnivariateSamplePair& pair);
/// Sum over bins of (a_i - n/k)^2/(n/k) + (b_i - m/k)^2/(m/k).
double chi2_equal_prob_statistic(const UnivariateSamplePair& pair,
                                 std::size_t bins);

/// First coordinate of every pooled point; throws unless the pool is 1D.
std::vector<double> pooled_values(const LabeledPool& pool);

}  // namespace energy2
