#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "energy2/methods.hpp"
#include "energy2/sample.hpp"

namespace energy2 {

struct PermutationOptions {
  std::size_t permutations = 1000;
  std::uint64_t seed = 0;
  /// Pools with at most this many partitions are enumerated exhaustively.
  std::uint64_t exhaustive_cap = 100000;
  unsigned threads = 1;
};

struct NullDistribution {
  std::vector<double> values;
  Tail tail = Tail::High;
  std::uint64_t seed = 0;
  bool exhaustive = false;

  std::size_t count() const noexcept { return values.size(); }
};

/// C(total, chosen), saturating at `limit + 1`.
std::uint64_t binomial_capped(std::size_t total, std::size_t chosen,
                              std::uint64_t limit);

/// Labels of relabeling `index` under `seed`: n labels A chosen uniformly
/// among all C(N, n) subsets. Draws with different indices are independent.
void random_relabeling(std::size_t total, std::size_t n, std::uint64_t seed,
                       std::uint64_t index, std::vector<std::size_t>& scratch,
                       std::vector<Label>& labels);

/// Labels of the `rank`-th n-subset of {0..N-1} in lexicographic order.
void relabeling_by_rank(std::size_t total, std::size_t n, std::uint64_t rank,
                        std::vector<Label>& labels);

/// Null distributions of several statistics over one shared set of
/// relabelings. Exhaustive when C(N, n) <= exhaustive_cap. The values are
/// stored in relabeling order, independent of the thread count.
std::vector<NullDistribution> permutation_nulls(
    std::size_t total, std::size_t n, std::span<const LabelStatistic> stats,
    std::span<const Tail> tails, const PermutationOptions& options);

NullDistribution permutation_null(const LabeledPool& pool,
                                  const LabelStatistic& stat, Tail tail,
                                  const PermutationOptions& options);

/// Sampled: (1 + #{as extreme}) / (B + 1). Exhaustive: #{as extreme} / C(N, n).
double p_value(const NullDistribution& null, double observed);

/// The floor(alpha (B + 1))-th most extreme null value; reject when the
/// observed value is at least as extreme.
double critical_value(const NullDistribution& null, double alpha);

struct TestOptions {
  PermutationOptions permutation;
  double alpha = 0.05;
  MethodOptions method;
};

struct TestOutcome {
  Method method;
  Tail tail;
  double statistic;
  double p_value;
  /// Absent when floor(alpha (B + 1)) < 1.
  std::optional<double> critical_value;
  double alpha;
  std::size_t permutations;
  bool exhaustive;
  std::uint64_t seed;
  std::size_t n;
  std::size_t m;
  std::size_t d;

  bool rejected() const noexcept { return p_value <= alpha; }
};

TestOutcome two_sample_test(const LabeledPool& pool, Method method,
                            const TestOptions& options);

struct CalibrationOptions {
  std::size_t reference_permutations = 100000;
  std::size_t dim = 1;
  double alpha = 0.05;
  unsigned threads = 1;
};

struct CalibrationResult {
  double low;
  double high;
  /// Achieved level of each repeat's critical value, in repeat order.
  std::vector<double> achieved;
};

/// Spread of the achieved significance level when the energy test's critical
/// value is estimated from `permutations` relabelings of one fixed uniform
/// pool of n + m points; the central 95% interval over `repeats` estimates.
CalibrationResult calibrate_alpha(std::size_t n, std::size_t m,
                                  std::size_t permutations, std::size_t repeats,
                                  std::uint64_t seed,
                                  const CalibrationOptions& options = {});

/// Linear-interpolation (type 7) quantile of sorted data.
double quantile_sorted(std::span<const double> sorted, double q);

}  // namespace energy2
