#include "energy2/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "energy2/distributions.hpp"
#include "energy2/error.hpp"
#include "energy2/kernel.hpp"
#include "energy2/parallel.hpp"
#include "energy2/rng.hpp"

namespace energy2 {
namespace {

__extension__ using uint128 = unsigned __int128;

constexpr std::size_t kChunk = 256;

// Advances c to the next n-subset in lexicographic order.
void next_combination(std::vector<std::size_t>& c, std::size_t total) {
  const std::size_t n = c.size();
  std::size_t i = n;
  while (i > 0 && c[i - 1] == total - n + (i - 1)) --i;
  if (i == 0) return;
  ++c[i - 1];
  for (std::size_t j = i; j < n; ++j) c[j] = c[j - 1] + 1;
}

std::vector<std::size_t> unrank_combination(std::size_t total, std::size_t n,
                                            std::uint64_t rank) {
  std::vector<std::size_t> c;
  c.reserve(n);
  std::size_t x = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (;; ++x) {
      const std::uint64_t below = binomial_capped(
          total - x - 1, n - i - 1, std::numeric_limits<std::uint64_t>::max() - 1);
      if (rank < below) break;
      rank -= below;
    }
    c.push_back(x++);
  }
  return c;
}

void labels_from_combination(const std::vector<std::size_t>& c,
                             std::vector<Label>& labels) {
  std::fill(labels.begin(), labels.end(), Label::B);
  for (std::size_t i : c) labels[i] = Label::A;
}

std::size_t rank_threshold(std::size_t count, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1)");
  }
  return static_cast<std::size_t>(
      std::floor(alpha * static_cast<double>(count + 1) + 1e-9));
}

}  // namespace

std::uint64_t binomial_capped(std::size_t total, std::size_t chosen,
                              std::uint64_t limit) {
  if (chosen > total) return 0;
  chosen = std::min(chosen, total - chosen);
  uint128 value = 1;
  for (std::size_t i = 1; i <= chosen; ++i) {
    value = value * (total - chosen + i) / i;
    if (value > limit) return limit + 1;
  }
  return static_cast<std::uint64_t>(value);
}

void random_relabeling(std::size_t total, std::size_t n, std::uint64_t seed,
                       std::uint64_t index, std::vector<std::size_t>& scratch,
                       std::vector<Label>& labels) {
  Stream stream(derive_key(seed, {index}));
  scratch.resize(total);
  std::iota(scratch.begin(), scratch.end(), std::size_t{0});
  labels.assign(total, Label::B);
  // Partial Fisher-Yates: the first n slots become a uniform n-subset.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + stream.below(total - i);
    std::swap(scratch[i], scratch[j]);
    labels[scratch[i]] = Label::A;
  }
}

void relabeling_by_rank(std::size_t total, std::size_t n, std::uint64_t rank,
                        std::vector<Label>& labels) {
  labels.resize(total);
  labels_from_combination(unrank_combination(total, n, rank), labels);
}

std::vector<NullDistribution> permutation_nulls(
    std::size_t total, std::size_t n, std::span<const LabelStatistic> stats,
    std::span<const Tail> tails, const PermutationOptions& options) {
  if (stats.size() != tails.size()) {
    throw InvalidArgument("one tail is required per statistic");
  }
  if (n == 0 || n >= total) {
    throw InsufficientSample("both samples need at least one observation");
  }
  const std::uint64_t partitions =
      binomial_capped(total, n, options.exhaustive_cap);
  const bool exhaustive = partitions <= options.exhaustive_cap;
  if (!exhaustive && options.permutations < 1) {
    throw InvalidArgument("at least one permutation is required");
  }
  const std::size_t count =
      exhaustive ? static_cast<std::size_t>(partitions) : options.permutations;

  std::vector<NullDistribution> nulls(stats.size());
  for (std::size_t s = 0; s < stats.size(); ++s) {
    nulls[s].values.resize(count);
    nulls[s].tail = tails[s];
    nulls[s].seed = options.seed;
    nulls[s].exhaustive = exhaustive;
  }
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  parallel_for(chunks, options.threads, [&](std::size_t chunk) {
    const std::size_t first = chunk * kChunk;
    const std::size_t last = std::min(count, first + kChunk);
    std::vector<Label> labels(total);
    std::vector<std::size_t> scratch;
    std::vector<std::size_t> combination;
    if (exhaustive) combination = unrank_combination(total, n, first);
    for (std::size_t b = first; b < last; ++b) {
      if (exhaustive) {
        if (b != first) next_combination(combination, total);
        labels_from_combination(combination, labels);
      } else {
        random_relabeling(total, n, options.seed, b, scratch, labels);
      }
      for (std::size_t s = 0; s < stats.size(); ++s) {
        nulls[s].values[b] = stats[s](labels);
      }
    }
  });
  return nulls;
}

NullDistribution permutation_null(const LabeledPool& pool,
                                  const LabelStatistic& stat, Tail tail,
                                  const PermutationOptions& options) {
  auto nulls = permutation_nulls(pool.size(), pool.n(), std::span(&stat, 1),
                                 std::span(&tail, 1), options);
  return std::move(nulls.front());
}

double p_value(const NullDistribution& null, double observed) {
  std::size_t extreme = 0;
  for (double v : null.values) {
    extreme += null.tail == Tail::High ? (v >= observed) : (v <= observed);
  }
  const auto count = static_cast<double>(null.values.size());
  if (null.exhaustive) return static_cast<double>(extreme) / count;
  return (1.0 + static_cast<double>(extreme)) / (count + 1.0);
}

double critical_value(const NullDistribution& null, double alpha) {
  const std::size_t rank = rank_threshold(null.values.size(), alpha);
  if (rank < 1) {
    throw InsufficientPermutations(
        "alpha (B + 1) < 1 with B = " + std::to_string(null.values.size()) +
        "; more permutations are needed for this level");
  }
  std::vector<double> v = null.values;
  const auto nth = static_cast<std::ptrdiff_t>(rank - 1);
  if (null.tail == Tail::High) {
    std::nth_element(v.begin(), v.begin() + nth, v.end(), std::greater<>());
  } else {
    std::nth_element(v.begin(), v.begin() + nth, v.end());
  }
  return v[static_cast<std::size_t>(nth)];
}

TestOutcome two_sample_test(const LabeledPool& pool, Method method,
                            const TestOptions& options) {
  if (is_univariate(method) && pool.dim() != 1) {
    throw DimensionMismatch(std::string(method_name(method)) +
                            " needs one-dimensional data, got d = " +
                            std::to_string(pool.dim()));
  }
  const std::vector<Method> methods{method};
  const PreparedPool prepared(pool, methods, options.method);
  const LabelStatistic stat = prepared.statistic(method);
  const Tail tail = rejection_tail(method);
  const double observed = stat(pool.labels());
  const NullDistribution null =
      permutation_null(pool, stat, tail, options.permutation);

  TestOutcome out{};
  out.method = method;
  out.tail = tail;
  out.statistic = observed;
  out.p_value = p_value(null, observed);
  if (rank_threshold(null.count(), options.alpha) >= 1) {
    out.critical_value = critical_value(null, options.alpha);
  }
  out.alpha = options.alpha;
  out.permutations = null.count();
  out.exhaustive = null.exhaustive;
  out.seed = options.permutation.seed;
  out.n = pool.n();
  out.m = pool.m();
  out.d = pool.dim();
  return out;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InvalidArgument("quantile of an empty sequence");
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

CalibrationResult calibrate_alpha(std::size_t n, std::size_t m,
                                  std::size_t permutations, std::size_t repeats,
                                  std::uint64_t seed,
                                  const CalibrationOptions& options) {
  if (repeats < 30) {
    throw InvalidArgument("calibration needs at least 30 repeats");
  }
  if (n < 1 || m < 1) {
    throw InsufficientSample("both samples need at least one observation");
  }
  if (options.reference_permutations < 1 || permutations < 1) {
    throw InvalidArgument("permutation counts must be positive");
  }
  Stream draw(derive_key(seed, {0}));
  const Sample a =
      sample_multivariate(Family{UniformCube{options.dim}}, n, draw);
  const Sample b =
      sample_multivariate(Family{UniformCube{options.dim}}, m, draw);
  const LabeledPool p = pool(a, b);
  const EnergyEvaluator energy(distance_matrix(p), LogKernel{});
  const LabelStatistic stat = [&energy](std::span<const Label> labels) {
    return energy.statistic(labels).phi;
  };

  PermutationOptions reference_options;
  reference_options.permutations = options.reference_permutations;
  reference_options.seed = derive_key(seed, {1});
  reference_options.threads = options.threads;
  NullDistribution reference =
      permutation_null(p, stat, Tail::High, reference_options);
  std::sort(reference.values.begin(), reference.values.end());
  const auto ref_count = static_cast<double>(reference.count());

  CalibrationResult result{};
  result.achieved.resize(repeats);
  for (std::size_t k = 0; k < repeats; ++k) {
    PermutationOptions batch;
    batch.permutations = permutations;
    batch.seed = derive_key(seed, {2, k});
    batch.exhaustive_cap = 0;
    batch.threads = options.threads;
    const NullDistribution null = permutation_null(p, stat, Tail::High, batch);
    const double threshold = critical_value(null, options.alpha);
    const auto below = std::lower_bound(reference.values.begin(),
                                        reference.values.end(), threshold);
    result.achieved[k] =
        static_cast<double>(reference.values.end() - below) / ref_count;
  }
  std::vector<double> sorted = result.achieved;
  std::sort(sorted.begin(), sorted.end());
  result.low = quantile_sorted(sorted, 0.025);
  result.high = quantile_sorted(sorted, 0.975);
  return result;
}

}  // namespace energy2
