#pragma once

// Brute-force reference implementations used only by tests. They work from
// raw coordinates and never call into the library's statistic code paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Point = std::vector<double>;

inline double euclid(const Point& x, const Point& y) {
  double ss = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) ss += (x[k] - y[k]) * (x[k] - y[k]);
  return std::sqrt(ss);
}

struct EnergyTerms {
  double a, b, ab;
};

/// The three double sums evaluated directly from the two point sets.
inline EnergyTerms energy_sums(const std::vector<Point>& a,
                               const std::vector<Point>& b,
                               const std::function<double(double)>& kernel) {
  EnergyTerms t{0, 0, 0};
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) t.a += kernel(euclid(a[i], a[j]));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) t.b += kernel(euclid(b[i], b[j]));
  for (const auto& x : a)
    for (const auto& y : b) t.ab += kernel(euclid(x, y));
  return t;
}

inline double energy_phi(const std::vector<Point>& a, const std::vector<Point>& b,
                         const std::function<double(double)>& kernel) {
  const auto t = energy_sums(a, b, kernel);
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  return t.a / (n * n) + t.b / (m * m) - t.ab / (n * m);
}

inline double log_kernel(double r) { return -std::log(r); }

struct BruteTree {
  double weight = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // sorted, i < j
};

/// Minimum spanning tree by enumerating every (N-1)-edge subset of the
/// complete graph; among minimum-weight trees keeps the lexicographically
/// smallest sorted edge list. Feasible for N <= 7.
inline BruteTree brute_force_mst(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
  const std::size_t e = all.size();
  const std::size_t need = n - 1;
  BruteTree best;
  std::vector<std::size_t> pick(need);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  for (;;) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = root(parent[x]);
    };
    bool acyclic = true;
    double w = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t k : pick) {
      auto [i, j] = all[k];
      const std::size_t ri = root(i), rj = root(j);
      if (ri == rj) {
        acyclic = false;
        break;
      }
      parent[ri] = rj;
      w += euclid(pts[i], pts[j]);
      edges.push_back(all[k]);
    }
    if (acyclic) {
      if (w < best.weight - 1e-12 ||
          (std::abs(w - best.weight) <= 1e-12 && edges < best.edges)) {
        best.weight = w;
        best.edges = edges;
      }
    }
    // next combination of `need` among `e`
    std::size_t i = need;
    while (i > 0 && pick[i - 1] == e - need + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < need; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

/// Number of label runs in sorted order, minus one.
inline std::size_t runs_minus_one(const std::vector<double>& values,
                                  const std::vector<int>& labels) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  std::size_t changes = 0;
  for (std::size_t k = 1; k < order.size(); ++k)
    changes += labels[order[k]] != labels[order[k - 1]];
  return changes;
}

/// Empirical CDF of `sample` at z, by counting.
inline double ecdf(const std::vector<double>& sample, double z) {
  std::size_t c = 0;
  for (double v : sample) c += v <= z;
  return static_cast<double>(c) / static_cast<double>(sample.size());
}

inline double ks(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (const auto* s : {&a, &b})
    for (double z : *s) d = std::max(d, std::abs(ecdf(a, z) - ecdf(b, z)));
  return d;
}

inline double cvm(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  double sum = 0.0;
  for (const auto* s : {&a, &b})
    for (double z : *s) {
      const double diff = ecdf(a, z) - ecdf(b, z);
      sum += diff * diff;
    }
  return n * m / ((n + m) * (n + m)) * sum;
}

/// Kolmogorov distance between the empirical distributions of two samples.
inline double kolmogorov_distance(std::vector<double> x, std::vector<double> y) {
  return ks(x, y);
}

}  // namespace oracle
