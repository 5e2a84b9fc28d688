#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "energy2/kernel.hpp"
#include "energy2/sample.hpp"

namespace energy2 {

enum class Method {
  Energy,
  FriedmanRafsky,
  NearestNeighbor,
  KolmogorovSmirnov,
  CramerVonMises,
  ChiSquare,
};

/// Which tail of the null distribution rejects.
enum class Tail { High, Low };

std::string_view method_name(Method method);
/// Accepts energy, fr, nn, ks, cvm, chi2.
Method parse_method(std::string_view name);
std::vector<Method> parse_method_list(std::string_view comma_separated);
Tail rejection_tail(Method method);
bool is_univariate(Method method);

struct MethodOptions {
  DistanceKernel kernel = LogKernel{};
  KernelOptions kernel_options;
  std::size_t chi2_bins = 5;
};

/// A statistic bound to one pooled geometry: labels in, value out.
using LabelStatistic = std::function<double(std::span<const Label>)>;

/// Per-pool precomputation shared by every requested method: the distance
/// matrix, kernel values, spanning tree, neighbor table and rank layouts are
/// built once here and read by every relabeling.
class PreparedPool {
 public:
  PreparedPool(const LabeledPool& pool, std::span<const Method> methods,
               const MethodOptions& options);

  const LabeledPool& pool() const noexcept { return *pool_; }
  /// Null when no requested method needs distances.
  const DistanceMatrix* distances() const noexcept { return dm_.get(); }
  LabelStatistic statistic(Method method) const;

 private:
  struct Parts;
  std::shared_ptr<const LabeledPool> pool_;
  std::shared_ptr<const DistanceMatrix> dm_;
  std::shared_ptr<const Parts> parts_;
};

}  // namespace energy2
