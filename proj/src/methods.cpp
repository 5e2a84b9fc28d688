#include "energy2/methods.hpp"

#include <algorithm>
#include <optional>

#include "energy2/error.hpp"
#include "energy2/graph.hpp"
#include "energy2/univariate.hpp"

namespace energy2 {

std::string_view method_name(Method method) {
  switch (method) {
    case Method::Energy: return "energy";
    case Method::FriedmanRafsky: return "fr";
    case Method::NearestNeighbor: return "nn";
    case Method::KolmogorovSmirnov: return "ks";
    case Method::CramerVonMises: return "cvm";
    case Method::ChiSquare: return "chi2";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::Energy, Method::FriedmanRafsky,
                   Method::NearestNeighbor, Method::KolmogorovSmirnov,
                   Method::CramerVonMises, Method::ChiSquare}) {
    if (method_name(m) == name) return m;
  }
  throw InvalidArgument("unknown method '" + std::string(name) +
                        "' (expected energy, fr, nn, ks, cvm or chi2)");
}

std::vector<Method> parse_method_list(std::string_view comma_separated) {
  std::vector<Method> out;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    const std::size_t comma = comma_separated.find(',', start);
    const std::size_t end =
        comma == std::string_view::npos ? comma_separated.size() : comma;
    const Method m = parse_method(comma_separated.substr(start, end - start));
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Tail rejection_tail(Method method) {
  return method == Method::FriedmanRafsky ? Tail::Low : Tail::High;
}

bool is_univariate(Method method) {
  return method == Method::KolmogorovSmirnov ||
         method == Method::CramerVonMises || method == Method::ChiSquare;
}

struct PreparedPool::Parts {
  std::optional<EnergyEvaluator> energy;
  std::optional<EdgeList> mst;
  std::vector<std::size_t> neighbors;
  std::optional<RankLayout> ranks;
  std::optional<EqualProbabilityBins> bins;
};

PreparedPool::PreparedPool(const LabeledPool& pool,
                           std::span<const Method> methods,
                           const MethodOptions& options)
    : pool_(std::make_shared<const LabeledPool>(pool)) {
  auto wants = [&](Method m) {
    return std::find(methods.begin(), methods.end(), m) != methods.end();
  };
  const bool geometric = wants(Method::Energy) ||
                         wants(Method::FriedmanRafsky) ||
                         wants(Method::NearestNeighbor);
  if (geometric) {
    dm_ = std::make_shared<const DistanceMatrix>(distance_matrix(*pool_));
  }
  auto parts = std::make_shared<Parts>();
  if (wants(Method::Energy)) {
    parts->energy.emplace(*dm_, options.kernel, options.kernel_options);
  }
  if (wants(Method::FriedmanRafsky)) {
    parts->mst = minimum_spanning_tree(*dm_);
  }
  if (wants(Method::NearestNeighbor)) {
    parts->neighbors = nearest_neighbors(*dm_);
  }
  if (wants(Method::KolmogorovSmirnov) || wants(Method::CramerVonMises) ||
      wants(Method::ChiSquare)) {
    const std::vector<double> values = pooled_values(*pool_);
    if (wants(Method::KolmogorovSmirnov) || wants(Method::CramerVonMises)) {
      parts->ranks.emplace(values);
    }
    if (wants(Method::ChiSquare)) parts->bins.emplace(values, options.chi2_bins);
  }
  parts_ = std::move(parts);
}

LabelStatistic PreparedPool::statistic(Method method) const {
  auto parts = parts_;
  auto missing = [&] {
    return Error("method " + std::string(method_name(method)) +
                 " was not prepared for this pool");
  };
  switch (method) {
    case Method::Energy:
      if (!parts->energy) throw missing();
      return [parts](std::span<const Label> labels) {
        return parts->energy->statistic(labels).phi;
      };
    case Method::FriedmanRafsky:
      if (!parts->mst) throw missing();
      return [parts](std::span<const Label> labels) {
        return static_cast<double>(
            friedman_rafsky_statistic(*parts->mst, labels));
      };
    case Method::NearestNeighbor:
      if (parts->neighbors.empty()) throw missing();
      return [parts](std::span<const Label> labels) {
        return static_cast<double>(
            nearest_neighbor_statistic(parts->neighbors, labels));
      };
    case Method::KolmogorovSmirnov:
      if (!parts->ranks) throw missing();
      return [parts](std::span<const Label> labels) {
        return parts->ranks->ks(labels);
      };
    case Method::CramerVonMises:
      if (!parts->ranks) throw missing();
      return [parts](std::span<const Label> labels) {
        return parts->ranks->cvm(labels);
      };
    case Method::ChiSquare:
      if (!parts->bins) throw missing();
      return [parts](std::span<const Label> labels) {
        return parts->bins->chi2(labels);
      };
  }
  throw missing();
}

}  // namespace energy2
