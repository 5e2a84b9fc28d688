#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "energy2/sample.hpp"

namespace energy2 {

/// R(r) = -ln r.
struct LogKernel {
  friend bool operator==(const LogKernel&, const LogKernel&) = default;
};

/// R(r) = r^-kappa, valid for 0 < kappa < d.
struct PowerLawKernel {
  double kappa;
  friend bool operator==(const PowerLawKernel&, const PowerLawKernel&) = default;
};

/// R(r) = exp(-r^2 / (2 sigma^2)).
struct GaussianKernel {
  double sigma;
  friend bool operator==(const GaussianKernel&, const GaussianKernel&) = default;
};

using DistanceKernel = std::variant<LogKernel, PowerLawKernel, GaussianKernel>;

struct KernelOptions {
  /// When set, distances below this floor are clamped up to it instead of
  /// raising SingularDistance for kernels that diverge at zero.
  std::optional<double> min_distance;
};

/// Parses `log`, `power:<kappa>` or `gauss:<sigma>`.
DistanceKernel parse_kernel(std::string_view spec);
std::string to_string(const DistanceKernel& kernel);

double kernel_eval(const DistanceKernel& kernel, double r,
                   const KernelOptions& options = {});

/// Checks kernel parameters against the dimension of the data.
void validate_kernel(const DistanceKernel& kernel, std::size_t dim);

struct EnergyValue {
  double phi;
  double phi_a;
  double phi_b;
  double phi_ab;
};

/// Kernel values R(r_ij) for all i < j of one pool, evaluated once and reused
/// for every relabeling.
class EnergyEvaluator {
 public:
  EnergyEvaluator(const DistanceMatrix& dm, const DistanceKernel& kernel,
                  const KernelOptions& options = {});

  std::size_t size() const noexcept { return size_; }

  /// Test statistic with weights 1/n^2, 1/m^2 and -1/(nm).
  EnergyValue statistic(std::span<const Label> labels) const;
  /// Divergence estimate with weights 1/(n(n-1)), 1/(m(m-1)) and -1/(nm).
  double divergence_unbiased(std::span<const Label> labels) const;

 private:
  struct PairSums {
    double aa = 0.0;
    double ab = 0.0;
    double bb = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;
  };
  PairSums pair_sums(std::span<const Label> labels) const;

  std::size_t size_;
  std::vector<double> packed_;  // row-major upper triangle, i < j
};

EnergyValue energy_statistic(const DistanceMatrix& dm,
                             std::span<const Label> labels, std::size_t n,
                             std::size_t m, const DistanceKernel& kernel,
                             const KernelOptions& options = {});

double energy_divergence_unbiased(const DistanceMatrix& dm,
                                  std::span<const Label> labels, std::size_t n,
                                  std::size_t m, const DistanceKernel& kernel,
                                  const KernelOptions& options = {});

/// Fourier transform of r^-kappa in d dimensions at wave number k:
/// 2^(d-kappa) pi^(d/2) Gamma((d-kappa)/2) / Gamma(kappa/2) k^(kappa-d).
double power_kernel_fourier(double k, int d, double kappa);

}  // namespace energy2
