#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "energy2/rng.hpp"
#include "energy2/sample.hpp"

namespace energy2 {

/// The one-dimensional populations f1..f9.
enum class Univariate {
  F1,  // uniform on [-sqrt 3, sqrt 3]
  F2,  // standard normal
  F3,  // Laplace, density exp(-|x|)/2
  F4,  // standard Cauchy
  F5,  // exponential shifted to start at -1
  F6,  // chi-square with 3 dof, standardized to mean 0, variance 1
  F7,  // N(1.5, 1)/2 + N(-1.5, 1)/2
  F8,  // 0.8 N(0, 1) + 0.2 N(0, 4^2)
  F9,  // N(1, 2^2)/2 + N(-1, 1)/2
};

struct UnivariateFamily {
  Univariate which;
  /// Divide by the population standard deviation. F4 has none and is left
  /// as is; F1, F2, F5, F6 already have unit variance.
  bool unit_variance = false;
};

/// Population standard deviation of a family; 1 for F4 by convention.
double univariate_sd(Univariate family);

/// N(mean * 1, sd^2 I) in `dim` dimensions.
struct IsoNormal {
  std::size_t dim;
  double mean = 0.0;
  double sd = 1.0;
};

/// N(0, V) sampled through the lower Cholesky factor of V.
class CorrNormal {
 public:
  /// Throws InvalidCovariance unless `cov` is square, symmetric and
  /// positive definite.
  explicit CorrNormal(std::vector<std::vector<double>> cov);

  std::size_t dim() const noexcept { return cov_.size(); }
  const std::vector<std::vector<double>>& cov() const noexcept { return cov_; }
  const std::vector<double>& factor() const noexcept { return lower_; }

 private:
  std::vector<std::vector<double>> cov_;
  std::vector<double> lower_;  // row-major dim x dim
};

/// Cauchy with independent coordinates, or the spherical multivariate law.
struct MultiCauchy {
  std::size_t dim;
  bool spherical = false;
};

/// Each coordinate of N(0, I) mapped through x -> ln|x|.
struct NLog {
  std::size_t dim;
};

struct StudentT {
  double nu;
  std::size_t dim;
  bool spherical = false;
};

struct UniformCube {
  std::size_t dim;
};

/// Clayton-type copula with uniform marginals; dependence grows as a -> 0.
struct CookJohnson {
  double a;
  std::size_t dim;
};

struct Family;

/// (1 - weight) * first + weight * second.
struct Mixture {
  double weight;
  std::shared_ptr<const Family> first;
  std::shared_ptr<const Family> second;
};

struct Family {
  std::variant<UnivariateFamily, IsoNormal, CorrNormal, MultiCauchy, NLog,
               StudentT, UniformCube, CookJohnson, Mixture>
      kind;
};

Family make_mixture(double weight, Family first, Family second);

std::size_t dimension(const Family& family);
/// Short human-readable name, e.g. "f7", "N(0,I)", "CJ(0.6)".
std::string describe(const Family& family);
/// Throws on invalid parameters (dimension mismatch, a <= 0, nu <= 0, ...).
void validate(const Family& family);

Sample sample_univariate(Univariate family, std::size_t n, Stream& stream);
Sample sample_univariate(const UnivariateFamily& family, std::size_t n,
                         Stream& stream);
Sample sample_multivariate(const Family& family, std::size_t n, Stream& stream);

/// Every entry x becomes theta + tau * x.
Sample location_scale(const Sample& s, double theta, double tau);

Sample cook_johnson(double a, std::size_t dim, std::size_t n, Stream& stream);

struct MixtureDraw {
  Sample sample;
  std::vector<std::uint8_t> from_second;  // 1 where the second component drew
};
MixtureDraw sample_mixture(const Mixture& mixture, std::size_t n,
                           Stream& stream);

}  // namespace energy2
