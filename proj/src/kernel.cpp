#include "energy2/kernel.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "energy2/error.hpp"

namespace energy2 {
namespace {

double parse_positive(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value) ||
      value <= 0.0) {
    throw InvalidArgument("kernel " + std::string(what) +
                          " must be a positive number, got '" +
                          std::string(text) + "'");
  }
  return value;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

DistanceKernel parse_kernel(std::string_view spec) {
  if (spec == "log") return LogKernel{};
  if (spec.starts_with("power:")) {
    return PowerLawKernel{parse_positive(spec.substr(6), "exponent")};
  }
  if (spec.starts_with("gauss:")) {
    return GaussianKernel{parse_positive(spec.substr(6), "width")};
  }
  throw InvalidArgument("unknown kernel '" + std::string(spec) +
                        "' (expected log, power:<kappa> or gauss:<sigma>)");
}

std::string to_string(const DistanceKernel& kernel) {
  std::ostringstream out;
  out.precision(17);
  std::visit(overloaded{
                 [&](const LogKernel&) { out << "log"; },
                 [&](const PowerLawKernel& k) { out << "power:" << k.kappa; },
                 [&](const GaussianKernel& k) { out << "gauss:" << k.sigma; },
             },
             kernel);
  return out.str();
}

double kernel_eval(const DistanceKernel& kernel, double r,
                   const KernelOptions& options) {
  if (r < 0.0 || std::isnan(r)) {
    throw DomainError("distance must be nonnegative");
  }
  return std::visit(
      overloaded{
          [&](const LogKernel&) {
            if (options.min_distance) r = std::max(r, *options.min_distance);
            if (r == 0.0) throw SingularDistance();
            return -std::log(r);
          },
          [&](const PowerLawKernel& k) {
            if (options.min_distance) r = std::max(r, *options.min_distance);
            if (r == 0.0) throw SingularDistance();
            return std::pow(r, -k.kappa);
          },
          [&](const GaussianKernel& k) {
            return std::exp(-r * r / (2.0 * k.sigma * k.sigma));
          },
      },
      kernel);
}

void validate_kernel(const DistanceKernel& kernel, std::size_t dim) {
  if (const auto* p = std::get_if<PowerLawKernel>(&kernel)) {
    if (!(p->kappa > 0.0) || !(p->kappa < static_cast<double>(dim))) {
      throw DomainError("power-law exponent must satisfy 0 < kappa < d = " +
                        std::to_string(dim));
    }
  } else if (const auto* g = std::get_if<GaussianKernel>(&kernel)) {
    if (!(g->sigma > 0.0)) throw DomainError("gaussian width must be positive");
  }
}

EnergyEvaluator::EnergyEvaluator(const DistanceMatrix& dm,
                                 const DistanceKernel& kernel,
                                 const KernelOptions& options)
    : size_(dm.size()) {
  validate_kernel(kernel, dm.dim());
  if (options.min_distance && !(*options.min_distance > 0.0)) {
    throw InvalidArgument("min_distance must be positive");
  }
  packed_.reserve(size_ * (size_ - 1) / 2);
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = i + 1; j < size_; ++j) {
      try {
        packed_.push_back(kernel_eval(kernel, dm(i, j), options));
      } catch (const SingularDistance&) {
        throw SingularDistance(i, j);
      }
    }
  }
}

EnergyEvaluator::PairSums EnergyEvaluator::pair_sums(
    std::span<const Label> labels) const {
  if (labels.size() != size_) {
    throw InvalidArgument("label count does not match the pool size");
  }
  // Index 0: both A, 1: mixed, 2: both B.
  double acc[3] = {0.0, 0.0, 0.0};
  std::size_t count_b = 0;
  const double* value = packed_.data();
  for (std::size_t i = 0; i < size_; ++i) {
    const unsigned li = static_cast<unsigned>(labels[i]);
    count_b += li;
    for (std::size_t j = i + 1; j < size_; ++j) {
      acc[li + static_cast<unsigned>(labels[j])] += *value++;
    }
  }
  return {acc[0], acc[1], acc[2], size_ - count_b, count_b};
}

EnergyValue EnergyEvaluator::statistic(std::span<const Label> labels) const {
  const PairSums s = pair_sums(labels);
  if (s.n == 0 || s.m == 0) {
    throw InsufficientSample("both samples need at least one observation");
  }
  const double n = static_cast<double>(s.n);
  const double m = static_cast<double>(s.m);
  EnergyValue v{};
  v.phi_a = s.aa / (n * n);
  v.phi_b = s.bb / (m * m);
  v.phi_ab = -s.ab / (n * m);
  v.phi = v.phi_a + v.phi_b + v.phi_ab;
  return v;
}

double EnergyEvaluator::divergence_unbiased(
    std::span<const Label> labels) const {
  const PairSums s = pair_sums(labels);
  if (s.n < 2 || s.m < 2) {
    throw InsufficientSample(
        "unbiased divergence needs at least two observations per sample");
  }
  const double n = static_cast<double>(s.n);
  const double m = static_cast<double>(s.m);
  return s.aa / (n * (n - 1.0)) + s.bb / (m * (m - 1.0)) - s.ab / (n * m);
}

namespace {

void check_counts(std::span<const Label> labels, std::size_t n,
                  std::size_t m) {
  std::size_t a = 0;
  for (Label l : labels) a += (l == Label::A);
  if (labels.size() != n + m || a != n) {
    throw InvalidArgument("labels are inconsistent with (n, m)");
  }
}

}  // namespace

EnergyValue energy_statistic(const DistanceMatrix& dm,
                             std::span<const Label> labels, std::size_t n,
                             std::size_t m, const DistanceKernel& kernel,
                             const KernelOptions& options) {
  check_counts(labels, n, m);
  return EnergyEvaluator(dm, kernel, options).statistic(labels);
}

double energy_divergence_unbiased(const DistanceMatrix& dm,
                                  std::span<const Label> labels, std::size_t n,
                                  std::size_t m, const DistanceKernel& kernel,
                                  const KernelOptions& options) {
  if (n < 2 || m < 2) {
    throw InsufficientSample(
        "unbiased divergence needs at least two observations per sample");
  }
  check_counts(labels, n, m);
  return EnergyEvaluator(dm, kernel, options).divergence_unbiased(labels);
}

double power_kernel_fourier(double k, int d, double kappa) {
  if (!(k > 0.0)) throw DomainError("wave number must be positive");
  if (d < 1) throw DomainError("dimension must be positive");
  const double dd = static_cast<double>(d);
  if (!(kappa > 0.0) || !(kappa < dd)) {
    throw DomainError("power-law exponent must satisfy 0 < kappa < d");
  }
  return std::pow(2.0, dd - kappa) * std::pow(std::numbers::pi, dd / 2.0) *
         std::tgamma((dd - kappa) / 2.0) / std::tgamma(kappa / 2.0) *
         std::pow(k, kappa - dd);
}

}  // namespace energy2
