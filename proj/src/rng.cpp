#include "energy2/rng.hpp"

#include <cmath>

namespace energy2 {

__extension__ using uint128 = unsigned __int128;

std::uint64_t derive_key(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  std::uint64_t depth = 0;
  for (std::uint64_t p : path) {
    ++depth;
    h = mix64(h ^ mix64(p + depth * 0x9e3779b97f4a7c15ULL));
  }
  return h;
}

std::size_t Stream::below(std::size_t bound) noexcept {
  const auto range = static_cast<std::uint64_t>(bound);
  uint128 product =
      static_cast<uint128>((*this)()) * range;
  auto low = static_cast<std::uint64_t>(product);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      product = static_cast<uint128>((*this)()) * range;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::size_t>(product >> 64);
}

double Stream::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  // Marsaglia polar method.
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

double Stream::exponential() noexcept { return -std::log(uniform_open()); }

double Stream::gamma(double shape) noexcept {
  if (shape < 1.0) {
    return gamma(shape + 1.0) * std::pow(uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Stream::log_gamma(double shape) noexcept {
  if (shape < 1.0) {
    return std::log(gamma(shape + 1.0)) + std::log(uniform_open()) / shape;
  }
  return std::log(gamma(shape));
}

}  // namespace energy2
