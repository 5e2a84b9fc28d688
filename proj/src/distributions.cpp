#include "energy2/distributions.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <numbers>
#include <sstream>
#include <span>

#include "energy2/error.hpp"

namespace energy2 {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// log(1 + exp(x)) without overflow.
double log1pexp(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double draw_univariate(Univariate which, Stream& s) {
  constexpr double sqrt3 = std::numbers::sqrt3;
  switch (which) {
    case Univariate::F1:
      return -sqrt3 + 2.0 * sqrt3 * s.uniform();
    case Univariate::F2:
      return s.normal();
    case Univariate::F3: {
      const double e = s.exponential();
      return (s() >> 63) ? e : -e;
    }
    case Univariate::F4:
      return std::tan(std::numbers::pi * (s.uniform_open() - 0.5));
    case Univariate::F5:
      return s.exponential() - 1.0;
    case Univariate::F6: {
      double chi2 = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double z = s.normal();
        chi2 += z * z;
      }
      return (chi2 - 3.0) / std::sqrt(6.0);
    }
    case Univariate::F7: {
      const double centre = s.uniform() < 0.5 ? 1.5 : -1.5;
      return centre + s.normal();
    }
    case Univariate::F8: {
      const double sd = s.uniform() < 0.2 ? 4.0 : 1.0;
      return sd * s.normal();
    }
    case Univariate::F9: {
      if (s.uniform() < 0.5) return 1.0 + 2.0 * s.normal();
      return -1.0 + s.normal();
    }
  }
  return 0.0;
}

double nonzero_normal(Stream& s) {
  double z = 0.0;
  do {
    z = s.normal();
  } while (z == 0.0);
  return z;
}

void draw_row(const Family& family, Stream& s, std::span<double> out,
              std::uint8_t* component);

void draw_row(const Mixture& mix, Stream& s, std::span<double> out,
              std::uint8_t* component) {
  const bool second = s.uniform() < mix.weight;
  if (component) *component = second ? 1 : 0;
  draw_row(second ? *mix.second : *mix.first, s, out, nullptr);
}

void draw_row(const Family& family, Stream& s, std::span<double> out,
              std::uint8_t* component) {
  std::visit(
      overloaded{
          [&](const UnivariateFamily& f) {
            out[0] = draw_univariate(f.which, s);
            if (f.unit_variance) out[0] /= univariate_sd(f.which);
          },
          [&](const IsoNormal& f) {
            for (double& x : out) x = f.mean + f.sd * s.normal();
          },
          [&](const CorrNormal& f) {
            const std::size_t d = f.dim();
            double z[16];
            std::vector<double> heap;
            double* zp = z;
            if (d > 16) {
              heap.resize(d);
              zp = heap.data();
            }
            for (std::size_t k = 0; k < d; ++k) zp[k] = s.normal();
            const auto& lower = f.factor();
            for (std::size_t r = 0; r < d; ++r) {
              double acc = 0.0;
              for (std::size_t c = 0; c <= r; ++c) acc += lower[r * d + c] * zp[c];
              out[r] = acc;
            }
          },
          [&](const MultiCauchy& f) {
            if (f.spherical) {
              const double w = std::sqrt(s.gamma(0.5) * 2.0);
              for (double& x : out) x = s.normal() / w;
            } else {
              for (double& x : out) {
                x = std::tan(std::numbers::pi * (s.uniform_open() - 0.5));
              }
            }
          },
          [&](const NLog&) {
            for (double& x : out) x = std::log(std::abs(nonzero_normal(s)));
          },
          [&](const StudentT& f) {
            if (f.spherical) {
              const double w = std::sqrt(2.0 * s.gamma(f.nu / 2.0) / f.nu);
              for (double& x : out) x = s.normal() / w;
            } else {
              for (double& x : out) {
                const double z = s.normal();
                x = z / std::sqrt(2.0 * s.gamma(f.nu / 2.0) / f.nu);
              }
            }
          },
          [&](const UniformCube&) {
            for (double& x : out) x = s.uniform();
          },
          [&](const CookJohnson& f) {
            const double log_g = s.log_gamma(f.a);
            for (double& x : out) {
              const double log_e = std::log(s.exponential());
              x = std::exp(-f.a * log1pexp(log_e - log_g));
            }
          },
          [&](const Mixture& f) { draw_row(f, s, out, component); },
      },
      family.kind);
}

std::string number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

CorrNormal::CorrNormal(std::vector<std::vector<double>> cov)
    : cov_(std::move(cov)) {
  const std::size_t d = cov_.size();
  if (d == 0) throw InvalidCovariance("covariance matrix is empty");
  Eigen::MatrixXd v(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    if (cov_[r].size() != d) {
      throw InvalidCovariance("covariance matrix is not square");
    }
    for (std::size_t c = 0; c < d; ++c) {
      if (!std::isfinite(cov_[r][c])) {
        throw InvalidCovariance("covariance matrix has a non-finite entry");
      }
      v(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          cov_[r][c];
    }
  }
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < r; ++c) {
      if (cov_[r][c] != cov_[c][r]) {
        throw InvalidCovariance("covariance matrix is not symmetric");
      }
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(v);
  if (llt.info() != Eigen::Success) {
    throw InvalidCovariance("covariance matrix is not positive definite");
  }
  const Eigen::MatrixXd l = llt.matrixL();
  lower_.assign(d * d, 0.0);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c <= r; ++c) {
      lower_[r * d + c] =
          l(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
}

Family make_mixture(double weight, Family first, Family second) {
  Family f{Mixture{weight, std::make_shared<const Family>(std::move(first)),
                   std::make_shared<const Family>(std::move(second))}};
  validate(f);
  return f;
}

std::size_t dimension(const Family& family) {
  return std::visit(
      overloaded{
          [](const UnivariateFamily&) -> std::size_t { return 1; },
          [](const CorrNormal& f) { return f.dim(); },
          [](const Mixture& f) { return dimension(*f.first); },
          [](const auto& f) -> std::size_t { return f.dim; },
      },
      family.kind);
}

std::string describe(const Family& family) {
  return std::visit(
      overloaded{
          [](const UnivariateFamily& f) {
            return "f" + std::to_string(static_cast<int>(f.which) + 1) +
                   (f.unit_variance && univariate_sd(f.which) != 1.0 ? "/sd" : "");
          },
          [](const IsoNormal& f) -> std::string {
            if (f.mean == 0.0 && f.sd == 1.0) return "N(0,I)";
            return "N(" + number(f.mean) + "," + number(f.sd) + "^2 I)";
          },
          [](const CorrNormal&) -> std::string { return "N(0,V)"; },
          [](const MultiCauchy& f) -> std::string {
            return f.spherical ? "C(0,I) spherical" : "C(0,I)";
          },
          [](const NLog&) -> std::string { return "Nlog(0,I)"; },
          [](const StudentT& f) {
            return "t" + number(f.nu) + (f.spherical ? " spherical" : "");
          },
          [](const UniformCube&) -> std::string { return "U(0,1)"; },
          [](const CookJohnson& f) { return "CJ(" + number(f.a) + ")"; },
          [](const Mixture& f) {
            return number(100.0 * (1.0 - f.weight)) + "% " + describe(*f.first) +
                   " + " + number(100.0 * f.weight) + "% " + describe(*f.second);
          },
      },
      family.kind);
}

void validate(const Family& family) {
  std::visit(
      overloaded{
          [](const UnivariateFamily&) {},
          [](const IsoNormal& f) {
            if (f.dim == 0) throw DomainError("normal dimension must be >= 1");
            if (!(f.sd > 0.0)) throw DomainError("normal sd must be positive");
            if (!std::isfinite(f.mean)) throw DomainError("normal mean must be finite");
          },
          [](const CorrNormal&) {},
          [](const MultiCauchy& f) {
            if (f.dim == 0) throw DomainError("cauchy dimension must be >= 1");
          },
          [](const NLog& f) {
            if (f.dim == 0) throw DomainError("nlog dimension must be >= 1");
          },
          [](const StudentT& f) {
            if (f.dim == 0) throw DomainError("student t dimension must be >= 1");
            if (!(f.nu > 0.0)) throw DomainError("student t dof must be positive");
          },
          [](const UniformCube& f) {
            if (f.dim == 0) throw DomainError("uniform dimension must be >= 1");
          },
          [](const CookJohnson& f) {
            if (f.dim == 0) throw DomainError("Cook-Johnson dimension must be >= 1");
            if (!(f.a > 0.0)) {
              throw DomainError("Cook-Johnson parameter a must be positive");
            }
          },
          [](const Mixture& f) {
            if (!f.first || !f.second) {
              throw DomainError("mixture needs two components");
            }
            if (!(f.weight >= 0.0 && f.weight <= 1.0)) {
              throw DomainError("mixture weight must lie in [0, 1]");
            }
            validate(*f.first);
            validate(*f.second);
            if (dimension(*f.first) != dimension(*f.second)) {
              throw DimensionMismatch("mixture components differ in dimension");
            }
          },
      },
      family.kind);
}

Sample sample_univariate(Univariate family, std::size_t n, Stream& stream) {
  return sample_multivariate(Family{UnivariateFamily{family}}, n, stream);
}

Sample sample_univariate(const UnivariateFamily& family, std::size_t n,
                         Stream& stream) {
  return sample_multivariate(Family{family}, n, stream);
}

double univariate_sd(Univariate family) {
  switch (family) {
    case Univariate::F3:
      return std::numbers::sqrt2;  // Laplace: 2 b^2
    case Univariate::F7:
      return std::sqrt(3.25);  // 1 + 1.5^2
    case Univariate::F8:
      return 2.0;  // 0.8 + 0.2 * 16
    case Univariate::F9:
      return std::sqrt(3.5);  // (4 + 1 + 1 + 1) / 2
    default:
      return 1.0;
  }
}

Sample sample_multivariate(const Family& family, std::size_t n,
                           Stream& stream) {
  if (n == 0) throw InvalidArgument("sample size must be at least 1");
  validate(family);
  const std::size_t d = dimension(family);
  std::vector<double> data(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    draw_row(family, stream, {data.data() + i * d, d}, nullptr);
  }
  return Sample(n, d, std::move(data));
}

Sample location_scale(const Sample& s, double theta, double tau) {
  if (!(tau > 0.0)) throw DomainError("scale tau must be positive");
  std::vector<double> data(s.data().begin(), s.data().end());
  for (double& x : data) x = theta + tau * x;
  return Sample(s.size(), s.dim(), std::move(data));
}

Sample cook_johnson(double a, std::size_t dim, std::size_t n, Stream& stream) {
  return sample_multivariate(Family{CookJohnson{a, dim}}, n, stream);
}

MixtureDraw sample_mixture(const Mixture& mixture, std::size_t n,
                           Stream& stream) {
  if (n == 0) throw InvalidArgument("sample size must be at least 1");
  const Family family{mixture};
  validate(family);
  const std::size_t d = dimension(family);
  std::vector<double> data(n * d);
  std::vector<std::uint8_t> component(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    draw_row(mixture, stream, {data.data() + i * d, d}, &component[i]);
  }
  return {Sample(n, d, std::move(data)), std::move(component)};
}

}  // namespace energy2
