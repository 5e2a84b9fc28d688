#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "energy2/distributions.hpp"
#include "energy2/error.hpp"
#include "energy2/rng.hpp"
#include "oracles.hpp"

using namespace energy2;

namespace {

struct Moments {
  double mean, var, skew;
};

Moments moments(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double m2 = 0, m3 = 0;
  for (double v : x) {
    m2 += (v - mean) * (v - mean);
    m3 += (v - mean) * (v - mean) * (v - mean);
  }
  m2 /= n;
  m3 /= n;
  return {mean, m2, m3 / std::pow(m2, 1.5)};
}

std::vector<double> column(const Sample& s, std::size_t k) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s(i, k);
  return out;
}

double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  const auto mx = moments(x), my = moments(y);
  double c = 0;
  for (std::size_t i = 0; i < x.size(); ++i) c += (x[i] - mx.mean) * (y[i] - my.mean);
  return c / static_cast<double>(x.size()) / std::sqrt(mx.var * my.var);
}

std::vector<double> ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t k = 0; k < idx.size(); ++k) r[idx[k]] = static_cast<double>(k);
  return r;
}

/// sup |F_n(x) - x| for a sample that should be uniform on (0, 1).
double ks_uniform(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max({d, (static_cast<double>(i) + 1) / n - x[i], x[i] - static_cast<double>(i) / n});
  }
  return d;
}

double median(std::vector<double> x) {
  std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(x.size() / 2), x.end());
  return x[x.size() / 2];
}

}  // namespace

TEST_CASE("stream reproducibility and key derivation") {
  Stream a(derive_key(1, {2, 3})), b(derive_key(1, {2, 3}));
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  CHECK(derive_key(1, {2, 3}) != derive_key(1, {3, 2}));
  CHECK(derive_key(1, {2}) != derive_key(1, {2, 0}));
  CHECK(derive_key(1, {}) != derive_key(2, {}));
  Stream c(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform_open();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    CHECK(c.below(7) < 7);
  }
}

TEST_CASE("normal, exponential and gamma moments") {
  Stream s(77);
  const int n = 200000;
  std::vector<double> z(n), e(n), g(n), h(n);
  for (int i = 0; i < n; ++i) {
    z[i] = s.normal();
    e[i] = s.exponential();
    g[i] = s.gamma(2.5);
    h[i] = s.gamma(0.3);
  }
  CHECK(std::abs(moments(z).mean) < 0.01);
  CHECK(std::abs(moments(z).var - 1) < 0.015);
  CHECK(std::abs(moments(e).mean - 1) < 0.01);
  CHECK(std::abs(moments(g).mean - 2.5) < 0.02);
  CHECK(std::abs(moments(g).var - 2.5) < 0.05);
  CHECK(std::abs(moments(h).mean - 0.3) < 0.005);
  CHECK(std::abs(moments(h).var - 0.3) < 0.02);

  Stream t(78);
  double lg = 0;
  for (int i = 0; i < n; ++i) lg += t.log_gamma(0.05);
  // E[log G] for shape a is digamma(a); digamma(0.05) = -20.5633...
  CHECK(std::abs(lg / n - (-20.56337)) < 0.2);
}

TEST_CASE("univariate family moments") {
  Stream s(101);
  const auto f1 = sample_univariate(Univariate::F1, 100000, s);
  CHECK(std::abs(moments(f1.data()).mean) < 0.02);
  CHECK(std::abs(moments(f1.data()).var - 1) < 0.03);
  CHECK(*std::max_element(f1.data().begin(), f1.data().end()) <= std::sqrt(3.0));

  const auto f6 = sample_univariate(Univariate::F6, 100000, s);
  CHECK(std::abs(moments(f6.data()).skew - std::sqrt(8.0 / 3.0)) < 0.1);
  CHECK(std::abs(moments(f6.data()).mean) < 0.02);

  const auto f4 = sample_univariate(Univariate::F4, 1000, s);
  CHECK(std::all_of(f4.data().begin(), f4.data().end(), [](double x) { return std::isfinite(x); }));

  const auto f5 = sample_univariate(Univariate::F5, 100000, s);
  CHECK(*std::min_element(f5.data().begin(), f5.data().end()) >= -1.0);
  CHECK(std::abs(moments(f5.data()).mean) < 0.02);

  // Standardized families: mean 0 and variance 1.
  for (Univariate f : {Univariate::F2, Univariate::F3}) {
    const auto x = sample_univariate(f, 100000, s);
    CHECK(std::abs(moments(x.data()).mean) < 0.02);
  }
  const auto f3 = sample_univariate(Univariate::F3, 100000, s);
  CHECK(std::abs(moments(f3.data()).var - 2.0) < 0.06);
  const auto f7 = sample_univariate(Univariate::F7, 100000, s);
  CHECK(std::abs(moments(f7.data()).var - 3.25) < 0.06);
  const auto f8 = sample_univariate(Univariate::F8, 100000, s);
  CHECK(std::abs(moments(f8.data()).var - 4.0) < 0.15);
  const auto f9 = sample_univariate(Univariate::F9, 100000, s);
  CHECK(std::abs(moments(f9.data()).var - 3.5) < 0.08);
}

TEST_CASE("location-scale transform") {
  const Sample s = Sample::from_rows({{1}, {2}});
  CHECK(location_scale(s, 0.0, 1.0) == s);
  CHECK(location_scale(s, 0.5, 0.5) == Sample::from_rows({{1.0}, {1.5}}));
  CHECK_THROWS_AS(location_scale(s, 0.0, 0.0), DomainError);

  Stream r(5);
  const auto x = location_scale(sample_univariate(Univariate::F2, 100000, r), 0.6, 1.6);
  CHECK(std::abs(moments(x.data()).mean - 0.6) < 0.02);
  CHECK(std::abs(moments(x.data()).var - 2.56) < 0.05);
}

TEST_CASE("multivariate families") {
  Stream s(202);
  const auto corr = sample_multivariate(Family{CorrNormal({{1, 0.9}, {0.9, 1}})}, 100000, s);
  CHECK(std::abs(correlation(column(corr, 0), column(corr, 1)) - 0.9) < 0.01);

  const auto nlog = sample_multivariate(Family{NLog{1}}, 100000, s);
  CHECK(std::abs(median(column(nlog, 0)) - std::log(0.6744897501960817)) < 0.02);

  const Family case13 = make_mixture(0.2, Family{UniformCube{2}}, Family{IsoNormal{2, 0.5, 0.05}});
  const auto mix = sample_mixture(std::get<Mixture>(case13.kind), 100000, s);
  const double frac = std::accumulate(mix.from_second.begin(), mix.from_second.end(), 0.0) / 1e5;
  CHECK(std::abs(frac - 0.2) < 0.005);
  CHECK(mix.sample.dim() == 2);

  const auto t = sample_multivariate(Family{StudentT{4.0, 2}}, 100000, s);
  CHECK(std::abs(moments(column(t, 0)).var - 2.0) < 0.1);
  const auto c = sample_multivariate(Family{MultiCauchy{2, true}}, 1000, s);
  CHECK(c.size() == 1000);
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(CorrNormal({{1, 2}, {2, 1}}), InvalidCovariance);
  CHECK_THROWS_AS(CorrNormal({{1, 0.5}, {0.4, 1}}), InvalidCovariance);
  CHECK_THROWS_AS(CorrNormal({{1, 0.5}}), InvalidCovariance);
  CHECK_NOTHROW(CorrNormal({{1, .4, .5, .7}, {.4, 1, .6, .8}, {.5, .6, 1, .9}, {.7, .8, .9, 1}}));
  CHECK_THROWS_AS(validate(Family{CookJohnson{0.0, 2}}), InvalidArgument);
  CHECK_THROWS_AS(validate(Family{StudentT{-1.0, 2}}), InvalidArgument);
  CHECK_THROWS_AS(validate(make_mixture(0.5, Family{IsoNormal{2}}, Family{IsoNormal{3}})),
                  DimensionMismatch);
  CHECK_THROWS_AS(validate(make_mixture(1.5, Family{IsoNormal{2}}, Family{IsoNormal{2}})),
                  InvalidArgument);
  CHECK(describe(Family{UnivariateFamily{Univariate::F7}}) == "f7");
  CHECK(describe(Family{CookJohnson{0.6, 2}}) == "CJ(0.6)");
  CHECK(dimension(Family{CookJohnson{0.6, 4}}) == 4);
}

TEST_CASE("Cook-Johnson marginals are uniform and dependence grows as a shrinks") {
  for (double a : {10.0, 1.0, 0.6, 0.05}) {
    Stream s(derive_key(303, {static_cast<std::uint64_t>(a * 100)}));
    const auto x = cook_johnson(a, 2, 100000, s);
    for (std::size_t k = 0; k < 2; ++k) CHECK(ks_uniform(column(x, k)) < 0.006);
  }
  Stream s(404);
  const auto weak = cook_johnson(10.0, 2, 10000, s);
  const auto strong = cook_johnson(0.6, 2, 10000, s);
  const double rho_weak = correlation(ranks(column(weak, 0)), ranks(column(weak, 1)));
  const double rho_strong = correlation(ranks(column(strong, 0)), ranks(column(strong, 1)));
  CHECK(rho_strong > rho_weak);

  const auto tight = cook_johnson(0.01, 4, 10000, s);
  std::vector<double> spread(tight.size());
  for (std::size_t i = 0; i < tight.size(); ++i) {
    const auto row = tight.row(i);
    spread[i] = *std::max_element(row.begin(), row.end()) - *std::min_element(row.begin(), row.end());
  }
  CHECK(median(spread) < 0.05);
}

TEST_CASE("unit-variance scaling of the one-dimensional families") {
  Stream s(909);
  for (Univariate f : {Univariate::F3, Univariate::F7, Univariate::F8, Univariate::F9}) {
    const auto x = sample_univariate(UnivariateFamily{f, true}, 200000, s);
    CHECK(std::abs(moments(x.data()).mean) < 0.015);
    CHECK(std::abs(moments(x.data()).var - 1.0) < 0.03);
  }
  CHECK(univariate_sd(Univariate::F4) == 1.0);
  CHECK(univariate_sd(Univariate::F8) == 2.0);
  CHECK(describe(Family{UnivariateFamily{Univariate::F7, true}}) == "f7/sd");
  CHECK(describe(Family{UnivariateFamily{Univariate::F1, true}}) == "f1");
}
