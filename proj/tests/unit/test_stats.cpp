#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "nheth/errors.hpp"
#include "nheth/stats.hpp"

using namespace nheth::stats;

namespace {

double kolmogorov_series(double lambda) {
  double s = 0.0;
  for (int k = 1; k <= 400; ++k) s += (k % 2 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return s;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("moments and quantiles") {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(xs) == 2.5);
  CHECK(sample_variance(xs) == doctest::Approx(5.0 / 3.0));
  CHECK(sample_variance(std::vector<double>{7.0}) == 0.0);
  CHECK(quantile_sorted(xs, 0.0) == 1.0);
  CHECK(quantile_sorted(xs, 1.0) == 4.0);
  CHECK(quantile_sorted(xs, 0.5) == doctest::Approx(2.5));
}

TEST_CASE("Kolmogorov distribution") {
  CHECK(kolmogorov_q(1.0) == doctest::Approx(0.26999967167735456).epsilon(1e-12));
  CHECK(kolmogorov_q(0.5) == doctest::Approx(0.9639452436648751).epsilon(1e-12));
  for (double l : {0.6, 0.8, 1.0, 1.17, 1.19, 1.5, 2.0}) {
    CHECK(kolmogorov_q(l) == doctest::Approx(kolmogorov_series(l)).epsilon(1e-12));
  }
  CHECK(kolmogorov_q(0.0) == 1.0);
  CHECK(kolmogorov_q(0.05) == doctest::Approx(1.0));
  CHECK(kolmogorov_q(10.0) < 1e-80);
}

TEST_CASE("KS statistic by hand") {
  const std::vector<double> xs{-1.0, 0.0, 1.0};
  const auto t = ks_normal(xs, 0.0, 1.0);
  const double phi1 = 0.5 * std::erfc(-1.0 / std::sqrt(2.0));
  CHECK(t.statistic == doctest::Approx(phi1 - 2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("normality test separates Gaussian from uniform samples") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd(1.0, 2.0);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  std::vector<double> g(3000), u(3000);
  for (auto& x : g) x = nd(gen);
  for (auto& x : u) x = ud(gen);
  std::sort(g.begin(), g.end());
  std::sort(u.begin(), u.end());
  const auto fg = fit_gaussian(g);
  CHECK(fg.n == 3000);
  CHECK(fg.mean == doctest::Approx(1.0).epsilon(0.1));
  CHECK(fg.variance == doctest::Approx(4.0).epsilon(0.1));
  CHECK(fg.normality.p_value > 0.01);
  CHECK(fit_gaussian(u).normality.p_value < 0.01);
}

TEST_CASE("Freedman-Diaconis histogram") {
  std::vector<double> xs(1000);
  std::iota(xs.begin(), xs.end(), 0.0);
  const auto h = freedman_diaconis(xs);
  CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == 1000);
  CHECK(h.edges.size() == h.counts.size() + 1);
  CHECK(std::is_sorted(h.edges.begin(), h.edges.end()));
  // width 2 * 499.5 / 10 = 99.9 over a range of 999
  CHECK(h.counts.size() == 10);
  const auto one = freedman_diaconis(std::vector<double>{2.0, 2.0, 2.0});
  CHECK(one.counts == std::vector<std::size_t>{3});
}

TEST_CASE("least squares") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0}, y{1.0, 3.0, 5.0, 7.0};
  const auto f = least_squares(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK_THROWS_AS(least_squares(std::vector<double>{1.0, 1.0}, std::vector<double>{0.0, 1.0}),
                  nheth::InvalidArgument);
}

}  // TEST_SUITE
