#include <doctest.h>

#include <algorithm>
#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "blindmon/distributions.hpp"
#include "blindmon/errors.hpp"
#include "blindmon/simulation.hpp"

using namespace blindmon;

namespace {

// Maclaurin series of erf; independent of std::erfc.
double erf_series(double x) {
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x * x / n;
    const double add = term / (2 * n + 1);
    sum += add;
    if (std::fabs(add) < 1e-18) break;
  }
  return 2.0 / std::sqrt(M_PI) * sum;
}

double quantile_by_bisection(double p) {
  double lo = -8.0;
  double hi = 8.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * (1.0 + erf_series(mid / std::sqrt(2.0))) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("normal_quantile matches a bisection oracle") {
  CHECK(normal_quantile(0.5) == 0.0);
  // Frozen from quantile_by_bisection.
  CHECK(std::fabs(normal_quantile(0.975) - 1.959964) < 1e-5);
  CHECK(std::fabs(normal_quantile(0.8) - 0.841621) < 1e-5);
  CHECK(std::fabs(quantile_by_bisection(0.975) - 1.959964) < 1e-5);
  CHECK(std::fabs(quantile_by_bisection(0.8) - 0.841621) < 1e-5);
  for (double p : {0.001, 0.02, 0.3, 0.7, 0.9, 0.99}) {
    CHECK(std::fabs(normal_quantile(p) - quantile_by_bisection(p)) < 1e-9);
  }
}

TEST_CASE("normal_quantile rejects p outside (0, 1)") {
  CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(-0.2), DomainError);
  CHECK_THROWS_AS(normal_quantile(std::nan("")), DomainError);
}

TEST_CASE("normal quantile and CDF are inverse") {
  double worst = 0.0;
  for (double lp = -8.0; lp <= -0.30103; lp += 0.01) {
    const double p = std::pow(10.0, lp);
    worst = std::max(worst, std::fabs(normal_cdf(normal_quantile(p)) - p));
    worst = std::max(worst, std::fabs(normal_cdf(normal_quantile(1.0 - p)) - (1.0 - p)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("RngStream is a pure function of seed, stream and index") {
  RngStream a(1, 0);
  RngStream b(1, 0);
  const double a1 = sample_standard_normal(a);
  const double a2 = sample_standard_normal(a);
  CHECK(a1 == sample_standard_normal(b));
  CHECK(a2 == sample_standard_normal(b));

  RngStream c(1, 1);
  RngStream d(2, 0);
  CHECK(sample_standard_normal(c) != a1);
  CHECK(sample_standard_normal(d) != a1);

  RngStream u(7, 3);
  for (int i = 0; i < 100000; ++i) {
    const double x = u.next_uniform();
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
  }
}

TEST_CASE("standard normal sampler moments over 10^6 draws") {
  RngStream rng(1, 0);
  constexpr int kDraws = 1000000;
  double sum = 0.0;
  double sum_sq = 0.0;
  int below = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double z = sample_standard_normal(rng);
    sum += z;
    sum_sq += z * z;
    below += z <= 1.959964 ? 1 : 0;
  }
  const double mean = sum / kDraws;
  const double var = (sum_sq - kDraws * mean * mean) / (kDraws - 1);
  CHECK(std::fabs(mean) <= 0.005);
  CHECK(std::fabs(var - 1.0) <= 0.01);
  const double frac = static_cast<double>(below) / kDraws;
  CHECK(frac >= 0.9737);
  CHECK(frac <= 0.9763);
}

TEST_CASE("central chi-squared closed forms") {
  for (double x : {0.1, 1.0, 2.0 * std::log(2.0), 5.0, 20.0}) {
    CHECK(std::fabs(central_chisq_cdf(2, x) - (1.0 - std::exp(-x / 2))) < 1e-13);
    CHECK(std::fabs(central_chisq_cdf(4, x) - (1.0 - std::exp(-x / 2) * (1 + x / 2))) < 1e-13);
  }
}

TEST_CASE("noncentral chi-squared CDF examples") {
  CHECK(std::fabs(noncentral_chisq_cdf({2, 0.0}, 2.0 * std::log(2.0)) - 0.5) < 1e-9);
  for (int dof : {1, 2, 5, 19, 59, 199}) {
    for (double x : {0.5, 3.0, 19.0, 60.0, 250.0}) {
      CHECK(std::fabs(noncentral_chisq_cdf({dof, 0.0}, x) - central_chisq_cdf(dof, x)) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(noncentral_chisq_cdf({3, 1.0}, -1.0), DomainError);
  CHECK_THROWS_AS(NoncentralChiSq(0, 1.0), DomainError);
  CHECK_THROWS_AS(NoncentralChiSq(3, -0.5), DomainError);
}

TEST_CASE("noncentral chi-squared CDF agrees with an independent implementation") {
  double worst = 0.0;
  for (int dof : {1, 3, 19, 59, 147}) {
    for (double lambda : {0.01, 0.37, 2.5, 15.0, 80.0, 400.0}) {
      boost::math::non_central_chi_squared ref(dof, lambda);
      for (double q : {0.02, 0.2, 0.5, 0.8, 0.98}) {
        const double x = boost::math::quantile(ref, q);
        worst = std::max(worst, std::fabs(noncentral_chisq_cdf({dof, lambda}, x) - q));
      }
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("noncentral chi-squared CDF vs a sampling oracle at (19, 2.5), x = 19") {
  // Oracle: central chi2_{19 + 2K}, K ~ Poisson(1.25), from the standard library.
  std::mt19937_64 gen(12345);
  std::poisson_distribution<int> poisson(1.25);
  constexpr int kDraws = 1000000;
  int hits = 0;
  for (int i = 0; i < kDraws; ++i) {
    std::chi_squared_distribution<double> chi(19.0 + 2.0 * poisson(gen));
    hits += chi(gen) <= 19.0 ? 1 : 0;
  }
  const double p_hat = static_cast<double>(hits) / kDraws;
  const double band = 3.0 * std::sqrt(p_hat * (1 - p_hat) / kDraws);
  CHECK(std::fabs(noncentral_chisq_cdf({19, 2.5}, 19.0) - p_hat) <= band);
}

TEST_CASE("noncentral chi-squared CDF monotone in x and in lambda") {
  for (int dof : {1, 9, 59}) {
    double prev_x = 0.0;
    for (double x = 0.0; x <= 200.0; x += 0.5) {
      const double f = noncentral_chisq_cdf({dof, 3.0}, x);
      CHECK(f >= prev_x - 1e-15);
      CHECK(f >= 0.0);
      CHECK(f <= 1.0);
      prev_x = f;
    }
    for (double x : {1.0, 10.0, 59.0, 120.0}) {
      double prev_l = 1.0;
      for (double lambda = 0.0; lambda <= 100.0; lambda += 0.25) {
        const double f = noncentral_chisq_cdf({dof, lambda}, x);
        CHECK(f <= prev_l + 1e-13);
        prev_l = f;
      }
    }
  }
}

TEST_CASE("noncentral chi-squared sampler") {
  SUBCASE("lambda = 0, dof = 1 has mean 1") {
    double sum = 0.0;
    for (int i = 0; i < 1000000; ++i) {
      RngStream rng(3, static_cast<std::uint64_t>(i));
      sum += sample_noncentral_chisq({1, 0.0}, rng);
    }
    CHECK(std::fabs(sum / 1e6 - 1.0) <= 0.01);
  }
  SUBCASE("dof = 19, lambda = 2.5 has mean 21.5") {
    RngStream rng(4, 0);
    double sum = 0.0;
    for (int i = 0; i < 1000000; ++i) sum += sample_noncentral_chisq({19, 2.5}, rng);
    CHECK(std::fabs(sum / 1e6 - 21.5) <= 0.05);
  }
  SUBCASE("empirical CDF vs noncentral_chisq_cdf, KS at 1%") {
    RngStream rng(5, 0);
    const NoncentralChiSq dist(19, 2.5);
    std::vector<double> draws(100000);
    for (auto& d : draws) d = sample_noncentral_chisq(dist, rng);
    const double stat = ks_statistic(draws, [&](double x) { return noncentral_chisq_cdf(dist, x); });
    CHECK(stat < 1.63 / std::sqrt(1e5));
  }
  SUBCASE("large noncentrality stays finite") {
    RngStream rng(6, 0);
    double sum = 0.0;
    for (int i = 0; i < 2000; ++i) sum += sample_noncentral_chisq({3, 2000.0}, rng);
    CHECK(std::fabs(sum / 2000 - 2003.0) < 10.0);
  }
}
