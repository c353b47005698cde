#include <doctest.h>

#include <cmath>

#include "blindmon/design.hpp"
#include "blindmon/errors.hpp"

using namespace blindmon;

TEST_CASE("compute_v examples") {
  // 2 (1.959964 + 0.841621)^2
  CHECK(std::fabs(compute_v(0.025, 0.2, 1.0) - 15.6979) < 1e-3);
  CHECK(std::fabs(compute_v(0.025, 0.5, 1.0) - 7.6829) < 1e-3);
  CHECK(compute_v(0.025, 0.2, 2.0) == compute_v(0.025, 0.2, 1.0) / 4.0);
}

TEST_CASE("compute_v domain guards") {
  CHECK_THROWS_AS(compute_v(0.0, 0.2, 1.0), DomainError);
  CHECK_THROWS_AS(compute_v(0.5, 0.2, 1.0), DomainError);
  CHECK_THROWS_AS(compute_v(0.025, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(compute_v(0.025, 0.6, 1.0), DomainError);
  CHECK_THROWS_AS(compute_v(0.025, 0.2, 0.0), DomainError);
  CHECK_THROWS_AS(compute_v(0.025, 0.2, -1.0), DomainError);
}

TEST_CASE("DesignParams recomputes v") {
  const auto d = DesignParams::from_error_rates(0.05, 0.1, 0.5);
  CHECK(d.v > 0.0);
  CHECK(std::fabs(d.v - compute_v(d.alpha, d.beta, d.delta_a)) <= 1e-10 * d.v);
}

TEST_CASE("n_req examples") {
  CHECK(std::fabs(n_req(1.0, std::sqrt(10.0)) - 10.0) < 1e-12);
  CHECK(n_req(1000.0, 1.0) == 1000.0);
  CHECK(n_req(1.0, 1.0) == 1.0);
  CHECK_THROWS_AS(n_req(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(n_req(1.0, -1.0), DomainError);
}

TEST_CASE("property: n_req invariant under joint rescaling of delta_a and sigma") {
  for (double c : {0.01, 0.3, 1.0, 2.5, 17.0, 1e3}) {
    for (double sigma : {0.2, 1.0, 9.0}) {
      const double base = n_req(compute_v(0.025, 0.2, 0.7), sigma);
      const double scaled = n_req(compute_v(0.025, 0.2, 0.7 * c), sigma * c);
      CHECK(std::fabs(base - scaled) <= 1e-12 * base);
    }
  }
}

TEST_CASE("ScenarioTruth requires positive sigma") {
  CHECK_THROWS_AS(ScenarioTruth(0.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(ScenarioTruth(0.0, 0.0, -2.0), DomainError);
  CHECK(ScenarioTruth(3.0, 1.0, 1.0).delta() == 2.0);
}
