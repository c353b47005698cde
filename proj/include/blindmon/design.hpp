#ifndef BLINDMON_DESIGN_HPP_
#define BLINDMON_DESIGN_HPP_

namespace blindmon {

// Fixed-sample design inputs for a one-sided two-sample z-test with 1:1
// allocation. `v` is the required per-group sample size per unit variance.
struct DesignParams {
  double alpha;
  double beta;
  double delta_a;
  double v;

  // Validates the inputs and derives v. Throws DomainError when out of range.
  static DesignParams from_error_rates(double alpha, double beta, double delta_a);
};

// Data-generating truth: X ~ N(mu1, sigma^2), Y ~ N(mu2, sigma^2).
struct ScenarioTruth {
  double mu1;
  double mu2;
  double sigma;

  ScenarioTruth(double mu1, double mu2, double sigma);

  double delta() const noexcept { return mu1 - mu2; }
};

// v = 2 (z_{1-alpha} + z_{1-beta})^2 / delta_a^2.
// Requires 0 < alpha < 0.5, 0 < beta <= 0.5, delta_a > 0.
double compute_v(double alpha, double beta, double delta_a);

// Per-group fixed-sample size v * sigma^2. Real valued on purpose.
double n_req(double v, double sigma);

}  // namespace blindmon

#endif  // BLINDMON_DESIGN_HPP_
