#include "blindmon/design.hpp"

#include <cmath>

#include "blindmon/distributions.hpp"
#include "blindmon/errors.hpp"

namespace blindmon {

DesignParams DesignParams::from_error_rates(double alpha, double beta, double delta_a) {
  return DesignParams{alpha, beta, delta_a, compute_v(alpha, beta, delta_a)};
}

ScenarioTruth::ScenarioTruth(double mu1_, double mu2_, double sigma_)
    : mu1(mu1_), mu2(mu2_), sigma(sigma_) {
  if (!std::isfinite(mu1) || !std::isfinite(mu2)) {
    throw DomainError("ScenarioTruth: means must be finite");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("ScenarioTruth: sigma must be positive and finite");
  }
}

double compute_v(double alpha, double beta, double delta_a) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw DomainError("compute_v: alpha must lie in (0, 0.5)");
  }
  // beta = 0.5 (power one half) is allowed; alpha stays open so that v > 0.
  if (!(beta > 0.0 && beta <= 0.5)) {
    throw DomainError("compute_v: beta must lie in (0, 0.5]");
  }
  if (!(delta_a > 0.0) || !std::isfinite(delta_a)) {
    throw DomainError("compute_v: delta_a must be positive");
  }
  const double z = normal_quantile(1.0 - alpha) + normal_quantile(1.0 - beta);
  return 2.0 * z * z / (delta_a * delta_a);
}

double n_req(double v, double sigma) {
  if (!(v > 0.0) || !(sigma > 0.0)) {
    throw DomainError("n_req: v and sigma must be positive");
  }
  return v * sigma * sigma;
}

}  // namespace blindmon
