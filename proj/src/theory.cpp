#include "blindmon/theory.hpp"

#include <cmath>
#include <sstream>

#include "blindmon/distributions.hpp"
#include "blindmon/errors.hpp"

namespace blindmon {

namespace {

void check_bound_inputs(std::int64_t n1, double v, double sigma) {
  if (n1 < 2) throw DomainError("bound: n1 must be >= 2");
  if (!(v > 0.0)) throw DomainError("bound: v must be positive");
  if (!(sigma > 0.0)) throw DomainError("bound: sigma must be positive");
}

// Last summation index floor(q a) - 1, after checking the regime.
std::int64_t tail_upper_index(std::int64_t n1, double a, double epsilon, double q) {
  if (n1 < 2) {
    throw DomainError("tail bound: n1 >= 2 violated");
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("tail bound: a > 0 violated");
  }
  if (!(epsilon > 0.0)) {
    throw DomainError("tail bound: 0 < epsilon violated");
  }
  if (!(epsilon < q)) {
    throw DomainError("tail bound: epsilon < q violated");
  }
  if (!(q < 1.0)) {
    throw DomainError("tail bound: q < 1 violated");
  }
  const auto upper = static_cast<std::int64_t>(std::floor(q * a)) - 1;
  if (!(epsilon * a < static_cast<double>(upper))) {
    std::ostringstream msg;
    msg << "tail bound: epsilon*a < floor(q*a) - 1 violated (" << epsilon * a
        << " >= " << upper << ")";
    throw DomainError(msg.str());
  }
  return upper;
}

}  // namespace

double mean_bound(std::int64_t n1, double v, double sigma, double mu1, double mu2,
                  BoundVariant variant) {
  check_bound_inputs(n1, v, sigma);
  const double delta = mu1 - mu2;
  const double cost = v * sigma * sigma + v * delta * delta / 4.0;
  const double offset = variant == BoundVariant::theorem ? static_cast<double>(n1) : 1.5;
  return offset + cost;
}

double second_moment_bound(std::int64_t n1, double v, double sigma, double mu1, double mu2) {
  const double b = mean_bound(n1, v, sigma, mu1, mu2, BoundVariant::theorem);
  return b * b;
}

double tail_bound_sum(std::int64_t n1, double a, double epsilon, double q) {
  const std::int64_t upper = tail_upper_index(n1, a, epsilon, q);
  double sum = 0.0;
  for (std::int64_t n = n1; n <= upper; ++n) {
    const double z = static_cast<double>(n) / a;
    const double power = 0.5 * static_cast<double>(2 * n - 1);
    sum += std::exp(power * (1.0 - z + std::log(z)));
  }
  return sum;
}

double tail_bound_chisq(std::int64_t n1, double a, double epsilon, double q,
                        const std::function<double(std::int64_t)>& lambda_fn) {
  const std::int64_t upper = tail_upper_index(n1, a, epsilon, q);
  double sum = 0.0;
  for (std::int64_t n = n1; n <= upper; ++n) {
    const auto dof = static_cast<int>(2 * n - 1);
    const double x = static_cast<double>(n) * static_cast<double>(dof) / a;
    sum += noncentral_chisq_cdf(NoncentralChiSq(dof, lambda_fn(n)), x);
  }
  return sum;
}

double tail_bound_chisq(std::int64_t n1, double a, double epsilon, double q, double delta,
                        double sigma) {
  if (!(sigma > 0.0)) throw DomainError("tail bound: sigma must be positive");
  const double scale = delta * delta / (2.0 * sigma * sigma);
  return tail_bound_chisq(n1, a, epsilon, q,
                          [scale](std::int64_t n) { return static_cast<double>(n) * scale; });
}

TheoryTargets asymptotic_targets(double v, double sigma, double mu1, double mu2,
                                 std::int64_t n1) {
  check_bound_inputs(n1, v, sigma);
  const double delta = mu1 - mu2;
  const double s2 = sigma * sigma;
  const double required = v * s2;
  const double inflation = 1.0 + delta * delta / (4.0 * s2);

  TheoryTargets t{};
  t.mean_bound_theorem = mean_bound(n1, v, sigma, mu1, mu2, BoundVariant::theorem);
  t.mean_bound_table = mean_bound(n1, v, sigma, mu1, mu2, BoundVariant::table);
  t.second_moment_bound = t.mean_bound_theorem * t.mean_bound_theorem;
  t.ratio_limit_sigma = 1.0;
  t.clt_center_sigma = required;
  t.clt_var_sigma = 1.0;
  t.ratio_limit_v = inflation;
  t.clt_center_v = required * inflation;
  t.clt_var_v = (4.0 * s2 + 2.0 * delta * delta) / (4.0 * s2 + delta * delta);
  return t;
}

}  // namespace blindmon
