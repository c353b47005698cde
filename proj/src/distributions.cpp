#include "blindmon/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "blindmon/errors.hpp"

namespace blindmon {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// Acklam's rational approximation to the normal quantile, lower region and
// central region. Relative error about 1.2e-9 before refinement.
constexpr double kA[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                         -2.759285104469687e+02, 1.383577518672690e+02,
                         -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                         -1.556989798598866e+02, 6.680131188771972e+01,
                         -1.328068155288572e+01};
constexpr double kC[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                         -2.400758277161838e+00, -2.549732539343734e+00,
                         4.374664141464968e+00, 2.938163982698783e+00};
constexpr double kD[] = {7.784695709041462e-03, 3.224671290700398e-01,
                         2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kLowRegion = 0.02425;

double acklam_lower_half(double p) {
  if (p < kLowRegion) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
           ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
         (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// p <= 0.5; one Newton step on the CDF.
double lower_quantile(double p) {
  double x = acklam_lower_half(p);
  const double density = normal_pdf(x);
  if (density > 0.0) {
    x -= (normal_cdf(x) - p) / density;
  }
  return x;
}

double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < 100000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) {
      break;
    }
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double gamma_q_continued_fraction(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) {
      break;
    }
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double poisson_log_pmf(std::int64_t k, double mean) {
  return -mean + static_cast<double>(k) * std::log(mean) -
         std::lgamma(static_cast<double>(k) + 1.0);
}

// Inversion for K ~ Poisson(mean) using a single uniform. The search starts at
// the mode so that large means do not underflow exp(-mean).
std::int64_t poisson_inverse(double mean, double u) {
  if (mean <= 0.0) {
    return 0;
  }
  const auto mode = static_cast<std::int64_t>(std::floor(mean));
  const double w_mode = std::exp(poisson_log_pmf(mode, mean));

  double cdf_mode = 0.0;
  double w = w_mode;
  for (std::int64_t j = mode; j >= 0 && w > 0.0; --j) {
    cdf_mode += w;
    w *= static_cast<double>(j) / mean;
  }

  std::int64_t k = mode;
  double w_k = w_mode;
  double cdf = cdf_mode;
  if (u <= cdf) {
    while (k > 0 && cdf - w_k >= u) {
      cdf -= w_k;
      w_k *= static_cast<double>(k) / mean;
      --k;
    }
    return k;
  }
  while (cdf < u) {
    w_k *= mean / static_cast<double>(k + 1);
    ++k;
    cdf += w_k;
    if (w_k == 0.0) {
      break;
    }
  }
  return k;
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t base_seed, std::uint64_t stream_id)
    : key_(mix64(mix64(base_seed) ^ mix64(stream_id + kGamma))), stream_id_(stream_id) {}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGamma);
}

double RngStream::next_uniform() {
  // 53 random bits centred in their cell: strictly inside (0, 1).
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal_quantile: p must lie in (0, 1)");
  }
  if (p == 0.5) {
    return 0.0;
  }
  return p < 0.5 ? lower_quantile(p) : -lower_quantile(1.0 - p);
}

double sample_standard_normal(RngStream& rng) {
  return normal_quantile(rng.next_uniform());
}

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw DomainError("regularized_gamma_p: need a > 0 and x >= 0");
  }
  if (x == 0.0) {
    return 0.0;
  }
  if (std::isinf(x)) {
    return 1.0;
  }
  if (x < a + 1.0) {
    return std::min(1.0, gamma_p_series(a, x));
  }
  return std::max(0.0, 1.0 - gamma_q_continued_fraction(a, x));
}

double central_chisq_cdf(double dof, double x) {
  if (x < 0.0) {
    throw DomainError("central_chisq_cdf: x must be non-negative");
  }
  return regularized_gamma_p(0.5 * dof, 0.5 * x);
}

NoncentralChiSq::NoncentralChiSq(int dof_, double lambda_) : dof(dof_), lambda(lambda_) {
  if (dof < 1) {
    throw DomainError("NoncentralChiSq: dof must be >= 1");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("NoncentralChiSq: lambda must be finite and >= 0");
  }
}

double noncentral_chisq_cdf(const NoncentralChiSq& dist, double x) {
  if (!(x >= 0.0)) {
    throw DomainError("noncentral_chisq_cdf: x must be non-negative");
  }
  const double half_dof = 0.5 * dist.dof;
  const double y = 0.5 * x;
  if (dist.lambda == 0.0) {
    return regularized_gamma_p(half_dof, y);
  }
  if (x == 0.0) {
    return 0.0;
  }

  constexpr double kTailMass = 1e-14;
  const double mean = 0.5 * dist.lambda;
  const auto mode = static_cast<std::int64_t>(std::floor(mean));
  const double w_mode = std::exp(poisson_log_pmf(mode, mean));

  double sum = w_mode * regularized_gamma_p(half_dof + static_cast<double>(mode), y);

  // Next unvisited index on each side with its Poisson weight. Geometric
  // bounds on the unvisited mass: forward ratio mean/(j+1) < 1 past the mode,
  // backward ratio j/mean < 1 below it.
  std::int64_t up = mode + 1;
  double w_up = w_mode * mean / static_cast<double>(up);
  std::int64_t down = mode - 1;
  double w_down = down >= 0 ? w_mode * static_cast<double>(mode) / mean : 0.0;

  auto forward_tail = [&] {
    return w_up / (1.0 - mean / static_cast<double>(up + 1));
  };
  auto backward_tail = [&] {
    return down < 0 ? 0.0 : w_down / (1.0 - static_cast<double>(down) / mean);
  };

  while (forward_tail() + backward_tail() >= kTailMass) {
    if (down >= 0 && w_down >= w_up) {
      sum += w_down * regularized_gamma_p(half_dof + static_cast<double>(down), y);
      w_down *= static_cast<double>(down) / mean;
      --down;
    } else {
      sum += w_up * regularized_gamma_p(half_dof + static_cast<double>(up), y);
      ++up;
      w_up *= mean / static_cast<double>(up);
    }
  }
  return std::clamp(sum, 0.0, 1.0);
}

double sample_noncentral_chisq(const NoncentralChiSq& dist, RngStream& rng) {
  const std::int64_t k = poisson_inverse(0.5 * dist.lambda, rng.next_uniform());
  const std::int64_t terms = dist.dof + 2 * k;
  double total = 0.0;
  for (std::int64_t i = 0; i < terms; ++i) {
    const double z = sample_standard_normal(rng);
    total += z * z;
  }
  return total;
}

}  // namespace blindmon
