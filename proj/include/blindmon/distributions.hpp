#ifndef BLINDMON_DISTRIBUTIONS_HPP_
#define BLINDMON_DISTRIBUTIONS_HPP_

#include <cstdint>

namespace blindmon {

/*
 * Counter-based random stream. Draw i of stream (seed, id) is a pure function
 * of (seed, id, i): the key is an avalanche hash of the seed and the stream
 * id, and each output is the SplitMix64 finalizer applied to key + i * gamma.
 *
 * A stream is single-owner state; give each worker its own.
 */
class RngStream {
 public:
  RngStream(std::uint64_t base_seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double next_uniform();

  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
};

// 64-bit avalanche mix (SplitMix64 finalizer).
std::uint64_t mix64(std::uint64_t z) noexcept;

double normal_cdf(double x);

// Inverse of the standard normal CDF. Throws DomainError unless 0 < p < 1.
double normal_quantile(double p);

// One uniform per draw (inverse-CDF), so streams stay aligned across scenarios.
double sample_standard_normal(RngStream& rng);

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

double central_chisq_cdf(double dof, double x);

struct NoncentralChiSq {
  int dof;
  double lambda;

  // Throws DomainError for dof < 1 or lambda < 0 (or non-finite lambda).
  NoncentralChiSq(int dof, double lambda);
};

// P(chi2_dof(lambda) <= x) as a Poisson(lambda/2) mixture of central
// chi-squared CDFs, truncated once the unvisited Poisson mass is below 1e-14.
double noncentral_chisq_cdf(const NoncentralChiSq& dist, double x);

// K ~ Poisson(lambda/2), then a central chi2 with dof + 2K degrees of freedom
// as a sum of squared standard normals.
double sample_noncentral_chisq(const NoncentralChiSq& dist, RngStream& rng);

}  // namespace blindmon

#endif  // BLINDMON_DISTRIBUTIONS_HPP_
