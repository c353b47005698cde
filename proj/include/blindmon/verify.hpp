#ifndef BLINDMON_VERIFY_HPP_
#define BLINDMON_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "blindmon/simulation.hpp"

namespace blindmon {

struct Check {
  std::string name;
  bool passed;
  std::string observed;
  std::string expected;
};

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 0;
  std::int64_t replications = kDefaultReplications;
};

// Estimator identities on 10^3 random prefixes (mu in [-100, 100],
// sigma log-uniform in [1e-3, 1e3]).
std::vector<Check> verify_identity(const VerifyOptions& options);

// Bound columns against the reference values; MC means of N_b and N_b^2
// against the moment bounds.
std::vector<Check> verify_bounds(const VerifyOptions& options);

// Unblinded stopping size depends on n_req only; blinded does not.
std::vector<Check> verify_invariance(const VerifyOptions& options);

// Scaled blinded variance vs noncentral chi-squared, and the limit normal law
// of the blinded stopping size at v = 1000.
std::vector<Check> verify_normality(const VerifyOptions& options);

// MC lower tail of N_b vs the exact and Chernoff-type bounds.
std::vector<Check> verify_tail(const VerifyOptions& options);

inline constexpr std::string_view kSuiteNames[] = {"identity", "bounds", "invariance",
                                                   "normality", "tail"};

// Runs one suite by name, or every suite for "all". Throws DomainError for
// an unknown name.
std::vector<Check> run_suite(std::string_view name, const VerifyOptions& options);

bool is_suite_name(std::string_view name);

}  // namespace blindmon

#endif  // BLINDMON_VERIFY_HPP_
