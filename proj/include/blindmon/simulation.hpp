#ifndef BLINDMON_SIMULATION_HPP_
#define BLINDMON_SIMULATION_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blindmon/design.hpp"
#include "blindmon/monitoring.hpp"
#include "blindmon/theory.hpp"

namespace blindmon {

inline constexpr std::uint64_t kDefaultSeed = 20120001;
inline constexpr std::int64_t kDefaultReplications = 10000;
inline constexpr std::int64_t kDefaultInitialSize = 10;

enum class ScenarioMode { blinded, unblinded, both };

std::string_view to_string(ScenarioMode mode);
ScenarioMode parse_scenario_mode(std::string_view text);

struct Scenario {
  std::string label;
  double v = 1.0;
  // Set when v was derived from error rates rather than given directly.
  std::optional<DesignParams> design;
  ScenarioTruth truth{0.0, 0.0, 1.0};
  std::int64_t n1 = kDefaultInitialSize;
  ScenarioMode mode = ScenarioMode::both;
  std::int64_t replications = kDefaultReplications;
  std::uint64_t base_seed = kDefaultSeed;
  // Defaults to default_max_n(n1, v, sigma, delta).
  std::optional<std::int64_t> max_n;

  void validate() const;
  double n_req() const;
  std::int64_t cap() const;
};

struct ScenarioSummary {
  std::string label;
  Mode mode = Mode::blinded;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double sigma = 1.0;
  double v = 1.0;
  double n_req = 1.0;
  std::int64_t n1 = 0;
  std::int64_t replications = 0;
  double mean_n = 0.0;
  // Sample SD of the stopping sizes (divisor R - 1), not SD / sqrt(R).
  double sd_n = 0.0;
  double ratio = 0.0;
  double bound_table = 0.0;
  double bound_theorem = 0.0;
  std::int64_t cap_hits = 0;
  // Exact integer sums backing mean_n and sd_n.
  std::int64_t sum_n = 0;
  std::int64_t sum_n_sq = 0;

  double mean_n_sq() const {
    return static_cast<double>(sum_n_sq) / static_cast<double>(replications);
  }
};

struct ScenarioResult {
  // One summary per simulated mode, blinded first.
  std::vector<ScenarioSummary> summaries;
  // n_stop per replication, indexed by replication; empty for an absent mode.
  std::vector<std::int64_t> n_blinded;
  std::vector<std::int64_t> n_unblinded;

  const ScenarioSummary& summary(Mode mode) const;
};

struct RunOptions {
  // 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
};

/*
 * Replication r draws from RngStream(base_seed, r). When both modes are
 * requested they are evaluated on the same pairs. Results do not depend on
 * the worker count or scheduling.
 */
ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

// Summary of fixed stopping sizes. Exposed for callers that build their own
// replications (and for tests).
ScenarioSummary summarize(const Scenario& scenario, Mode mode,
                          const std::vector<std::int64_t>& n_stop, std::int64_t cap_hits);

struct TableRow {
  double mu1;
  double n_req;
  double sigma;
  double v;
  ScenarioSummary blinded;
  ScenarioSummary unblinded;
};

/*
 * The two reference grids (n1 = 10, mu2 = 0, mu1 in {1, 2, 5}):
 *   table 1: v = 1,     sigma in {sqrt 10, 5 sqrt 2, 10, 10 sqrt 5, 10 sqrt 10}
 *   table 2: sigma = 1, v in {10, 50, 100, 500, 1000}
 * Every row uses the same base seed. Rows come out mu1-major, size-minor.
 */
std::vector<Scenario> table_scenarios(int table_id, std::uint64_t base_seed,
                                      std::int64_t replications = kDefaultReplications);

std::vector<TableRow> run_table(int table_id, std::uint64_t base_seed,
                                const RunOptions& options = {},
                                std::int64_t replications = kDefaultReplications);

struct ParameterSet {
  double v;
  double sigma;
  double mu1;
  double mu2;
};

struct InvarianceReport {
  bool identical = true;
  std::int64_t replications = 0;
  std::int64_t divergent_replications = 0;
  // First divergent replication and its stopping sizes, one per parameter set.
  std::optional<std::int64_t> first_divergent;
  std::vector<std::int64_t> first_divergent_n_stop;
};

/*
 * Drives every parameter set from one standardized stream (xi_i, eta_i) per
 * replication, X = mu1 + sigma xi, Y = mu2 + sigma eta, and compares the
 * stopping sizes across sets. All sets must share v sigma^2 = n_req_value
 * (relative 1e-12), otherwise DomainError.
 */
InvarianceReport invariance_harness(double n_req_value, const std::vector<ParameterSet>& sets,
                                    std::uint64_t base_seed, Mode mode,
                                    std::int64_t replications = kDefaultReplications,
                                    std::int64_t n1 = kDefaultInitialSize,
                                    const RunOptions& options = {});

struct KsReport {
  std::int64_t sample_size = 0;
  double statistic = 0.0;
  double critical_value = 0.0;
  bool passed = false;
};

// Two-sided Kolmogorov critical value c(alpha)/sqrt(n), c = sqrt(-ln(alpha/2)/2).
double ks_critical_value(std::int64_t n, double alpha = 0.01);

// One-sample KS statistic against a continuous CDF. Sorts a copy.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

// Two-sample KS statistic.
double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b);

/*
 * One-sample KS of (N - center)/sqrt(n_req) against N(0, variance). N is
 * integer valued, so the comparison is made on the integer lattice against
 * the continuity-corrected normal Phi((k + 0.5 - center) / sqrt(n_req var)).
 */
KsReport stopping_normality_test(const std::vector<std::int64_t>& n_stop, double n_req,
                                 double center, double variance, double alpha = 0.01);

// (2n - 1) sigma_hat^2_blind / sigma^2 after exactly n pairs, one value per
// replication (replication r uses RngStream(base_seed, r)).
std::vector<double> scaled_blinded_variance_sample(std::int64_t n, const ScenarioTruth& truth,
                                                   std::int64_t replications,
                                                   std::uint64_t base_seed);

// Simulates the blinded rule for `scenario` and applies stopping_normality_test.
KsReport distribution_test(const Scenario& scenario, double center, double variance,
                           const RunOptions& options = {});

}  // namespace blindmon

#endif  // BLINDMON_SIMULATION_HPP_
