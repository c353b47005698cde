#ifndef BLINDMON_MONITORING_HPP_
#define BLINDMON_MONITORING_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "blindmon/design.hpp"
#include "blindmon/distributions.hpp"
#include "blindmon/estimators.hpp"

namespace blindmon {

enum class Mode { blinded, unblinded };

std::string_view to_string(Mode mode);

// Parses "blinded" or "unblinded"; throws DomainError otherwise.
Mode parse_mode(std::string_view text);

struct MonitorConfig {
  double v;
  std::int64_t n1;
  std::int64_t max_n;
  Mode mode;
  // When false only (n_stop, final estimate) are kept.
  bool keep_trace = true;

  // Throws DomainError unless v > 0, n1 >= 2 and max_n > n1.
  void validate() const;
};

struct TraceEntry {
  std::int64_t n;
  double sigma_hat_sq;
  double threshold;
};

struct StopResult {
  std::int64_t n_stop = 0;
  bool stopped = false;
  double final_sigma_hat_sq = 0.0;
  std::vector<TraceEntry> trace;
};

// Thrown by run_on_stream when the pairs run out before the rule fires.
class InsufficientDataError : public std::runtime_error {
 public:
  InsufficientDataError(const std::string& what, StopResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}

  const StopResult& partial() const noexcept { return partial_; }

 private:
  StopResult partial_;
};

// Variance estimate the given mode monitors.
double monitored_variance(const PairAccumulator& acc, Mode mode);

// The stopping condition sigma_hat^2 <= n / v, with no tolerance.
inline bool meets_threshold(double sigma_hat_sq, std::int64_t n, double v) {
  return sigma_hat_sq <= static_cast<double>(n) / v;
}

// Safety cap ceil(20 (n1 + v (sigma^2 + delta^2 / 4))).
std::int64_t default_max_n(std::int64_t n1, double v, double sigma, double delta);

/*
 * Incremental form of the stopping rule: feed pairs one at a time; the rule is
 * checked after every pair once n >= n1. Once stopped (or capped) further
 * pairs are rejected.
 */
class SequentialMonitor {
 public:
  explicit SequentialMonitor(const MonitorConfig& config);

  // Returns true once the run is finished (stopped or at max_n).
  bool observe(double x, double y);

  bool finished() const noexcept { return finished_; }
  const PairAccumulator& accumulator() const noexcept { return acc_; }
  const StopResult& result() const noexcept { return result_; }
  StopResult take_result() { return std::move(result_); }

 private:
  MonitorConfig config_;
  PairAccumulator acc_;
  StopResult result_;
  bool finished_ = false;
};

// Generates X = mu1 + sigma xi, Y = mu2 + sigma eta (xi then eta from rng) and
// monitors until the rule fires or max_n is reached (stopped = false).
StopResult run_to_stop(const MonitorConfig& config, const ScenarioTruth& truth,
                       RngStream& rng);

// Same rule over a fixed sequence of pairs. Throws InsufficientDataError
// carrying the partial result when the sequence ends first.
StopResult run_on_stream(const MonitorConfig& config,
                         std::span<const std::pair<double, double>> pairs);

}  // namespace blindmon

#endif  // BLINDMON_MONITORING_HPP_
