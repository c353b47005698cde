#include "blindmon/monitoring.hpp"

#include <cmath>
#include <string>

#include "blindmon/errors.hpp"

namespace blindmon {

std::string_view to_string(Mode mode) {
  return mode == Mode::blinded ? "blinded" : "unblinded";
}

Mode parse_mode(std::string_view text) {
  if (text == "blinded") return Mode::blinded;
  if (text == "unblinded") return Mode::unblinded;
  throw DomainError("unknown monitoring mode '" + std::string(text) + "'");
}

void MonitorConfig::validate() const {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError("MonitorConfig: v must be positive and finite");
  }
  if (n1 < 2) {
    throw DomainError("MonitorConfig: n1 must be >= 2");
  }
  if (max_n <= n1) {
    throw DomainError("MonitorConfig: max_n must exceed n1");
  }
}

double monitored_variance(const PairAccumulator& acc, Mode mode) {
  return mode == Mode::blinded ? acc.blinded_variance() : acc.unblinded_variance();
}

std::int64_t default_max_n(std::int64_t n1, double v, double sigma, double delta) {
  const double bound = static_cast<double>(n1) + v * (sigma * sigma + delta * delta / 4.0);
  return static_cast<std::int64_t>(std::ceil(20.0 * bound));
}

SequentialMonitor::SequentialMonitor(const MonitorConfig& config) : config_(config) {
  config_.validate();
}

bool SequentialMonitor::observe(double x, double y) {
  if (finished_) {
    throw StateError("SequentialMonitor: run already finished");
  }
  acc_.push_pair(x, y);
  const std::int64_t n = acc_.n();
  if (n < config_.n1) {
    return false;
  }
  const double estimate = monitored_variance(acc_, config_.mode);
  if (config_.keep_trace) {
    result_.trace.push_back({n, estimate, static_cast<double>(n) / config_.v});
  }
  result_.n_stop = n;
  result_.final_sigma_hat_sq = estimate;
  if (meets_threshold(estimate, n, config_.v)) {
    result_.stopped = true;
    finished_ = true;
  } else if (n >= config_.max_n) {
    finished_ = true;
  }
  return finished_;
}

StopResult run_to_stop(const MonitorConfig& config, const ScenarioTruth& truth,
                       RngStream& rng) {
  SequentialMonitor monitor(config);
  bool done = false;
  while (!done) {
    const double xi = sample_standard_normal(rng);
    const double eta = sample_standard_normal(rng);
    done = monitor.observe(truth.mu1 + truth.sigma * xi, truth.mu2 + truth.sigma * eta);
  }
  return monitor.take_result();
}

StopResult run_on_stream(const MonitorConfig& config,
                         std::span<const std::pair<double, double>> pairs) {
  SequentialMonitor monitor(config);
  for (const auto& [x, y] : pairs) {
    if (monitor.observe(x, y)) {
      return monitor.take_result();
    }
  }
  throw InsufficientDataError(
      "run_on_stream: " + std::to_string(pairs.size()) +
          " pairs consumed without reaching the stopping condition",
      monitor.take_result());
}

}  // namespace blindmon
