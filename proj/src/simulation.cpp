#include "blindmon/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

#include "blindmon/distributions.hpp"
#include "blindmon/errors.hpp"

namespace blindmon {

namespace {

unsigned resolve_workers(unsigned requested, std::int64_t tasks) {
  unsigned workers = requested == 0 ? std::thread::hardware_concurrency() : requested;
  workers = std::max(1u, workers);
  if (static_cast<std::int64_t>(workers) > tasks) {
    workers = static_cast<unsigned>(std::max<std::int64_t>(1, tasks));
  }
  return workers;
}

// Runs body(begin, end) over contiguous slices of [0, count). Each slice is
// owned by one thread; the first exception is rethrown after joining.
void parallel_slices(std::int64_t count, unsigned requested_workers,
                     const std::function<void(std::int64_t, std::int64_t)>& body) {
  const unsigned workers = resolve_workers(requested_workers, count);
  if (workers == 1) {
    body(0, count);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::int64_t begin = count * w / workers;
    const std::int64_t end = count * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct PairOutcome {
  std::int64_t n_blinded = 0;
  std::int64_t n_unblinded = 0;
  bool capped_blinded = false;
  bool capped_unblinded = false;
};

// Both rules over one stream of pairs; a rule that is not requested starts
// out finished.
PairOutcome run_replication(const Scenario& s, std::int64_t cap, std::uint64_t replication) {
  RngStream rng(s.base_seed, replication);
  const bool want_b = s.mode != ScenarioMode::unblinded;
  const bool want_u = s.mode != ScenarioMode::blinded;
  bool done_b = !want_b;
  bool done_u = !want_u;
  PairOutcome out;
  PairAccumulator acc;
  const double mu1 = s.truth.mu1;
  const double mu2 = s.truth.mu2;
  const double sigma = s.truth.sigma;
  while (!(done_b && done_u)) {
    const double xi = sample_standard_normal(rng);
    const double eta = sample_standard_normal(rng);
    acc.push_pair(mu1 + sigma * xi, mu2 + sigma * eta);
    const std::int64_t n = acc.n();
    if (n < s.n1) continue;
    if (!done_b && meets_threshold(acc.blinded_variance(), n, s.v)) {
      out.n_blinded = n;
      done_b = true;
    }
    if (!done_u && meets_threshold(acc.unblinded_variance(), n, s.v)) {
      out.n_unblinded = n;
      done_u = true;
    }
    if (n >= cap) {
      if (!done_b) {
        out.n_blinded = n;
        out.capped_blinded = true;
        done_b = true;
      }
      if (!done_u) {
        out.n_unblinded = n;
        out.capped_unblinded = true;
        done_u = true;
      }
    }
  }
  return out;
}

std::string format_label(int table_id, double mu1, double n_req) {
  std::ostringstream os;
  os << "table" << table_id << " mu1=" << mu1 << " n_req=" << std::llround(n_req);
  return os.str();
}

}  // namespace

std::string_view to_string(ScenarioMode mode) {
  switch (mode) {
    case ScenarioMode::blinded:
      return "blinded";
    case ScenarioMode::unblinded:
      return "unblinded";
    case ScenarioMode::both:
      break;
  }
  return "both";
}

ScenarioMode parse_scenario_mode(std::string_view text) {
  if (text == "blinded") return ScenarioMode::blinded;
  if (text == "unblinded") return ScenarioMode::unblinded;
  if (text == "both") return ScenarioMode::both;
  throw DomainError("unknown mode '" + std::string(text) + "'");
}

void Scenario::validate() const {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("scenario: v must be positive");
  if (n1 < 2) throw DomainError("scenario: n1 must be >= 2");
  if (replications < 1) throw DomainError("scenario: replications must be >= 1");
  if (max_n && *max_n <= n1) throw DomainError("scenario: max_n must exceed n1");
  // Re-run the truth invariants in case fields were assigned directly.
  ScenarioTruth check(truth.mu1, truth.mu2, truth.sigma);
  (void)check;
}

double Scenario::n_req() const { return blindmon::n_req(v, truth.sigma); }

std::int64_t Scenario::cap() const {
  return max_n ? *max_n : default_max_n(n1, v, truth.sigma, truth.delta());
}

const ScenarioSummary& ScenarioResult::summary(Mode mode) const {
  for (const auto& s : summaries) {
    if (s.mode == mode) return s;
  }
  throw StateError("ScenarioResult: mode '" + std::string(to_string(mode)) + "' not simulated");
}

ScenarioSummary summarize(const Scenario& scenario, Mode mode,
                          const std::vector<std::int64_t>& n_stop, std::int64_t cap_hits) {
  ScenarioSummary out;
  out.label = scenario.label;
  out.mode = mode;
  out.mu1 = scenario.truth.mu1;
  out.mu2 = scenario.truth.mu2;
  out.sigma = scenario.truth.sigma;
  out.v = scenario.v;
  out.n_req = scenario.n_req();
  out.n1 = scenario.n1;
  out.replications = static_cast<std::int64_t>(n_stop.size());
  out.cap_hits = cap_hits;
  for (const std::int64_t n : n_stop) {
    out.sum_n += n;
    out.sum_n_sq += n * n;
  }
  const auto r = static_cast<__int128>(out.replications);
  if (r > 0) {
    out.mean_n = static_cast<double>(out.sum_n) / static_cast<double>(r);
  }
  if (r > 1) {
    const __int128 sum = out.sum_n;
    const __int128 centred = r * static_cast<__int128>(out.sum_n_sq) - sum * sum;
    out.sd_n = std::sqrt(static_cast<double>(centred) / static_cast<double>(r * (r - 1)));
  }
  out.ratio = out.mean_n / out.n_req;
  out.bound_table = mean_bound(scenario.n1, scenario.v, scenario.truth.sigma,
                               scenario.truth.mu1, scenario.truth.mu2, BoundVariant::table);
  out.bound_theorem = mean_bound(scenario.n1, scenario.v, scenario.truth.sigma,
                                 scenario.truth.mu1, scenario.truth.mu2, BoundVariant::theorem);
  return out;
}

ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  scenario.validate();
  const std::int64_t reps = scenario.replications;
  const std::int64_t cap = scenario.cap();
  std::vector<PairOutcome> outcomes(static_cast<std::size_t>(reps));

  parallel_slices(reps, options.workers, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t r = begin; r < end; ++r) {
      outcomes[static_cast<std::size_t>(r)] =
          run_replication(scenario, cap, static_cast<std::uint64_t>(r));
    }
  });

  ScenarioResult result;
  if (scenario.mode != ScenarioMode::unblinded) {
    std::int64_t caps = 0;
    result.n_blinded.reserve(outcomes.size());
    for (const auto& o : outcomes) {
      result.n_blinded.push_back(o.n_blinded);
      caps += o.capped_blinded ? 1 : 0;
    }
    result.summaries.push_back(summarize(scenario, Mode::blinded, result.n_blinded, caps));
  }
  if (scenario.mode != ScenarioMode::blinded) {
    std::int64_t caps = 0;
    result.n_unblinded.reserve(outcomes.size());
    for (const auto& o : outcomes) {
      result.n_unblinded.push_back(o.n_unblinded);
      caps += o.capped_unblinded ? 1 : 0;
    }
    result.summaries.push_back(summarize(scenario, Mode::unblinded, result.n_unblinded, caps));
  }
  return result;
}

std::vector<Scenario> table_scenarios(int table_id, std::uint64_t base_seed,
                                      std::int64_t replications) {
  if (table_id != 1 && table_id != 2) {
    throw DomainError("table id must be 1 or 2");
  }
  constexpr double kMu1[] = {1.0, 2.0, 5.0};
  constexpr double kSizes[] = {10.0, 50.0, 100.0, 500.0, 1000.0};
  std::vector<Scenario> out;
  for (const double mu1 : kMu1) {
    for (const double size : kSizes) {
      Scenario s;
      s.v = table_id == 1 ? 1.0 : size;
      const double sigma = table_id == 1 ? std::sqrt(size) : 1.0;
      s.truth = ScenarioTruth(mu1, 0.0, sigma);
      s.n1 = kDefaultInitialSize;
      s.mode = ScenarioMode::both;
      s.replications = replications;
      s.base_seed = base_seed;
      s.label = format_label(table_id, mu1, size);
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<TableRow> run_table(int table_id, std::uint64_t base_seed,
                                const RunOptions& options, std::int64_t replications) {
  std::vector<TableRow> rows;
  for (const auto& s : table_scenarios(table_id, base_seed, replications)) {
    const ScenarioResult r = run_scenario(s, options);
    rows.push_back(TableRow{s.truth.mu1, s.n_req(), s.truth.sigma, s.v,
                            r.summary(Mode::blinded), r.summary(Mode::unblinded)});
  }
  return rows;
}

InvarianceReport invariance_harness(double n_req_value, const std::vector<ParameterSet>& sets,
                                    std::uint64_t base_seed, Mode mode,
                                    std::int64_t replications, std::int64_t n1,
                                    const RunOptions& options) {
  if (sets.empty()) throw DomainError("invariance_harness: no parameter sets");
  if (replications < 1) throw DomainError("invariance_harness: replications must be >= 1");
  for (const auto& p : sets) {
    const double product = p.v * p.sigma * p.sigma;
    if (std::fabs(product - n_req_value) > 1e-12 * std::fabs(n_req_value)) {
      throw DomainError("invariance_harness: v*sigma^2 does not match n_req");
    }
    ScenarioTruth check(p.mu1, p.mu2, p.sigma);
    (void)check;
  }

  std::int64_t cap = n1 + 1;
  for (const auto& p : sets) {
    cap = std::max(cap, default_max_n(n1, p.v, p.sigma, p.mu1 - p.mu2));
  }

  const std::size_t k = sets.size();
  // n_stop per replication per set, row-major.
  std::vector<std::int64_t> stops(static_cast<std::size_t>(replications) * k, 0);

  parallel_slices(replications, options.workers, [&](std::int64_t begin, std::int64_t end) {
    std::vector<PairAccumulator> accs(k);
    std::vector<bool> done(k);
    for (std::int64_t r = begin; r < end; ++r) {
      RngStream rng(base_seed, static_cast<std::uint64_t>(r));
      std::fill(accs.begin(), accs.end(), PairAccumulator{});
      std::fill(done.begin(), done.end(), false);
      std::size_t remaining = k;
      std::int64_t* row = &stops[static_cast<std::size_t>(r) * k];
      while (remaining > 0) {
        const double xi = sample_standard_normal(rng);
        const double eta = sample_standard_normal(rng);
        for (std::size_t j = 0; j < k; ++j) {
          if (done[j]) continue;
          const auto& p = sets[j];
          accs[j].push_pair(p.mu1 + p.sigma * xi, p.mu2 + p.sigma * eta);
          const std::int64_t n = accs[j].n();
          if (n < n1) continue;
          if (meets_threshold(monitored_variance(accs[j], mode), n, p.v) || n >= cap) {
            row[j] = n;
            done[j] = true;
            --remaining;
          }
        }
      }
    }
  });

  InvarianceReport report;
  report.replications = replications;
  for (std::int64_t r = 0; r < replications; ++r) {
    const auto first = stops.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(r) * k);
    const auto last = first + static_cast<std::ptrdiff_t>(k);
    const bool same = std::all_of(first, last, [&](std::int64_t n) { return n == *first; });
    if (!same) {
      ++report.divergent_replications;
      if (!report.first_divergent) {
        report.first_divergent = r;
        report.first_divergent_n_stop.assign(first, last);
      }
    }
  }
  report.identical = report.divergent_replications == 0;
  return report;
}

double ks_critical_value(std::int64_t n, double alpha) {
  if (n < 1) throw DomainError("ks_critical_value: n must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("ks_critical_value: alpha in (0,1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw DomainError("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

KsReport stopping_normality_test(const std::vector<std::int64_t>& n_stop, double n_req,
                                 double center, double variance, double alpha) {
  if (n_stop.empty()) throw DomainError("stopping_normality_test: empty sample");
  if (!(n_req > 0.0) || !(variance > 0.0)) {
    throw DomainError("stopping_normality_test: n_req and variance must be positive");
  }
  std::vector<std::int64_t> sorted(n_stop);
  std::sort(sorted.begin(), sorted.end());
  const double scale = std::sqrt(n_req * variance);
  auto lattice_cdf = [&](std::int64_t k) {
    return normal_cdf((static_cast<double>(k) + 0.5 - center) / scale);
  };

  const auto total = static_cast<double>(sorted.size());
  // Below the sample minimum the empirical CDF is 0.
  double d = lattice_cdf(sorted.front() - 1);
  std::size_t i = 0;
  while (i < sorted.size()) {
    const std::int64_t k = sorted[i];
    while (i < sorted.size() && sorted[i] == k) ++i;
    const double empirical = static_cast<double>(i) / total;
    d = std::max(d, std::fabs(empirical - lattice_cdf(k)));
    // Integers strictly between support points keep the empirical value.
    if (i < sorted.size() && sorted[i] > k + 1) {
      d = std::max(d, std::fabs(empirical - lattice_cdf(sorted[i] - 1)));
    }
  }
  // Above the maximum the empirical CDF is 1; the gap shrinks with k.

  KsReport report;
  report.sample_size = static_cast<std::int64_t>(sorted.size());
  report.statistic = d;
  report.critical_value = ks_critical_value(report.sample_size, alpha);
  report.passed = d < report.critical_value;
  return report;
}

std::vector<double> scaled_blinded_variance_sample(std::int64_t n, const ScenarioTruth& truth,
                                                   std::int64_t replications,
                                                   std::uint64_t base_seed) {
  if (n < 1) throw DomainError("scaled_blinded_variance_sample: n must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(replications, 0)));
  const double s2 = truth.sigma * truth.sigma;
  for (std::int64_t r = 0; r < replications; ++r) {
    RngStream rng(base_seed, static_cast<std::uint64_t>(r));
    PairAccumulator acc;
    for (std::int64_t i = 0; i < n; ++i) {
      const double xi = sample_standard_normal(rng);
      const double eta = sample_standard_normal(rng);
      acc.push_pair(truth.mu1 + truth.sigma * xi, truth.mu2 + truth.sigma * eta);
    }
    out.push_back(static_cast<double>(2 * n - 1) * acc.blinded_variance() / s2);
  }
  return out;
}

KsReport distribution_test(const Scenario& scenario, double center, double variance,
                           const RunOptions& options) {
  Scenario s = scenario;
  s.mode = ScenarioMode::blinded;
  const ScenarioResult r = run_scenario(s, options);
  return stopping_normality_test(r.n_blinded, s.n_req(), center, variance);
}

}  // namespace blindmon
