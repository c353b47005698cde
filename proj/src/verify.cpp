#include "blindmon/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blindmon/distributions.hpp"
#include "blindmon/errors.hpp"
#include "blindmon/estimators.hpp"
#include "blindmon/reference_tables.hpp"
#include "blindmon/scenario_io.hpp"
#include "blindmon/theory.hpp"

namespace blindmon {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

struct MomentCheck {
  double mean;
  double mean_se;
  double mean_sq;
  double mean_sq_se;
};

MomentCheck moments(const std::vector<std::int64_t>& n_stop) {
  const auto r = static_cast<double>(n_stop.size());
  double s1 = 0.0;
  double s2 = 0.0;
  for (const auto n : n_stop) {
    const auto x = static_cast<double>(n);
    s1 += x;
    s2 += x * x;
  }
  const double m1 = s1 / r;
  const double m2 = s2 / r;
  double v1 = 0.0;
  double v2 = 0.0;
  for (const auto n : n_stop) {
    const auto x = static_cast<double>(n);
    v1 += (x - m1) * (x - m1);
    v2 += (x * x - m2) * (x * x - m2);
  }
  return {m1, std::sqrt(v1 / (r - 1.0) / r), m2, std::sqrt(v2 / (r - 1.0) / r)};
}

}  // namespace

std::vector<Check> verify_identity(const VerifyOptions& options) {
  constexpr int kPrefixes = 1000;
  constexpr double kTolerance = 1e-10;
  double worst_decomposition = 0.0;
  double worst_mean = 0.0;
  double worst_ordering = 0.0;
  for (int i = 0; i < kPrefixes; ++i) {
    RngStream params(options.seed ^ 0x1D1D1D1DULL, static_cast<std::uint64_t>(i));
    const double mu1 = -100.0 + 200.0 * params.next_uniform();
    const double mu2 = -100.0 + 200.0 * params.next_uniform();
    const double sigma = std::pow(10.0, -3.0 + 6.0 * params.next_uniform());
    const auto length = 1 + static_cast<std::int64_t>(params.next_uniform() * 200.0);

    RngStream data(options.seed, static_cast<std::uint64_t>(i));
    PairAccumulator acc;
    for (std::int64_t k = 0; k < length; ++k) {
      acc.push_pair(mu1 + sigma * sample_standard_normal(data),
                    mu2 + sigma * sample_standard_normal(data));
      const auto n = static_cast<double>(acc.n());
      const double diff = acc.mean_x() - acc.mean_y();
      const double rebuilt = acc.m2_x() + acc.m2_y() + n * diff * diff / 2.0;
      worst_decomposition = std::max(worst_decomposition, relative_gap(acc.m2_z(), rebuilt));
      const double scale = std::max(std::fabs(acc.mean_x()), std::fabs(acc.mean_y()));
      if (scale > 0.0) {
        worst_mean = std::max(
            worst_mean, std::fabs(acc.mean_z() - 0.5 * (acc.mean_x() + acc.mean_y())) / scale);
      }
      if (acc.n() >= 2) {
        // sigma_b^2 (2n-1) >= sigma_u^2 (2n-2)
        const double lhs = acc.blinded_variance() * (2.0 * n - 1.0);
        const double rhs = acc.unblinded_variance() * (2.0 * n - 2.0);
        if (lhs < rhs) worst_ordering = std::max(worst_ordering, relative_gap(lhs, rhs));
      }
    }
  }
  return {
      {"decomposition m2_z = m2_x + m2_y + n(dx)^2/2 on 1000 prefixes",
       worst_decomposition <= kTolerance, "max rel err " + fmt(worst_decomposition),
       "<= 1e-10"},
      {"pooled mean = (mean_x + mean_y)/2 on 1000 prefixes", worst_mean <= kTolerance,
       "max rel err " + fmt(worst_mean), "<= 1e-10"},
      {"blinded*(2n-1) >= unblinded*(2n-2)", worst_ordering <= kTolerance,
       "max rel shortfall " + fmt(worst_ordering), "<= 1e-10"},
  };
}

std::vector<Check> verify_bounds(const VerifyOptions& options) {
  std::vector<Check> out;
  double worst_cell = 0.0;
  bool ordering = true;
  for (const auto& row : kReferenceRows) {
    const double v = row.table == 1 ? 1.0 : row.n_req;
    const double sigma = row.table == 1 ? std::sqrt(row.n_req) : 1.0;
    const double table = mean_bound(kDefaultInitialSize, v, sigma, row.mu1, 0.0,
                                    BoundVariant::table);
    const double theorem = mean_bound(kDefaultInitialSize, v, sigma, row.mu1, 0.0,
                                      BoundVariant::theorem);
    worst_cell = std::max(worst_cell, std::fabs(table - row.upper_bound));
    ordering = ordering && theorem >= table;
  }
  out.push_back({"table-variant bound matches all 30 reference cells", worst_cell <= 0.01,
                 "max |diff| " + fmt(worst_cell), "<= 0.01"});
  out.push_back({"theorem bound >= table bound (n1 = 10)", ordering, ordering ? "yes" : "no",
                 "yes"});

  // Moment bounds on the smaller reference scenarios.
  for (int table : {1, 2}) {
    for (const auto& s : table_scenarios(table, options.seed, options.replications)) {
      if (s.n_req() > 100.5) continue;
      Scenario blinded = s;
      blinded.mode = ScenarioMode::blinded;
      const ScenarioResult r = run_scenario(blinded, RunOptions{options.workers});
      const MomentCheck m = moments(r.n_blinded);
      const double b1 = mean_bound(s.n1, s.v, s.truth.sigma, s.truth.mu1, s.truth.mu2,
                                   BoundVariant::theorem);
      const double b2 = second_moment_bound(s.n1, s.v, s.truth.sigma, s.truth.mu1, s.truth.mu2);
      out.push_back({s.label + ": E(N_b) + 4se < theorem bound", m.mean + 4.0 * m.mean_se < b1,
                     fmt(m.mean) + " (se " + fmt(m.mean_se) + ")", "< " + fmt(b1)});
      out.push_back({s.label + ": E(N_b^2) + 4se < second-moment bound",
                     m.mean_sq + 4.0 * m.mean_sq_se < b2,
                     fmt(m.mean_sq) + " (se " + fmt(m.mean_sq_se) + ")", "< " + fmt(b2)});
    }
  }
  return out;
}

std::vector<Check> verify_invariance(const VerifyOptions& options) {
  struct Group {
    double n_req;
    std::vector<ParameterSet> sets;
  };
  const std::vector<Group> groups = {
      {10.0, {{1.0, std::sqrt(10.0), 1.0, 0.0}, {10.0, 1.0, 2.0, 0.0}, {0.1, 10.0, 5.0, 0.0}}},
      {100.0, {{1.0, 10.0, 1.0, 0.0}, {4.0, 5.0, 2.0, 0.0}, {100.0, 1.0, 5.0, 0.0}}},
      {1000.0,
       {{1.0, std::sqrt(1000.0), 1.0, 0.0}, {10.0, 10.0, 2.0, 0.0}, {1000.0, 1.0, 5.0, 0.0}}},
  };
  std::vector<Check> out;
  for (const auto& g : groups) {
    const RunOptions run{options.workers};
    const InvarianceReport u = invariance_harness(g.n_req, g.sets, options.seed, Mode::unblinded,
                                                  options.replications, kDefaultInitialSize, run);
    const InvarianceReport b = invariance_harness(g.n_req, g.sets, options.seed, Mode::blinded,
                                                  options.replications, kDefaultInitialSize, run);
    out.push_back({"n_req=" + fmt(g.n_req) + ": unblinded N_u identical across parameter sets",
                   u.identical,
                   std::to_string(u.replications - u.divergent_replications) + "/" +
                       std::to_string(u.replications) + " identical",
                   "all identical"});
    out.push_back({"n_req=" + fmt(g.n_req) + ": blinded N_b diverges (negative control)",
                   b.divergent_replications >= 1,
                   std::to_string(b.divergent_replications) + " divergent", ">= 1 divergent"});
  }
  return out;
}

std::vector<Check> verify_normality(const VerifyOptions& options) {
  std::vector<Check> out;

  // Scaled blinded variance at n = 30 against chi2_59(lambda).
  {
    constexpr std::int64_t kN = 30;
    constexpr std::int64_t kDraws = 100000;
    const ScenarioTruth truth(1.0, 0.0, 1.0);
    const double lambda = kN * truth.delta() * truth.delta() / (2.0 * truth.sigma * truth.sigma);
    const NoncentralChiSq dist(static_cast<int>(2 * kN - 1), lambda);
    const auto sample = scaled_blinded_variance_sample(kN, truth, kDraws, options.seed);

    const double d1 = ks_statistic(sample, [&](double x) {
      return x <= 0.0 ? 0.0 : noncentral_chisq_cdf(dist, x);
    });
    const double c1 = ks_critical_value(kDraws);
    out.push_back({"(2n-1) sigma_b^2/sigma^2 at n=30 vs chi2_59(15) CDF, KS 1%", d1 < c1,
                   "D=" + fmt(d1), "< " + fmt(c1)});

    std::vector<double> oracle;
    oracle.reserve(kDraws);
    for (std::int64_t i = 0; i < kDraws; ++i) {
      RngStream rng(options.seed ^ 0x0C41C41CULL, static_cast<std::uint64_t>(i));
      oracle.push_back(sample_noncentral_chisq(dist, rng));
    }
    const double d2 = ks_two_sample_statistic(sample, oracle);
    const double c2 = ks_critical_value(kDraws) * std::sqrt(2.0);
    out.push_back({"(2n-1) sigma_b^2/sigma^2 at n=30 vs chi2_59(15) sampler, two-sample KS 1%",
                   d2 < c2, "D=" + fmt(d2), "< " + fmt(c2)});
  }

  // Limit law of N_b as v grows, sigma = 1, v = 1000.
  struct Case {
    double mu1;
    double variance;
    bool expect_pass;
    const char* name;
  };
  const TheoryTargets t0 = asymptotic_targets(1000.0, 1.0, 0.0, 0.0, kDefaultInitialSize);
  const TheoryTargets t2 = asymptotic_targets(1000.0, 1.0, 2.0, 0.0, kDefaultInitialSize);
  const Case cases[] = {
      {0.0, t0.clt_var_v, true, "delta=0: normalized N_b ~ N(0, 1)"},
      {2.0, t2.clt_var_v, true, "delta=2: normalized N_b ~ N(0, 1.5)"},
      {2.0, 1.0, false, "delta=2 with variance 1 (negative control) rejected"},
  };
  for (const auto& c : cases) {
    Scenario s;
    s.label = c.name;
    s.v = 1000.0;
    s.truth = ScenarioTruth(c.mu1, 0.0, 1.0);
    s.mode = ScenarioMode::blinded;
    s.replications = options.replications;
    s.base_seed = options.seed;
    const TheoryTargets t = asymptotic_targets(s.v, 1.0, c.mu1, 0.0, s.n1);
    const KsReport ks = distribution_test(s, t.clt_center_v, c.variance, RunOptions{options.workers});
    out.push_back({c.name, ks.passed == c.expect_pass, "D=" + fmt(ks.statistic),
                   std::string(c.expect_pass ? "< " : ">= ") + fmt(ks.critical_value)});
  }
  return out;
}

std::vector<Check> verify_tail(const VerifyOptions& options) {
  constexpr std::int64_t kN1 = 10;
  constexpr double kEpsilon = 0.5;
  constexpr double kQ = 0.75;
  // n_req = 100 from v = 1, sigma = 10, delta = 1.
  Scenario s;
  s.label = "tail";
  s.v = 1.0;
  s.truth = ScenarioTruth(1.0, 0.0, 10.0);
  s.n1 = kN1;
  s.mode = ScenarioMode::blinded;
  s.replications = options.replications;
  s.base_seed = options.seed;
  const double a = s.n_req();

  const ScenarioResult r = run_scenario(s, RunOptions{options.workers});
  const auto hits = std::count_if(r.n_blinded.begin(), r.n_blinded.end(),
                                  [&](std::int64_t n) { return n <= kEpsilon * a; });
  const double mc = static_cast<double>(hits) / static_cast<double>(r.n_blinded.size());
  const double exact = tail_bound_chisq(kN1, a, kEpsilon, kQ, s.truth.delta(), s.truth.sigma);
  const double chernoff = tail_bound_sum(kN1, a, kEpsilon, kQ);
  const double chernoff_big = tail_bound_sum(kN1, 1000.0, kEpsilon, kQ);

  return {
      {"MC P(N_b <= 50) at n_req=100", hits == 0,
       std::to_string(hits) + "/" + std::to_string(r.n_blinded.size()), "0"},
      {"MC estimate <= exact chi-squared bound", mc <= exact, fmt(mc), "<= " + fmt(exact)},
      {"exact chi-squared bound <= Chernoff sum", exact <= chernoff, fmt(exact),
       "<= " + fmt(chernoff)},
      {"Chernoff sum decays: a=1000 below a=100", chernoff_big < chernoff, fmt(chernoff_big),
       "< " + fmt(chernoff)},
  };
}

bool is_suite_name(std::string_view name) {
  return name == "all" ||
         std::find(std::begin(kSuiteNames), std::end(kSuiteNames), name) != std::end(kSuiteNames);
}

std::vector<Check> run_suite(std::string_view name, const VerifyOptions& options) {
  if (name == "identity") return verify_identity(options);
  if (name == "bounds") return verify_bounds(options);
  if (name == "invariance") return verify_invariance(options);
  if (name == "normality") return verify_normality(options);
  if (name == "tail") return verify_tail(options);
  if (name == "all") {
    std::vector<Check> all;
    for (const auto suite : kSuiteNames) {
      auto part = run_suite(suite, options);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw DomainError("unknown suite '" + std::string(name) + "'");
}

}  // namespace blindmon
