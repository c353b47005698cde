#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>
#include <sstream>

#include "blindmon/design.hpp"
#include "blindmon/distributions.hpp"
#include "blindmon/errors.hpp"
#include "blindmon/estimators.hpp"
#include "blindmon/monitoring.hpp"
#include "blindmon/scenario_io.hpp"
#include "blindmon/simulation.hpp"
#include "blindmon/theory.hpp"
#include "blindmon/verify.hpp"
#include "blindmon/version.hpp"

namespace py = pybind11;
using namespace blindmon;

namespace {

Mode mode_arg(const std::string& text) { return parse_mode(text); }

py::dict summary_dict(const ScenarioSummary& s) {
  py::dict d;
  d["label"] = s.label;
  d["mode"] = std::string(to_string(s.mode));
  d["mu1"] = s.mu1;
  d["mu2"] = s.mu2;
  d["sigma"] = s.sigma;
  d["v"] = s.v;
  d["n_req"] = s.n_req;
  d["n1"] = s.n1;
  d["replications"] = s.replications;
  d["mean_n"] = s.mean_n;
  d["sd_n"] = s.sd_n;
  d["ratio"] = s.ratio;
  d["bound_table"] = s.bound_table;
  d["bound_theorem"] = s.bound_theorem;
  d["cap_hits"] = s.cap_hits;
  return d;
}

py::dict stop_dict(const StopResult& r) {
  py::dict d;
  d["n_stop"] = r.n_stop;
  d["stopped"] = r.stopped;
  d["final_sigma_hat_sq"] = r.final_sigma_hat_sq;
  py::list trace;
  for (const auto& e : r.trace) trace.append(py::make_tuple(e.n, e.sigma_hat_sq, e.threshold));
  d["trace"] = trace;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Blinded and unblinded continuous variance monitoring";
  m.attr("__version__") = std::string(kVersion);
  m.attr("DEFAULT_SEED") = kDefaultSeed;
  m.attr("DEFAULT_REPLICATIONS") = kDefaultReplications;

  // StateError and other std::logic_error types surface as RuntimeError.
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  // distributions
  m.def("normal_cdf", &normal_cdf, py::arg("x"));
  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def("central_chisq_cdf", &central_chisq_cdf, py::arg("dof"), py::arg("x"));
  m.def(
      "noncentral_chisq_cdf",
      [](int dof, double lambda, double x) {
        return noncentral_chisq_cdf(NoncentralChiSq(dof, lambda), x);
      },
      py::arg("dof"), py::arg("lambda_"), py::arg("x"));

  // design
  m.def("compute_v", &compute_v, py::arg("alpha"), py::arg("beta"), py::arg("delta_a"));
  m.def("n_req", &n_req, py::arg("v"), py::arg("sigma"));

  // estimators
  py::class_<PairAccumulator>(m, "PairAccumulator")
      .def(py::init<>())
      .def("push_pair", &PairAccumulator::push_pair, py::arg("x"), py::arg("y"))
      .def_property_readonly("n", &PairAccumulator::n)
      .def_property_readonly("mean_x", &PairAccumulator::mean_x)
      .def_property_readonly("mean_y", &PairAccumulator::mean_y)
      .def_property_readonly("m2_x", &PairAccumulator::m2_x)
      .def_property_readonly("m2_y", &PairAccumulator::m2_y)
      .def_property_readonly("mean_z", &PairAccumulator::mean_z)
      .def_property_readonly("m2_z", &PairAccumulator::m2_z)
      .def("blinded_variance", &PairAccumulator::blinded_variance)
      .def("unblinded_variance", &PairAccumulator::unblinded_variance);

  // monitoring
  m.def(
      "run_on_stream",
      [](const std::vector<std::pair<double, double>>& pairs, double v, std::int64_t n1,
         const std::string& mode, std::optional<std::int64_t> max_n, bool keep_trace) {
        const std::int64_t cap =
            max_n.value_or(std::max<std::int64_t>(n1 + 1, static_cast<std::int64_t>(pairs.size())));
        const MonitorConfig config{v, n1, cap, mode_arg(mode), keep_trace};
        return stop_dict(run_on_stream(config, pairs));
      },
      py::arg("pairs"), py::arg("v"), py::arg("n1") = kDefaultInitialSize,
      py::arg("mode") = "blinded", py::arg("max_n") = py::none(), py::arg("keep_trace") = true);

  // theory
  m.def(
      "mean_bound",
      [](std::int64_t n1, double v, double sigma, double mu1, double mu2,
         const std::string& variant) {
        if (variant != "theorem" && variant != "table") {
          throw DomainError("variant must be 'theorem' or 'table'");
        }
        return mean_bound(n1, v, sigma, mu1, mu2,
                          variant == "table" ? BoundVariant::table : BoundVariant::theorem);
      },
      py::arg("n1"), py::arg("v"), py::arg("sigma"), py::arg("mu1"), py::arg("mu2") = 0.0,
      py::arg("variant") = "theorem");
  m.def("second_moment_bound", &second_moment_bound, py::arg("n1"), py::arg("v"),
        py::arg("sigma"), py::arg("mu1"), py::arg("mu2") = 0.0);
  m.def(
      "tail_bound_sum",
      [](std::int64_t n1, double a, double epsilon, std::optional<double> q) {
        return tail_bound_sum(n1, a, epsilon, q.value_or(default_tail_q(epsilon)));
      },
      py::arg("n1"), py::arg("a"), py::arg("epsilon"), py::arg("q") = py::none());
  m.def(
      "tail_bound_chisq",
      [](std::int64_t n1, double a, double epsilon, double delta, double sigma,
         std::optional<double> q) {
        return tail_bound_chisq(n1, a, epsilon, q.value_or(default_tail_q(epsilon)), delta,
                                sigma);
      },
      py::arg("n1"), py::arg("a"), py::arg("epsilon"), py::arg("delta"), py::arg("sigma"),
      py::arg("q") = py::none());
  m.def(
      "asymptotic_targets",
      [](double v, double sigma, double mu1, double mu2, std::int64_t n1) {
        const TheoryTargets t = asymptotic_targets(v, sigma, mu1, mu2, n1);
        py::dict d;
        d["mean_bound_theorem"] = t.mean_bound_theorem;
        d["mean_bound_table"] = t.mean_bound_table;
        d["second_moment_bound"] = t.second_moment_bound;
        d["ratio_limit_sigma"] = t.ratio_limit_sigma;
        d["clt_center_sigma"] = t.clt_center_sigma;
        d["clt_var_sigma"] = t.clt_var_sigma;
        d["ratio_limit_v"] = t.ratio_limit_v;
        d["clt_center_v"] = t.clt_center_v;
        d["clt_var_v"] = t.clt_var_v;
        return d;
      },
      py::arg("v"), py::arg("sigma"), py::arg("mu1"), py::arg("mu2") = 0.0,
      py::arg("n1") = kDefaultInitialSize);

  // simulation
  m.def(
      "run_scenario",
      [](double v, double sigma, double mu1, double mu2, std::int64_t n1,
         const std::string& mode, std::int64_t replications, std::uint64_t seed,
         std::optional<std::int64_t> max_n, unsigned workers, const std::string& label) {
        Scenario s;
        s.label = label;
        s.v = v;
        s.truth = ScenarioTruth(mu1, mu2, sigma);
        s.n1 = n1;
        s.mode = parse_scenario_mode(mode);
        s.replications = replications;
        s.base_seed = seed;
        s.max_n = max_n;
        ScenarioResult r;
        {
          py::gil_scoped_release release;
          r = run_scenario(s, RunOptions{workers});
        }
        py::dict out;
        for (const auto& summary : r.summaries) {
          py::dict d = summary_dict(summary);
          d["n_stop"] = summary.mode == Mode::blinded ? r.n_blinded : r.n_unblinded;
          out[py::str(std::string(to_string(summary.mode)))] = d;
        }
        return out;
      },
      py::arg("v"), py::arg("sigma"), py::arg("mu1"), py::arg("mu2") = 0.0,
      py::arg("n1") = kDefaultInitialSize, py::arg("mode") = "both",
      py::arg("replications") = kDefaultReplications, py::arg("seed") = kDefaultSeed,
      py::arg("max_n") = py::none(), py::arg("workers") = 0u, py::arg("label") = "scenario");
  m.def(
      "run_table",
      [](int table, std::uint64_t seed, std::int64_t replications, unsigned workers) {
        std::vector<TableRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_table(table, seed, RunOptions{workers}, replications);
        }
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["mu1"] = r.mu1;
          d["n_req"] = r.n_req;
          d["sigma"] = r.sigma;
          d["v"] = r.v;
          d["blinded"] = summary_dict(r.blinded);
          d["unblinded"] = summary_dict(r.unblinded);
          out.append(d);
        }
        return out;
      },
      py::arg("table"), py::arg("seed") = kDefaultSeed,
      py::arg("replications") = kDefaultReplications, py::arg("workers") = 0u);
  m.def(
      "table_csv",
      [](int table, std::uint64_t seed, std::int64_t replications, unsigned workers) {
        std::ostringstream os;
        {
          py::gil_scoped_release release;
          write_table_csv(os, run_table(table, seed, RunOptions{workers}, replications));
        }
        return os.str();
      },
      py::arg("table"), py::arg("seed") = kDefaultSeed,
      py::arg("replications") = kDefaultReplications, py::arg("workers") = 0u);
  m.def(
      "invariance_harness",
      [](double n_req_value, const std::vector<std::tuple<double, double, double, double>>& sets,
         const std::string& mode, std::int64_t replications, std::uint64_t seed, std::int64_t n1,
         unsigned workers) {
        std::vector<ParameterSet> params;
        for (const auto& [v, sigma, mu1, mu2] : sets) params.push_back({v, sigma, mu1, mu2});
        InvarianceReport r;
        {
          py::gil_scoped_release release;
          r = invariance_harness(n_req_value, params, seed, mode_arg(mode), replications, n1,
                                 RunOptions{workers});
        }
        py::dict d;
        d["identical"] = r.identical;
        d["replications"] = r.replications;
        d["divergent_replications"] = r.divergent_replications;
        d["first_divergent"] = r.first_divergent;
        d["first_divergent_n_stop"] = r.first_divergent_n_stop;
        return d;
      },
      py::arg("n_req"), py::arg("sets"), py::arg("mode"),
      py::arg("replications") = kDefaultReplications, py::arg("seed") = kDefaultSeed,
      py::arg("n1") = kDefaultInitialSize, py::arg("workers") = 0u);

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed, std::int64_t replications,
         unsigned workers) {
        std::vector<Check> checks;
        {
          py::gil_scoped_release release;
          checks = run_suite(suite, VerifyOptions{seed, workers, replications});
        }
        py::list out;
        for (const auto& c : checks) {
          out.append(py::make_tuple(c.name, c.passed, c.observed, c.expected));
        }
        return out;
      },
      py::arg("suite") = "all", py::arg("seed") = kDefaultSeed,
      py::arg("replications") = kDefaultReplications, py::arg("workers") = 0u);
}
