// blindmon: design calculations, scenario simulation, reference-table
// reproduction and verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or config error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "blindmon/design.hpp"
#include "blindmon/errors.hpp"
#include "blindmon/scenario_io.hpp"
#include "blindmon/simulation.hpp"
#include "blindmon/verify.hpp"
#include "blindmon/version.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

int cmd_design(double alpha, double beta, double delta_a, std::optional<double> sigma) {
  const double v = blindmon::compute_v(alpha, beta, delta_a);
  std::cout << "v=" << blindmon::format_number(v) << '\n';
  if (sigma) {
    std::cout << "n_req=" << blindmon::format_number(blindmon::n_req(v, *sigma)) << '\n';
  }
  return kOk;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw blindmon::ConfigError(0, "cannot open '" + path + "' for writing");
  }
  return out;
}

int cmd_simulate(const std::string& config, const std::string& out_path,
                 const std::string& dump_path, unsigned workers) {
  const auto scenarios = blindmon::parse_scenarios_file(config);
  std::ofstream out = open_output(out_path);
  std::optional<std::ofstream> dump;
  if (!dump_path.empty()) {
    dump = open_output(dump_path);
    blindmon::write_dump_header(*dump);
  }
  blindmon::write_summary_header(out);
  for (const auto& s : scenarios) {
    const auto result = blindmon::run_scenario(s, blindmon::RunOptions{workers});
    for (const auto& summary : result.summaries) {
      blindmon::write_summary_row(out, summary);
      if (summary.cap_hits > 0) {
        std::cerr << "warning: " << s.label << " (" << blindmon::to_string(summary.mode)
                  << ") hit max_n in " << summary.cap_hits << " replications\n";
      }
    }
    if (dump) blindmon::write_dump_rows(*dump, s, result);
  }
  return kOk;
}

int cmd_reproduce(int table, std::uint64_t seed, const std::string& out_path, unsigned workers,
                  std::int64_t replications) {
  const auto rows = blindmon::run_table(table, seed, blindmon::RunOptions{workers}, replications);
  if (out_path.empty() || out_path == "-") {
    blindmon::write_table_csv(std::cout, rows);
  } else {
    std::ofstream out = open_output(out_path);
    blindmon::write_table_csv(out, rows);
  }
  return kOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, unsigned workers,
               std::int64_t replications) {
  const auto checks =
      blindmon::run_suite(suite, blindmon::VerifyOptions{seed, workers, replications});
  bool all = true;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": observed " << c.observed
              << ", expected " << c.expected << '\n';
    all = all && c.passed;
  }
  std::cout << (all ? "all checks passed" : "some checks FAILED") << '\n';
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blinded and unblinded continuous variance monitoring"};
  app.set_version_flag("--version", std::string(blindmon::kVersion));
  app.require_subcommand(1);

  double alpha = 0.0;
  double beta = 0.0;
  double delta_a = 0.0;
  std::optional<double> sigma;
  auto* design = app.add_subcommand("design", "Compute v and optionally n_req");
  design->add_option("--alpha", alpha, "One-sided significance level")->required();
  design->add_option("--beta", beta, "Type II error rate")->required();
  design->add_option("--delta-a", delta_a, "Assumed group difference")->required();
  design->add_option("--sigma", sigma, "Common standard deviation");

  std::string config;
  std::string out_path;
  std::string dump_path;
  unsigned workers = 0;
  auto* simulate = app.add_subcommand("simulate", "Run the scenarios of a config file");
  simulate->add_option("--config,config", config, "Scenario file")->required();
  simulate->add_option("--out,out", out_path, "Summary CSV")->required();
  simulate->add_option("--dump", dump_path, "Per-replication CSV");
  simulate->add_option("--workers", workers, "Worker threads (0 = all cores)");

  int table = 1;
  std::uint64_t seed = blindmon::kDefaultSeed;
  std::int64_t replications = blindmon::kDefaultReplications;
  auto* reproduce = app.add_subcommand("reproduce", "Reproduce a reference table");
  reproduce->add_option("--table", table, "Table id")->required()->check(CLI::IsMember({1, 2}));
  reproduce->add_option("--seed", seed, "Base seed");
  reproduce->add_option("--out", out_path, "Output CSV (default stdout)");
  reproduce->add_option("--workers", workers, "Worker threads (0 = all cores)");
  reproduce->add_option("--replications", replications, "Runs per row")
      ->check(CLI::PositiveNumber);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suite, "identity|bounds|invariance|normality|tail|all")
      ->check([](const std::string& name) {
        return blindmon::is_suite_name(name) ? std::string() : "unknown suite '" + name + "'";
      });
  verify->add_option("--seed", seed, "Base seed");
  verify->add_option("--workers", workers, "Worker threads (0 = all cores)");
  verify->add_option("--replications", replications, "Monte Carlo replications")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (design->parsed()) return cmd_design(alpha, beta, delta_a, sigma);
    if (simulate->parsed()) return cmd_simulate(config, out_path, dump_path, workers);
    if (reproduce->parsed()) return cmd_reproduce(table, seed, out_path, workers, replications);
    if (verify->parsed()) return cmd_verify(suite, seed, workers, replications);
  } catch (const blindmon::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const blindmon::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
