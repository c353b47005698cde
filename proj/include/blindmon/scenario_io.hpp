#ifndef BLINDMON_SCENARIO_IO_HPP_
#define BLINDMON_SCENARIO_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "blindmon/simulation.hpp"

namespace blindmon {

/*
 * Scenario files: one scenario per [section], key = value lines.
 *
 *   [row-1]
 *   v = 1              # or alpha, beta, delta_a
 *   mu1 = 1
 *   mu2 = 0
 *   sigma = 10
 *   n1 = 10
 *   mode = both        # blinded | unblinded | both
 *   replications = 10000
 *   base_seed = 20120001
 *   label = row-1      # defaults to the section name
 *
 * Blank lines and lines starting with '#' or ';' are ignored. Unknown or
 * repeated keys, missing required keys and bad values throw ConfigError with
 * the offending line number.
 */
std::vector<Scenario> parse_scenarios(std::istream& in);
std::vector<Scenario> parse_scenarios_file(const std::string& path);

// 6 significant digits in "%.6g" style,
// independent of the global locale.
std::string format_number(double value);

// RFC 4180 field quoting: quotes fields containing ',', '"', CR or LF.
std::string csv_field(std::string_view text);

inline constexpr std::string_view kSummaryHeader =
    "label,mode,mu1,mu2,sigma,v,n_req,n1,replications,mean_n,sd_n,ratio,bound_table,"
    "bound_theorem,cap_hits";

void write_summary_header(std::ostream& out);
void write_summary_row(std::ostream& out, const ScenarioSummary& s);

inline constexpr std::string_view kDumpHeader = "label,replication,n_stop";

void write_dump_header(std::ostream& out);
// With both modes simulated the label is suffixed ":blinded" / ":unblinded".
void write_dump_rows(std::ostream& out, const Scenario& scenario, const ScenarioResult& result);

inline constexpr std::string_view kTableHeader =
    "mu1,n_req,sigma,v,mean_n_blinded,sd_n_blinded,ratio_blinded,bound_table,bound_theorem,"
    "mean_n_unblinded,sd_n_unblinded,ratio_unblinded,cap_hits_blinded,cap_hits_unblinded";

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows);

}  // namespace blindmon

#endif  // BLINDMON_SCENARIO_IO_HPP_
