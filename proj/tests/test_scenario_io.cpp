#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "blindmon/errors.hpp"
#include "blindmon/scenario_io.hpp"

using namespace blindmon;

namespace {

std::vector<Scenario> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_scenarios(in);
}

// Line number reported for a config that must fail.
std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  FAIL("expected ConfigError");
  return 0;
}

}  // namespace

TEST_CASE("parse the sample scenario file") {
  const auto s = parse_scenarios_file(BLINDMON_TEST_DATA "/table_rows.ini");
  REQUIRE(s.size() == 3);

  CHECK(s[0].label == "t1-mu1-1-nreq-100");
  CHECK(s[0].v == 1.0);
  CHECK(s[0].truth.sigma == 10.0);
  CHECK(s[0].truth.delta() == 1.0);
  CHECK(s[0].mode == ScenarioMode::both);
  CHECK(s[0].base_seed == 20120001u);
  CHECK_FALSE(s[0].design.has_value());

  CHECK(s[1].truth.mu2 == 0.0);
  CHECK(s[1].n1 == kDefaultInitialSize);
  CHECK(s[1].base_seed == kDefaultSeed);
  CHECK(s[1].mode == ScenarioMode::blinded);

  REQUIRE(s[2].design.has_value());
  CHECK(s[2].v == doctest::Approx(62.791038).epsilon(1e-6));
  CHECK(s[2].replications == 2000);
  CHECK(s[2].label == "design-driven, \"quoted\"");
}

TEST_CASE("empty and comment-only files give no scenarios") {
  CHECK(parse("").empty());
  CHECK(parse("# nothing\n; here\n\n").empty());
  CHECK(parse_scenarios_file(BLINDMON_TEST_DATA "/empty.ini").empty());
}

TEST_CASE("errors carry the offending line") {
  CHECK(error_line("[a]\nv = 1\nmu1 = 0\nmax_n = 4\nsigma = 1\n") == 4);
  CHECK(error_line("[a]\nv = 1\nmu1 = 0\nsigma = 1\nmu1 = 2\n") == 5);
  CHECK(error_line("[a]\nv = 1\nmu1 = x\nsigma = 1\n") == 3);
  CHECK(error_line("[a]\nv = 1\nmu1 = 1\nsigma = 0\n") == 4);
  CHECK(error_line("[a]\nv = 1\nalpha = 0.025\nmu1 = 1\nsigma = 1\n") == 2);
  CHECK(error_line("v = 1\n") == 1);
  CHECK(error_line("[a\n") == 1);
  CHECK(error_line("[a]\njunk\n") == 2);
  CHECK(error_line("[a]\nv = 1\nmu1 = 1\nsigma = 1\nmode = sometimes\n") == 5);
  CHECK(error_line("[a]\nv = 1\nmu1 = 1\nsigma = 1\nn1 = 1\n") == 5);
  CHECK(error_line("[a]\nv = 1\nmu1 = 1\nsigma = 1\nreplications = 0\n") == 5);
  // Missing keys point at the section header.
  CHECK(error_line("# c\n[a]\nv = 1\nmu1 = 1\n") == 2);
  CHECK(error_line("[a]\nalpha = 0.025\nbeta = 0.2\nmu1 = 1\nsigma = 1\n") == 1);

  try {
    parse("[a]\nv = 1\nmu1 = 0\nmax_n = 4\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    CHECK(std::string(e.what()).find("max_n") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_scenarios_file(BLINDMON_TEST_DATA "/does-not-exist.ini"), ConfigError);
}

TEST_CASE("format_number") {
  CHECK(format_number(15.697759) == "15.6978");
  CHECK(format_number(62.791038) == "62.791");
  CHECK(format_number(10.0) == "10");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1234567.0) == "1.23457e+06");
  CHECK(format_number(-2.25) == "-2.25");
}

TEST_CASE("csv_field quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(csv_field("") == "");
}

TEST_CASE("summary and dump output") {
  auto scenarios = parse("[x,y]\nv = 10\nmu1 = 1\nsigma = 1\nreplications = 3\n");
  REQUIRE(scenarios.size() == 1);
  const auto result = run_scenario(scenarios[0], RunOptions{1});

  std::ostringstream summary;
  write_summary_header(summary);
  for (const auto& s : result.summaries) write_summary_row(summary, s);
  std::istringstream lines(summary.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == kSummaryHeader);
  std::getline(lines, line);
  CHECK(line.rfind("\"x,y\",blinded,1,0,1,10,10,10,3,", 0) == 0);
  std::getline(lines, line);
  CHECK(line.rfind("\"x,y\",unblinded,", 0) == 0);

  std::ostringstream dump;
  write_dump_header(dump);
  write_dump_rows(dump, scenarios[0], result);
  const std::string text = dump.str();
  CHECK(text.rfind(std::string(kDumpHeader) + "\n\"x,y:blinded\",0,", 0) == 0);
  CHECK(text.find("\"x,y:unblinded\",2,") != std::string::npos);

  scenarios[0].mode = ScenarioMode::unblinded;
  scenarios[0].label = "solo";
  std::ostringstream solo;
  write_dump_rows(solo, scenarios[0], run_scenario(scenarios[0], RunOptions{1}));
  CHECK(solo.str().rfind("solo,0,", 0) == 0);
}

TEST_CASE("table csv") {
  const auto rows = run_table(2, 5, RunOptions{1}, 20);
  std::ostringstream out;
  write_table_csv(out, rows);
  std::istringstream in(out.str());
  std::string line;
  int count = 0;
  std::getline(in, line);
  CHECK(line == kTableHeader);
  while (std::getline(in, line)) {
    ++count;
    CHECK(std::count(line.begin(), line.end(), ',') == 13);
  }
  CHECK(count == 15);
  CHECK(out.str().find("\n1,10,1,10,") != std::string::npos);
}
