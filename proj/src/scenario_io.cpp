#include "blindmon/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "blindmon/errors.hpp"

namespace blindmon {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Strips a trailing " # comment" from a value.
std::string_view strip_comment(std::string_view s) {
  const auto pos = s.find_first_of("#;");
  return pos == std::string_view::npos ? s : s.substr(0, pos);
}

const std::set<std::string, std::less<>> kKeys = {
    "v",  "alpha", "beta", "delta_a",      "mu1",       "mu2",
    "sigma", "n1", "mode", "replications", "base_seed", "label"};

struct Entry {
  std::string value;
  std::size_t line;
};

struct RawSection {
  std::string name;
  std::size_t line;
  std::map<std::string, Entry, std::less<>> entries;
};

double parse_double(const Entry& e, std::string_view key) {
  double value = 0.0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(e.line, "invalid number for '" + std::string(key) + "': " + e.value);
  }
  return value;
}

template <typename Int>
Int parse_integer(const Entry& e, std::string_view key) {
  Int value = 0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(e.line, "invalid integer for '" + std::string(key) + "': " + e.value);
  }
  return value;
}

Scenario build(const RawSection& raw) {
  const auto find = [&](std::string_view key) -> const Entry* {
    const auto it = raw.entries.find(key);
    return it == raw.entries.end() ? nullptr : &it->second;
  };
  const auto require = [&](std::string_view key) -> const Entry& {
    const Entry* e = find(key);
    if (!e) {
      throw ConfigError(raw.line,
                        "section [" + raw.name + "] is missing '" + std::string(key) + "'");
    }
    return *e;
  };

  Scenario s;
  s.label = raw.name;
  if (const Entry* e = find("label")) s.label = e->value;

  const Entry* v = find("v");
  const bool any_rates = find("alpha") || find("beta") || find("delta_a");
  try {
    if (v && any_rates) {
      throw ConfigError(v->line, "give either 'v' or 'alpha'/'beta'/'delta_a', not both");
    }
    if (v) {
      s.v = parse_double(*v, "v");
      if (!(s.v > 0.0)) throw ConfigError(v->line, "'v' must be positive");
    } else {
      const Entry& alpha = require("alpha");
      const Entry& beta = require("beta");
      const Entry& delta_a = require("delta_a");
      s.design = DesignParams::from_error_rates(parse_double(alpha, "alpha"),
                                                parse_double(beta, "beta"),
                                                parse_double(delta_a, "delta_a"));
      s.v = s.design->v;
    }
  } catch (const DomainError& err) {
    throw ConfigError(raw.line, "section [" + raw.name + "]: " + err.what());
  }

  const Entry& mu1 = require("mu1");
  const Entry& sigma = require("sigma");
  const Entry* mu2 = find("mu2");
  try {
    s.truth = ScenarioTruth(parse_double(mu1, "mu1"), mu2 ? parse_double(*mu2, "mu2") : 0.0,
                            parse_double(sigma, "sigma"));
  } catch (const DomainError& err) {
    throw ConfigError(sigma.line, err.what());
  }

  if (const Entry* e = find("n1")) {
    s.n1 = parse_integer<std::int64_t>(*e, "n1");
    if (s.n1 < 2) throw ConfigError(e->line, "'n1' must be >= 2");
  }
  if (const Entry* e = find("mode")) {
    try {
      s.mode = parse_scenario_mode(e->value);
    } catch (const DomainError& err) {
      throw ConfigError(e->line, err.what());
    }
  }
  if (const Entry* e = find("replications")) {
    s.replications = parse_integer<std::int64_t>(*e, "replications");
    if (s.replications < 1) throw ConfigError(e->line, "'replications' must be >= 1");
  }
  if (const Entry* e = find("base_seed")) {
    s.base_seed = parse_integer<std::uint64_t>(*e, "base_seed");
  }
  return s;
}

}  // namespace

std::vector<Scenario> parse_scenarios(std::istream& in) {
  std::vector<RawSection> sections;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#' || text.front() == ';') continue;

    if (text.front() == '[') {
      if (text.back() != ']' || text.size() < 3) {
        throw ConfigError(line_no, "malformed section header: " + std::string(text));
      }
      sections.push_back({std::string(trim(text.substr(1, text.size() - 2))), line_no, {}});
      continue;
    }

    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "expected key = value: " + std::string(text));
    }
    if (sections.empty()) {
      throw ConfigError(line_no, "key outside of any [section]");
    }
    const std::string key(trim(text.substr(0, eq)));
    const std::string_view raw_value = text.substr(eq + 1);
    // Labels are free text; other values may carry a trailing comment.
    const std::string value(trim(key == "label" ? raw_value : strip_comment(raw_value)));
    if (!kKeys.contains(key)) {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
    if (value.empty()) {
      throw ConfigError(line_no, "empty value for '" + key + "'");
    }
    auto& entries = sections.back().entries;
    if (entries.contains(key)) {
      throw ConfigError(line_no, "duplicate key '" + key + "'");
    }
    entries.emplace(key, Entry{value, line_no});
  }

  std::vector<Scenario> out;
  out.reserve(sections.size());
  for (const auto& raw : sections) out.push_back(build(raw));
  return out;
}

std::vector<Scenario> parse_scenarios_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(0, "cannot open config file '" + path + "'");
  }
  return parse_scenarios(in);
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                       std::chars_format::general, 6);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_summary_header(std::ostream& out) { out << kSummaryHeader << '\n'; }

void write_summary_row(std::ostream& out, const ScenarioSummary& s) {
  out << csv_field(s.label) << ',' << to_string(s.mode) << ',' << format_number(s.mu1) << ','
      << format_number(s.mu2) << ',' << format_number(s.sigma) << ',' << format_number(s.v)
      << ',' << format_number(s.n_req) << ',' << s.n1 << ',' << s.replications << ','
      << format_number(s.mean_n) << ',' << format_number(s.sd_n) << ','
      << format_number(s.ratio) << ',' << format_number(s.bound_table) << ','
      << format_number(s.bound_theorem) << ',' << s.cap_hits << '\n';
}

void write_dump_header(std::ostream& out) { out << kDumpHeader << '\n'; }

void write_dump_rows(std::ostream& out, const Scenario& scenario, const ScenarioResult& result) {
  const bool both = !result.n_blinded.empty() && !result.n_unblinded.empty();
  const auto emit = [&](const std::vector<std::int64_t>& stops, Mode mode) {
    const std::string label =
        csv_field(both ? scenario.label + ":" + std::string(to_string(mode)) : scenario.label);
    for (std::size_t r = 0; r < stops.size(); ++r) {
      out << label << ',' << r << ',' << stops[r] << '\n';
    }
  };
  if (!result.n_blinded.empty()) emit(result.n_blinded, Mode::blinded);
  if (!result.n_unblinded.empty()) emit(result.n_unblinded, Mode::unblinded);
}

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows) {
  out << kTableHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.mu1) << ',' << format_number(r.n_req) << ','
        << format_number(r.sigma) << ',' << format_number(r.v) << ','
        << format_number(r.blinded.mean_n) << ',' << format_number(r.blinded.sd_n) << ','
        << format_number(r.blinded.ratio) << ',' << format_number(r.blinded.bound_table) << ','
        << format_number(r.blinded.bound_theorem) << ',' << format_number(r.unblinded.mean_n)
        << ',' << format_number(r.unblinded.sd_n) << ',' << format_number(r.unblinded.ratio)
        << ',' << r.blinded.cap_hits << ',' << r.unblinded.cap_hits << '\n';
  }
}

}  // namespace blindmon
