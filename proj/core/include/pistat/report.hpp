#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pistat/config.hpp"
#include "pistat/corpus.hpp"
#include "pistat/indicators.hpp"
#include "pistat/netlab.hpp"

namespace pistat {

// ---------------------------------------------------------------------------
// Tables

/// Empty cell (monostate) marks an undefined value.
using Cell = std::variant<std::monostate, long long, double, std::string>;

Cell cell(std::optional<double> v);

struct Table {
  std::string name;  // file stem of the CSV and key in the JSON bundle
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Doubles are rounded to 4 decimals; undefined cells are left empty.
std::string format_decimal(double v);
void write_csv(const Table& table, std::ostream& out);

// ---------------------------------------------------------------------------
// Run configuration

/// Environment variable naming the default config file.
inline constexpr const char* kConfigEnvVar = "PISTAT_CONFIG";

struct RunConfig {
  std::filesystem::path researchers;
  std::filesystem::path publications;
  std::filesystem::path projects;
  std::filesystem::path out_dir = "pistat-out";
  CorpusConfig corpus;
  std::optional<YearRange> analysis_years;  // defaults to corpus.year_bounds
  std::vector<GroupSelector> groups = {GroupSelector::all_active(), GroupSelector::pis()};
  std::vector<Indicator> indicators{kAllIndicators.begin(), kAllIndicators.end()};
  std::vector<YearRange> periods = growing_periods(1970, 1994, 2016);
  std::optional<ExportFormat> network_export;
  YearRange correlation_years{1994, 2016};
  int career_drop_short = 3;
  std::optional<Year> career_stopped_by;  // defaults to year_bounds.last - 2
  Year postdoc_before = 2011;
  Year postdoc_horizon = 2017;
  int ego_min_degree = 3;
  // Effective key/value settings, echoed into the JSON bundle.
  KeyValueFile settings;

  YearRange years() const { return analysis_years.value_or(corpus.year_bounds); }
  Year stopped_by() const { return career_stopped_by.value_or(corpus.year_bounds.last - 2); }
};

/// Builds a RunConfig from effective settings. Unknown keys, malformed
/// values and empty group lists throw UsageError. Keys:
///   researchers, publications, projects, out, from, to, group, indicators,
///   periods, format, correlation_years, career_drop_short,
///   career_stopped_by, postdoc_before, postdoc_horizon, ego_min_degree,
///   plus the corpus keys of corpus_config_from.
RunConfig run_config_from(const KeyValueFile& settings);

/// "1970-1994,1970-2016" or "1970:1994..2016" (one period per end year).
std::vector<YearRange> parse_periods(std::string_view text);

// ---------------------------------------------------------------------------
// Analyses as tables

std::vector<Table> indicator_tables(const Corpus& corpus, const RunConfig& config);
std::vector<Table> career_tables(const Corpus& corpus, const RunConfig& config);
std::vector<Table> network_tables(const Corpus& corpus, const RunConfig& config);
std::vector<Table> correlation_tables(const Corpus& corpus, const RunConfig& config);

/// JSON bundle: {"tool", "version", "config", "tables": {name: {columns, rows}}}.
/// Doubles keep full precision; undefined cells are null.
std::string render_json_bundle(const std::vector<Table>& tables, const RunConfig& config);

// ---------------------------------------------------------------------------
// Commands. Each returns a process exit code:
// 0 success, 1 usage/config error, 2 data validation error, 3 I/O error.

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_indicators(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_careers(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_network(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_correlations(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Maps an in-flight exception to the exit code contract and prints it.
int report_exception(std::ostream& err);

std::string_view tool_version();

}  // namespace pistat
