#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pistat/types.hpp"

namespace pistat {

struct CorpusConfig {
  YearRange year_bounds{1970, 2016};
  // First year with complete author lists (registered and unregistered).
  Year conor_year = 2003;
  Year postdoc_cutoff_year = 2007;
  int postdoc_window_years = 7;
  // COBISS typology codes counted as scientific output.
  std::vector<std::string> scientific_types = {"1.01", "1.02", "1.03", "1.06",
                                               "1.08", "1.12", "1.16", "2.01"};
  // Top-level field taxonomy; researchers must name one of these.
  std::vector<std::string> fields = {"1", "2", "3", "4", "5", "6"};

  /// Throws UsageError when the configuration is internally inconsistent.
  void validate() const;
};

/// Flat `key = value` file. Blank lines and lines starting with '#' are
/// ignored; values may be wrapped in double quotes.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::istream& in, const std::string& source_name);
  static KeyValueFile load(const std::filesystem::path& path);

  std::optional<std::string> get(std::string_view key) const;
  void set(std::string key, std::string value);
  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

/// Overlays the corpus keys of `file` onto `base`.
/// Recognised keys: year_bounds (e.g. "1970-2016"), conor_year,
/// postdoc_cutoff_year, postdoc_window_years, scientific_types, fields.
CorpusConfig corpus_config_from(const KeyValueFile& file, CorpusConfig base = {});

// Small parsing helpers shared by the loaders and the CLI.
std::optional<int> parse_int(std::string_view text);
std::string_view trim(std::string_view text);
std::vector<std::string> split_list(std::string_view text, char sep);
YearRange parse_year_range(std::string_view text);  // "1970-2016"

}  // namespace pistat
