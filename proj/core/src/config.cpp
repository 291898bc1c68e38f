#include "pistat/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>

#include "pistat/error.hpp"

namespace pistat {

std::string_view trim(std::string_view text) {
  constexpr std::string_view kSpace = " \t\r\n";
  const auto begin = text.find_first_not_of(kSpace);
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(kSpace);
  return text.substr(begin, end - begin + 1);
}

std::optional<int> parse_int(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) return std::nullopt;
  return value;
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find(sep, pos);
    out.emplace_back(trim(text.substr(pos, next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

YearRange parse_year_range(std::string_view text) {
  text = trim(text);
  const auto dash = text.find('-', 1);
  if (dash == std::string_view::npos) {
    throw UsageError("expected a year range like 1970-2016, got '" + std::string(text) + "'");
  }
  auto first = parse_int(text.substr(0, dash));
  auto last = parse_int(text.substr(dash + 1));
  if (!first || !last || *first > *last) {
    throw UsageError("invalid year range '" + std::string(text) + "'");
  }
  return {*first, *last};
}

void CorpusConfig::validate() const {
  if (year_bounds.first > year_bounds.last) {
    throw UsageError("year_bounds: first year after last year");
  }
  if (!year_bounds.contains(conor_year)) {
    throw UsageError("conor_year " + std::to_string(conor_year) + " outside year_bounds");
  }
  if (!year_bounds.contains(postdoc_cutoff_year)) {
    throw UsageError("postdoc_cutoff_year " + std::to_string(postdoc_cutoff_year) +
                     " outside year_bounds");
  }
  if (postdoc_window_years < 0) throw UsageError("postdoc_window_years must be >= 0");
  if (fields.size() < 2) throw UsageError("field taxonomy needs at least two fields");
  std::set<std::string_view> seen(fields.begin(), fields.end());
  if (seen.size() != fields.size()) throw UsageError("field taxonomy has duplicates");
  if (scientific_types.empty()) throw UsageError("scientific_types is empty");
}

KeyValueFile KeyValueFile::parse(std::istream& in, const std::string& source_name) {
  KeyValueFile file;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(source_name, line_no, "expected 'key = value'");
    }
    auto key = trim(view.substr(0, eq));
    auto value = trim(view.substr(eq + 1));
    if (key.empty()) throw ParseError(source_name, line_no, "empty key");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    file.entries_[std::string(key)] = std::string(value);
  }
  return file;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open config file");
  return parse(in, path.string());
}

std::optional<std::string> KeyValueFile::get(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void KeyValueFile::set(std::string key, std::string value) {
  entries_[std::move(key)] = std::move(value);
}

namespace {

int require_int(const KeyValueFile& file, std::string_view key, int fallback) {
  auto raw = file.get(key);
  if (!raw) return fallback;
  auto value = parse_int(*raw);
  if (!value) throw UsageError(std::string(key) + ": expected an integer, got '" + *raw + "'");
  return *value;
}

}  // namespace

CorpusConfig corpus_config_from(const KeyValueFile& file, CorpusConfig base) {
  if (auto v = file.get("year_bounds")) base.year_bounds = parse_year_range(*v);
  base.conor_year = require_int(file, "conor_year", base.conor_year);
  base.postdoc_cutoff_year = require_int(file, "postdoc_cutoff_year", base.postdoc_cutoff_year);
  base.postdoc_window_years = require_int(file, "postdoc_window_years", base.postdoc_window_years);
  if (auto v = file.get("scientific_types")) base.scientific_types = split_list(*v, ',');
  if (auto v = file.get("fields")) base.fields = split_list(*v, ',');
  return base;
}

}  // namespace pistat
