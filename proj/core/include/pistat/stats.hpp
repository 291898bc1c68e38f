#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pistat/corpus.hpp"
#include "pistat/indicators.hpp"

namespace pistat {

/// Two yearly series restricted to the years both define.
struct PairedSeries {
  std::vector<Year> common_years;
  std::vector<double> x;
  std::vector<double> y;

  static PairedSeries align(const std::map<Year, double>& x, const std::map<Year, double>& y);
};

/// Product-moment correlation over the common years. Throws StatsError with
/// fewer than three points; nullopt when either side has zero variance.
std::optional<double> pearson(const PairedSeries& pair);
std::optional<double> pearson(const std::map<Year, double>& x, const std::map<Year, double>& y);

struct CorrelationRow {
  std::string indicator;
  std::optional<double> r;
  int points = 0;
};

/// Active-project counts per year against each yearly indicator mean of
/// `group` over `years`. Throws StatsError when `years` spans fewer than
/// three years.
std::vector<CorrelationRow> correlation_report(const Corpus& corpus, const Group& group, YearRange years);

}  // namespace pistat
