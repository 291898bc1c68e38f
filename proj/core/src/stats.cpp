#include "pistat/stats.hpp"

#include <algorithm>
#include <cmath>

#include "pistat/error.hpp"

namespace pistat {

PairedSeries PairedSeries::align(const std::map<Year, double>& x, const std::map<Year, double>& y) {
  PairedSeries out;
  for (const auto& [year, xv] : x) {
    auto it = y.find(year);
    if (it == y.end()) continue;
    out.common_years.push_back(year);
    out.x.push_back(xv);
    out.y.push_back(it->second);
  }
  return out;
}

std::optional<double> pearson(const PairedSeries& pair) {
  const auto n = pair.x.size();
  if (n < 3) {
    throw StatsError("pearson needs at least 3 common points, got " + std::to_string(n));
  }
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += pair.x[i];
    mean_y += pair.y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = pair.x[i] - mean_x;
    const double dy = pair.y[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<double> pearson(const std::map<Year, double>& x, const std::map<Year, double>& y) {
  return pearson(PairedSeries::align(x, y));
}

std::vector<CorrelationRow> correlation_report(const Corpus& corpus, const Group& group, YearRange years) {
  if (years.size() < 3) {
    throw StatsError("correlation range " + std::to_string(years.first) + "-" +
                     std::to_string(years.last) + " has fewer than 3 years");
  }
  std::map<Year, double> projects;
  const auto counts = project_counts_series(corpus);
  for (Year y = years.first; y <= years.last; ++y) {
    auto it = counts.find(y);
    projects[y] = it == counts.end() ? 0.0 : it->second.active_projects;
  }
  std::vector<CorrelationRow> rows;
  for (auto indicator : kAllIndicators) {
    const auto series = indicator_series(corpus, group, indicator, years);
    const auto pair = PairedSeries::align(projects, series.values);
    CorrelationRow row{std::string(indicator_name(indicator)), std::nullopt,
                       static_cast<int>(pair.x.size())};
    if (pair.x.size() >= 3) row.r = pearson(pair);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pistat
