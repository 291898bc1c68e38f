#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pistat/corpus.hpp"
#include "pistat/indicators.hpp"

namespace pistat {

/// First to last year with a scientific publication.
struct CareerSpan {
  ResearcherIndex researcher = 0;
  Year start_year = 0;
  Year end_year = 0;

  int length_years() const { return end_year - start_year + 1; }
  /// Publication career year (1-based) -> calendar year.
  Year calendar_year(int pcy) const { return start_year + pcy - 1; }
};

/// Throws UsageError when `r` has no scientific publication.
CareerSpan career_span(const Corpus& corpus, ResearcherIndex r);

enum class CareerIndicator {
  kProductivity,
  kRegisteredCollaboration,
  kInternationality,
  kInterdisciplinarity,
};

inline constexpr std::array<CareerIndicator, 4> kAllCareerIndicators = {
    CareerIndicator::kProductivity, CareerIndicator::kRegisteredCollaboration,
    CareerIndicator::kInternationality, CareerIndicator::kInterdisciplinarity};

std::string_view career_indicator_name(CareerIndicator indicator);
std::optional<CareerIndicator> parse_career_indicator(std::string_view name);
/// Yearly indicator a career indicator normalizes.
Indicator underlying_indicator(CareerIndicator indicator);

/// Per-calendar-year means over all productive researchers A_y, the
/// denominator of every normalized value. Computed once, shared read-only.
class CareerBaselines {
 public:
  static CareerBaselines compute(const Corpus& corpus);

  /// nullopt when A_y is empty, the indicator is undefined for every member,
  /// or the mean is zero.
  std::optional<double> mean(CareerIndicator indicator, Year year) const;

 private:
  YearRange years_;
  std::array<std::vector<std::optional<double>>, 4> means_;
};

/// Researcher's raw value in `year` over the A_y mean. Count indicators are 0
/// in silent in-span years; ratio indicators are undefined there.
/// Internationality is undefined before conor_year.
std::optional<double> normalized_indicator(const Corpus& corpus, const CareerBaselines& baselines,
                                           ResearcherIndex r, Year year, CareerIndicator indicator);
std::optional<double> normalized_indicator(const Corpus& corpus, ResearcherIndex r, Year year,
                                           CareerIndicator indicator);

struct CareerSeries {
  std::string indicator;
  std::string group;
  std::map<int, double> values;       // PCY -> mean normalized value
  std::map<int, int> contributors;    // members with a defined value at PCY
  std::map<int, int> population;      // members still active at PCY
};

/// Number of group members whose career is at least PCY years long.
std::map<int, int> population_by_pcy(const Corpus& corpus, const Group& group);

CareerSeries career_series(const Corpus& corpus, const Group& group, CareerIndicator indicator,
                           const CareerBaselines& baselines, std::string group_label = {});

/// career_series over the PIs that ever led a project of `kind` (postdoc
/// requires the subgroup flag). nullopt when the subgroup is empty.
std::optional<CareerSeries> subgroup_career_series(const Corpus& corpus, ProjectKind kind,
                                                   CareerIndicator indicator,
                                                   const CareerBaselines& baselines);

std::optional<double> mean_career_length(const Corpus& corpus, const Group& group);

/// Mean length over members with length > drop_short and last publication
/// year <= require_stopped_by (no bound when unset).
std::optional<double> filtered_career_length(const Corpus& corpus, const Group& group,
                                             int drop_short,
                                             std::optional<Year> require_stopped_by);

struct PostdocFollowup {
  int cohort = 0;
  int without_followup = 0;
  std::optional<double> rate;
};

/// Among postdoc-subgroup PIs whose first flagged postdoc started before
/// `postdoc_before`, the share that started no other project between that
/// postdoc's start and `horizon` (inclusive).
PostdocFollowup postdoc_followup_rate(const Corpus& corpus, Year postdoc_before, Year horizon);

}  // namespace pistat
