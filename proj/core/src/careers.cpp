#include "pistat/careers.hpp"

#include <algorithm>

#include "pistat/error.hpp"

namespace pistat {

CareerSpan career_span(const Corpus& corpus, ResearcherIndex r) {
  const auto& res = corpus.researcher(r);
  if (!corpus.is_active(r) || !res.first_pub_year || !res.last_pub_year) {
    throw UsageError("researcher " + res.id + " has no scientific publication");
  }
  return {r, *res.first_pub_year, *res.last_pub_year};
}

std::string_view career_indicator_name(CareerIndicator indicator) {
  switch (indicator) {
    case CareerIndicator::kProductivity: return "productivity";
    case CareerIndicator::kRegisteredCollaboration: return "registered_collaboration";
    case CareerIndicator::kInternationality: return "internationality";
    case CareerIndicator::kInterdisciplinarity: return "interdisciplinarity";
  }
  return "unknown";
}

std::optional<CareerIndicator> parse_career_indicator(std::string_view name) {
  for (auto indicator : kAllCareerIndicators) {
    if (career_indicator_name(indicator) == name) return indicator;
  }
  return std::nullopt;
}

Indicator underlying_indicator(CareerIndicator indicator) {
  switch (indicator) {
    case CareerIndicator::kProductivity: return Indicator::kProductivity;
    case CareerIndicator::kRegisteredCollaboration: return Indicator::kRegisteredCollaborators;
    case CareerIndicator::kInternationality: return Indicator::kResearcherInternationality;
    case CareerIndicator::kInterdisciplinarity: return Indicator::kResearcherInterdisciplinarity;
  }
  return Indicator::kProductivity;
}

CareerBaselines CareerBaselines::compute(const Corpus& corpus) {
  CareerBaselines b;
  b.years_ = corpus.year_bounds();
  for (auto& m : b.means_) m.assign(b.years_.size(), std::nullopt);
  for (Year y = b.years_.first; y <= b.years_.last; ++y) {
    std::array<double, 4> sum{};
    std::array<int, 4> count{};
    for (auto r : corpus.productive(y)) {
      const auto ry = researcher_year(corpus, r, y);
      sum[0] += ry.publications;
      ++count[0];
      sum[1] += ry.registered_collaborators;
      ++count[1];
      if (ry.internationality) {
        sum[2] += *ry.internationality;
        ++count[2];
      }
      if (ry.interdisciplinarity) {
        sum[3] += *ry.interdisciplinarity;
        ++count[3];
      }
    }
    for (std::size_t k = 0; k < 4; ++k) {
      if (count[k] > 0 && sum[k] > 0.0) b.means_[k][y - b.years_.first] = sum[k] / count[k];
    }
  }
  return b;
}

std::optional<double> CareerBaselines::mean(CareerIndicator indicator, Year year) const {
  if (!years_.contains(year)) return std::nullopt;
  return means_[static_cast<std::size_t>(indicator)][year - years_.first];
}

std::optional<double> normalized_indicator(const Corpus& corpus, const CareerBaselines& baselines,
                                           ResearcherIndex r, Year year, CareerIndicator indicator) {
  const auto base = baselines.mean(indicator, year);
  if (!base) return std::nullopt;
  const auto ry = researcher_year(corpus, r, year);
  switch (indicator) {
    case CareerIndicator::kProductivity: return ry.publications / *base;
    case CareerIndicator::kRegisteredCollaboration: return ry.registered_collaborators / *base;
    case CareerIndicator::kInternationality:
      if (!ry.internationality) return std::nullopt;
      return *ry.internationality / *base;
    case CareerIndicator::kInterdisciplinarity:
      if (!ry.interdisciplinarity) return std::nullopt;
      return *ry.interdisciplinarity / *base;
  }
  return std::nullopt;
}

std::optional<double> normalized_indicator(const Corpus& corpus, ResearcherIndex r, Year year,
                                           CareerIndicator indicator) {
  return normalized_indicator(corpus, CareerBaselines::compute(corpus), r, year, indicator);
}

std::map<int, int> population_by_pcy(const Corpus& corpus, const Group& group) {
  std::vector<int> counts;
  for (auto r : group.members()) {
    const int length = career_span(corpus, r).length_years();
    if (static_cast<int>(counts.size()) < length) counts.resize(length, 0);
    ++counts[length - 1];
  }
  std::map<int, int> out;
  int running = 0;
  for (int k = static_cast<int>(counts.size()); k >= 1; --k) {
    running += counts[k - 1];
    out[k] = running;
  }
  return out;
}

CareerSeries career_series(const Corpus& corpus, const Group& group, CareerIndicator indicator,
                           const CareerBaselines& baselines, std::string group_label) {
  CareerSeries series;
  series.indicator = std::string(career_indicator_name(indicator));
  series.group = std::move(group_label);
  series.population = population_by_pcy(corpus, group);
  std::map<int, double> sums;
  for (auto r : group.members()) {
    const auto span = career_span(corpus, r);
    for (int k = 1; k <= span.length_years(); ++k) {
      if (auto v = normalized_indicator(corpus, baselines, r, span.calendar_year(k), indicator)) {
        sums[k] += *v;
        ++series.contributors[k];
      }
    }
  }
  for (const auto& [k, sum] : sums) series.values[k] = sum / series.contributors[k];
  return series;
}

std::optional<CareerSeries> subgroup_career_series(const Corpus& corpus, ProjectKind kind,
                                                   CareerIndicator indicator,
                                                   const CareerBaselines& baselines) {
  const auto selector = GroupSelector::pis_by_kind({kind});
  const auto group = Group::resolve(corpus, selector);
  if (group.empty()) return std::nullopt;
  return career_series(corpus, group, indicator, baselines, selector.label());
}

std::optional<double> mean_career_length(const Corpus& corpus, const Group& group) {
  return filtered_career_length(corpus, group, 0, std::nullopt);
}

std::optional<double> filtered_career_length(const Corpus& corpus, const Group& group,
                                             int drop_short,
                                             std::optional<Year> require_stopped_by) {
  if (drop_short < 0) throw UsageError("drop_short must be >= 0");
  long total = 0;
  long count = 0;
  for (auto r : group.members()) {
    const auto span = career_span(corpus, r);
    if (span.length_years() <= drop_short) continue;
    if (require_stopped_by && span.end_year > *require_stopped_by) continue;
    total += span.length_years();
    ++count;
  }
  if (count == 0) return std::nullopt;
  return static_cast<double>(total) / static_cast<double>(count);
}

PostdocFollowup postdoc_followup_rate(const Corpus& corpus, Year postdoc_before, Year horizon) {
  if (postdoc_before > horizon) throw UsageError("postdoc_before must not exceed horizon");
  PostdocFollowup out;
  const auto projects = corpus.projects();
  for (auto r : corpus.pis()) {
    std::optional<std::size_t> defining;
    for (auto j : corpus.projects_led_by(r)) {
      const auto& p = projects[j];
      if (p.kind != ProjectKind::kPostdoc || !p.postdoc_subgroup) continue;
      if (!defining || p.start_year < projects[*defining].start_year) defining = j;
    }
    if (!defining || projects[*defining].start_year >= postdoc_before) continue;
    ++out.cohort;
    const Year from = projects[*defining].start_year;
    const bool followed = std::any_of(
        corpus.projects_led_by(r).begin(), corpus.projects_led_by(r).end(), [&](std::size_t j) {
          return j != *defining && projects[j].start_year >= from && projects[j].start_year <= horizon;
        });
    if (!followed) ++out.without_followup;
  }
  if (out.cohort > 0) out.rate = static_cast<double>(out.without_followup) / out.cohort;
  return out;
}

}  // namespace pistat
