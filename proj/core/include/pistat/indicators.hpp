#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pistat/corpus.hpp"

namespace pistat {

/// Which researchers an analysis is about. Resolved groups are always
/// intersected with the active set A.
struct GroupSelector {
  enum class Mode { kAllActive, kPis, kPisByKind, kExplicit };

  Mode mode = Mode::kAllActive;
  std::set<ProjectKind> kinds;    // kPisByKind
  std::vector<std::string> ids;   // kExplicit

  static GroupSelector all_active() { return {}; }
  static GroupSelector pis() { return {Mode::kPis, {}, {}}; }
  static GroupSelector pis_by_kind(std::set<ProjectKind> kinds) {
    return {Mode::kPisByKind, std::move(kinds), {}};
  }
  static GroupSelector explicit_ids(std::vector<std::string> ids) {
    return {Mode::kExplicit, {}, std::move(ids)};
  }

  /// Accepts "all", "pis", "pis:programme+basic", "ids:r1;r2".
  static GroupSelector parse(std::string_view text);
  /// Inverse of parse.
  std::string label() const;
};

class Group {
 public:
  /// Throws UsageError for explicit ids that are not in the researcher table.
  /// PIs of a postdoc kind only count when their project carries the
  /// postdoc subgroup flag.
  static Group resolve(const Corpus& corpus, const GroupSelector& selector);

  bool contains(ResearcherIndex r) const { return mask_[r] != 0; }
  std::span<const ResearcherIndex> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

 private:
  std::vector<std::uint8_t> mask_;
  std::vector<ResearcherIndex> members_;
};

enum class Indicator {
  kProductivity,
  kFractionalProductivity,
  kCollaborators,
  kRegisteredCollaborators,
  kSoloPublications,
  kPublicationInternationality,
  kResearcherInternationality,
  kPublicationInterdisciplinarity,
  kResearcherInterdisciplinarity,
};

inline constexpr std::array<Indicator, 9> kAllIndicators = {
    Indicator::kProductivity,
    Indicator::kFractionalProductivity,
    Indicator::kCollaborators,
    Indicator::kRegisteredCollaborators,
    Indicator::kSoloPublications,
    Indicator::kPublicationInternationality,
    Indicator::kResearcherInternationality,
    Indicator::kPublicationInterdisciplinarity,
    Indicator::kResearcherInterdisciplinarity,
};

std::string_view indicator_name(Indicator indicator);
std::optional<Indicator> parse_indicator(std::string_view name);
/// Publication-level indicators average over publications, not researchers.
bool is_publication_level(Indicator indicator);

/// Everything one researcher did in one calendar year.
struct ResearcherYear {
  int publications = 0;
  double fractional = 0.0;
  int registered_collaborators = 0;  // distinct, self excluded
  long unregistered_slots = 0;       // summed per publication
  int solo = 0;                      // total_author_count == 1
  int foreign_fields = 0;            // distinct co-author fields other than own
  // Unset before the complete-author-list era or without co-authors.
  std::optional<double> internationality;
  // Unset without registered co-authors.
  std::optional<double> interdisciplinarity;

  long all_collaborators() const { return registered_collaborators + unregistered_slots; }
};

ResearcherYear researcher_year(const Corpus& corpus, ResearcherIndex r, Year year);

/// Raw value of a researcher-level indicator (count indicators are 0 in a
/// silent year). Publication-level indicators return the mean over P_y(r).
std::optional<double> researcher_value(const Corpus& corpus, ResearcherIndex r, Year year,
                                       Indicator indicator);

// Group means over the productive members G ∩ A_y. An empty productive
// subset yields nullopt, never 0.
std::optional<double> productivity(const Corpus& corpus, const Group& group, Year year);
std::optional<double> fractional_productivity(const Corpus& corpus, const Group& group, Year year);
std::optional<double> collaborators(const Corpus& corpus, const Group& group, Year year,
                                    bool registered_only);
std::optional<double> solo_publications(const Corpus& corpus, const Group& group, Year year);

/// Share of unregistered authors on the byline.
double publication_internationality(const Publication& pub);

/// Unregistered co-author slots over all co-authors (distinct registered plus
/// unregistered slots). Throws EraError before the corpus conor_year.
std::optional<double> researcher_internationality(const Corpus& corpus, ResearcherIndex r, Year year);

/// Distinct co-author fields other than the researcher's own, over
/// (taxonomy size - 1).
std::optional<double> researcher_interdisciplinarity(const Corpus& corpus, ResearcherIndex r,
                                                     Year year);

/// (distinct author fields - 1) / (taxonomy size - 1); nullopt without
/// registered authors.
std::optional<double> publication_interdisciplinarity(const Corpus& corpus, const Publication& pub);

struct YearSeries {
  std::string indicator;
  std::map<Year, double> values;
  std::map<Year, int> population;  // size of the averaged set per year
};

/// Group mean of `indicator` per year; years without a defined mean are
/// omitted. For publication-level indicators the averaged set is the distinct
/// publications of the group's productive members.
YearSeries indicator_series(const Corpus& corpus, const Group& group, Indicator indicator,
                            YearRange years);

}  // namespace pistat
