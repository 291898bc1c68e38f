#include "pistat/indicators.hpp"

#include <algorithm>

#include "pistat/error.hpp"

namespace pistat {

GroupSelector GroupSelector::parse(std::string_view text) {
  text = trim(text);
  if (text == "all" || text == "all_active") return all_active();
  if (text == "pis") return pis();
  if (text.starts_with("pis:")) {
    std::set<ProjectKind> kinds;
    for (const auto& code : split_list(text.substr(4), '+')) {
      auto kind = parse_kind(code);
      if (!kind) throw UsageError("unknown project kind '" + code + "' in group '" + std::string(text) + "'");
      kinds.insert(*kind);
    }
    if (kinds.empty()) throw UsageError("group '" + std::string(text) + "' names no project kind");
    return pis_by_kind(std::move(kinds));
  }
  if (text.starts_with("ids:")) {
    auto ids = split_list(text.substr(4), ';');
    std::erase_if(ids, [](const std::string& s) { return s.empty(); });
    if (ids.empty()) throw UsageError("group '" + std::string(text) + "' lists no researcher");
    return explicit_ids(std::move(ids));
  }
  throw UsageError("unknown group '" + std::string(text) + "'");
}

std::string GroupSelector::label() const {
  switch (mode) {
    case Mode::kAllActive: return "all";
    case Mode::kPis: return "pis";
    case Mode::kPisByKind: {
      std::string out = "pis:";
      bool first = true;
      for (auto kind : kinds) {
        if (!first) out += '+';
        out += kind_code(kind);
        first = false;
      }
      return out;
    }
    case Mode::kExplicit: {
      std::string out = "ids:";
      for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? ";" : "") + ids[i];
      return out;
    }
  }
  return "?";
}

Group Group::resolve(const Corpus& corpus, const GroupSelector& selector) {
  Group g;
  g.mask_.assign(corpus.researchers().size(), 0);
  switch (selector.mode) {
    case GroupSelector::Mode::kAllActive:
      for (auto r : corpus.active()) g.mask_[r] = 1;
      break;
    case GroupSelector::Mode::kPis:
      for (auto r : corpus.pis()) g.mask_[r] = 1;
      break;
    case GroupSelector::Mode::kPisByKind:
      for (auto r : corpus.pis()) {
        for (auto j : corpus.projects_led_by(r)) {
          const auto& project = corpus.projects()[j];
          if (!selector.kinds.contains(project.kind)) continue;
          if (project.kind == ProjectKind::kPostdoc && !project.postdoc_subgroup) continue;
          g.mask_[r] = 1;
          break;
        }
      }
      break;
    case GroupSelector::Mode::kExplicit: {
      std::vector<std::string> unknown;
      for (const auto& id : selector.ids) {
        auto r = corpus.find_researcher(id);
        if (!r) {
          unknown.push_back(id);
          continue;
        }
        if (corpus.is_active(*r)) g.mask_[*r] = 1;
      }
      if (!unknown.empty()) {
        std::string what = "unknown researcher ids in group:";
        for (const auto& id : unknown) what += " " + id;
        throw UsageError(what);
      }
      break;
    }
  }
  for (ResearcherIndex r = 0; r < g.mask_.size(); ++r) {
    if (g.mask_[r]) g.members_.push_back(r);
  }
  return g;
}

std::string_view indicator_name(Indicator indicator) {
  switch (indicator) {
    case Indicator::kProductivity: return "productivity";
    case Indicator::kFractionalProductivity: return "fractional_productivity";
    case Indicator::kCollaborators: return "collaborators";
    case Indicator::kRegisteredCollaborators: return "registered_collaborators";
    case Indicator::kSoloPublications: return "solo_publications";
    case Indicator::kPublicationInternationality: return "publication_internationality";
    case Indicator::kResearcherInternationality: return "researcher_internationality";
    case Indicator::kPublicationInterdisciplinarity: return "publication_interdisciplinarity";
    case Indicator::kResearcherInterdisciplinarity: return "researcher_interdisciplinarity";
  }
  return "unknown";
}

std::optional<Indicator> parse_indicator(std::string_view name) {
  for (auto indicator : kAllIndicators) {
    if (indicator_name(indicator) == name) return indicator;
  }
  return std::nullopt;
}

bool is_publication_level(Indicator indicator) {
  return indicator == Indicator::kPublicationInternationality ||
         indicator == Indicator::kPublicationInterdisciplinarity;
}

ResearcherYear researcher_year(const Corpus& corpus, ResearcherIndex r, Year year) {
  ResearcherYear out;
  std::vector<ResearcherIndex> coauthors;
  for (auto p : corpus.publications_of(r, year)) {
    const auto& pub = corpus.publication(p);
    ++out.publications;
    out.fractional += 1.0 / pub.total_author_count;
    if (pub.total_author_count == 1) ++out.solo;
    out.unregistered_slots +=
        pub.total_author_count - static_cast<long>(pub.registered_authors.size());
    for (auto other : pub.registered_authors) {
      if (other != r) coauthors.push_back(other);
    }
  }
  std::sort(coauthors.begin(), coauthors.end());
  coauthors.erase(std::unique(coauthors.begin(), coauthors.end()), coauthors.end());
  out.registered_collaborators = static_cast<int>(coauthors.size());

  if (year >= corpus.config().conor_year && out.all_collaborators() > 0) {
    out.internationality =
        static_cast<double>(out.unregistered_slots) / static_cast<double>(out.all_collaborators());
  }
  if (!coauthors.empty()) {
    const auto own = corpus.researcher(r).field_index;
    std::vector<std::uint8_t> seen(corpus.field_count(), 0);
    for (auto other : coauthors) {
      const auto field = corpus.researcher(other).field_index;
      if (field != own && !seen[field]) {
        seen[field] = 1;
        ++out.foreign_fields;
      }
    }
    out.interdisciplinarity =
        static_cast<double>(out.foreign_fields) / static_cast<double>(corpus.field_count() - 1);
  }
  return out;
}

double publication_internationality(const Publication& pub) {
  if (pub.total_author_count < 1) throw ValidationError("publication " + pub.id + " has no authors");
  return static_cast<double>(pub.total_author_count -
                             static_cast<int>(pub.registered_authors.size())) /
         pub.total_author_count;
}

std::optional<double> publication_interdisciplinarity(const Corpus& corpus, const Publication& pub) {
  if (pub.registered_authors.empty()) return std::nullopt;
  std::vector<std::uint8_t> seen(corpus.field_count(), 0);
  int distinct = 0;
  for (auto r : pub.registered_authors) {
    const auto field = corpus.researcher(r).field_index;
    if (!seen[field]) {
      seen[field] = 1;
      ++distinct;
    }
  }
  return static_cast<double>(distinct - 1) / static_cast<double>(corpus.field_count() - 1);
}

std::optional<double> researcher_internationality(const Corpus& corpus, ResearcherIndex r, Year year) {
  if (year < corpus.config().conor_year) {
    throw EraError("researcher internationality needs complete author lists (year >= " +
                   std::to_string(corpus.config().conor_year) + "), got " + std::to_string(year));
  }
  return researcher_year(corpus, r, year).internationality;
}

std::optional<double> researcher_interdisciplinarity(const Corpus& corpus, ResearcherIndex r,
                                                     Year year) {
  return researcher_year(corpus, r, year).interdisciplinarity;
}

namespace {

std::optional<double> value_of(const ResearcherYear& ry, Indicator indicator) {
  switch (indicator) {
    case Indicator::kProductivity: return ry.publications;
    case Indicator::kFractionalProductivity: return ry.fractional;
    case Indicator::kCollaborators: return static_cast<double>(ry.all_collaborators());
    case Indicator::kRegisteredCollaborators: return ry.registered_collaborators;
    case Indicator::kSoloPublications: return ry.solo;
    case Indicator::kResearcherInternationality: return ry.internationality;
    case Indicator::kResearcherInterdisciplinarity: return ry.interdisciplinarity;
    default: return std::nullopt;
  }
}

std::optional<double> publication_value(const Corpus& corpus, const Publication& pub,
                                        Indicator indicator) {
  if (indicator == Indicator::kPublicationInternationality) return publication_internationality(pub);
  return publication_interdisciplinarity(corpus, pub);
}

struct Mean {
  double sum = 0.0;
  int count = 0;
  void add(double v) {
    sum += v;
    ++count;
  }
  std::optional<double> value() const {
    if (count == 0) return std::nullopt;
    return sum / count;
  }
};

Mean group_mean(const Corpus& corpus, const Group& group, Year year, Indicator indicator) {
  Mean mean;
  if (is_publication_level(indicator)) {
    std::vector<PublicationIndex> pubs;
    for (auto r : corpus.productive(year)) {
      if (!group.contains(r)) continue;
      auto list = corpus.publications_of(r, year);
      pubs.insert(pubs.end(), list.begin(), list.end());
    }
    std::sort(pubs.begin(), pubs.end());
    pubs.erase(std::unique(pubs.begin(), pubs.end()), pubs.end());
    for (auto p : pubs) {
      if (auto v = publication_value(corpus, corpus.publication(p), indicator)) mean.add(*v);
    }
    return mean;
  }
  if (indicator == Indicator::kResearcherInternationality && year < corpus.config().conor_year) {
    return mean;
  }
  for (auto r : corpus.productive(year)) {
    if (!group.contains(r)) continue;
    if (auto v = value_of(researcher_year(corpus, r, year), indicator)) mean.add(*v);
  }
  return mean;
}

}  // namespace

std::optional<double> researcher_value(const Corpus& corpus, ResearcherIndex r, Year year,
                                       Indicator indicator) {
  if (is_publication_level(indicator)) {
    Mean mean;
    for (auto p : corpus.publications_of(r, year)) {
      if (auto v = publication_value(corpus, corpus.publication(p), indicator)) mean.add(*v);
    }
    return mean.value();
  }
  return value_of(researcher_year(corpus, r, year), indicator);
}

std::optional<double> productivity(const Corpus& corpus, const Group& group, Year year) {
  return group_mean(corpus, group, year, Indicator::kProductivity).value();
}

std::optional<double> fractional_productivity(const Corpus& corpus, const Group& group, Year year) {
  return group_mean(corpus, group, year, Indicator::kFractionalProductivity).value();
}

std::optional<double> collaborators(const Corpus& corpus, const Group& group, Year year,
                                    bool registered_only) {
  return group_mean(corpus, group, year,
                    registered_only ? Indicator::kRegisteredCollaborators : Indicator::kCollaborators)
      .value();
}

std::optional<double> solo_publications(const Corpus& corpus, const Group& group, Year year) {
  return group_mean(corpus, group, year, Indicator::kSoloPublications).value();
}

YearSeries indicator_series(const Corpus& corpus, const Group& group, Indicator indicator,
                            YearRange years) {
  YearSeries series;
  series.indicator = std::string(indicator_name(indicator));
  for (Year y = years.first; y <= years.last; ++y) {
    const auto mean = group_mean(corpus, group, y, indicator);
    if (auto v = mean.value()) {
      series.values[y] = *v;
      series.population[y] = mean.count;
    }
  }
  return series;
}

}  // namespace pistat
