#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pistat/config.hpp"
#include "pistat/types.hpp"

namespace pistat {

enum class Severity { kWarning, kRejected };

struct Diagnostic {
  Severity severity = Severity::kWarning;
  std::string source;  // file name, or "" for records built in memory
  std::size_t line = 0;
  std::string record_id;
  std::string message;
};

std::string to_string(const Diagnostic& d);

// Unresolved input records as they appear in the three corpus files.

struct ResearcherRecord {
  std::string id;
  std::string main_field;
  std::size_t line = 0;
};

struct PublicationRecord {
  std::string id;
  Year year = 0;
  std::string type_code;
  int total_author_count = 0;
  std::vector<std::string> registered_author_ids;
  std::size_t line = 0;
};

struct ProjectRecord {
  std::string id;
  std::string kind_code;
  Year start_year = 0;
  Year end_year = 0;
  std::optional<std::string> pi_id;
  std::size_t line = 0;
};

struct RawCorpus {
  std::vector<ResearcherRecord> researchers;
  std::vector<PublicationRecord> publications;
  std::vector<ProjectRecord> projects;
  // Used only to label diagnostics.
  std::string researcher_source, publication_source, project_source;
};

/// Reads the three header-prefixed, comma-separated record files.
/// Throws ParseError with file/line on malformed rows and IoError when a file
/// cannot be opened.
RawCorpus read_records(const std::filesystem::path& researcher_path,
                       const std::filesystem::path& publication_path,
                       const std::filesystem::path& project_path);

/// Derived sets every analysis consumes. Rebuilding from the same records
/// yields an identical value.
struct CorpusIndex {
  std::vector<ResearcherIndex> active;  // A, sorted
  std::vector<ResearcherIndex> pis;     // Π, sorted, subset of A
  std::vector<std::uint8_t> is_active;  // by ResearcherIndex
  std::vector<std::uint8_t> is_pi;
  // A_y and P_y for y in year_bounds, offset by year_bounds.first.
  std::vector<std::vector<ResearcherIndex>> productive_by_year;
  std::vector<std::vector<PublicationIndex>> publications_by_year;
  // Scientific in-bounds publications per researcher, ordered by (year, index).
  std::vector<std::vector<PublicationIndex>> publications_by_researcher;
  // Earliest start over all projects led, per researcher.
  std::vector<std::optional<Year>> first_grant_year;
  std::vector<std::vector<std::size_t>> projects_by_pi;
  // PIs that have no scientific publication and are therefore left out of Π.
  std::vector<ResearcherIndex> unpublished_pis;

  friend bool operator==(const CorpusIndex&, const CorpusIndex&) = default;
};

struct PostdocReclassification {
  std::vector<Project> projects;
  std::vector<Diagnostic> diagnostics;
};

/// Postdoc projects started before `cutoff_year` become basic projects.
/// Remaining postdoc projects get postdoc_subgroup set when the PI's first
/// publication is at most `window_years` before the project start.
/// Idempotent.
PostdocReclassification reclassify_postdocs(std::vector<Project> projects,
                                            std::span<const Researcher> researchers,
                                            Year cutoff_year, int window_years);

class Corpus {
 public:
  struct BuildResult;

  /// Validates and indexes raw records. Record-level problems reject the
  /// record and are reported in diagnostics; dangling researcher references
  /// and an empty researcher table throw ValidationError.
  static BuildResult build(RawCorpus raw, const CorpusConfig& config);

  static CorpusIndex build_index(std::span<const Researcher> researchers,
                                 std::span<const Publication> publications,
                                 std::span<const Project> projects,
                                 const CorpusConfig& config);

  const CorpusConfig& config() const { return config_; }
  YearRange year_bounds() const { return config_.year_bounds; }
  std::size_t field_count() const { return config_.fields.size(); }

  std::span<const Researcher> researchers() const { return researchers_; }
  std::span<const Publication> publications() const { return publications_; }
  std::span<const Project> projects() const { return projects_; }
  const Researcher& researcher(ResearcherIndex r) const { return researchers_[r]; }
  const Publication& publication(PublicationIndex p) const { return publications_[p]; }
  std::optional<ResearcherIndex> find_researcher(std::string_view id) const;

  const CorpusIndex& index() const { return index_; }

  std::span<const ResearcherIndex> active() const { return index_.active; }
  std::span<const ResearcherIndex> pis() const { return index_.pis; }
  bool is_active(ResearcherIndex r) const { return index_.is_active[r] != 0; }
  bool is_pi(ResearcherIndex r) const { return index_.is_pi[r] != 0; }

  /// A_y: researchers with at least one scientific publication in `y`.
  std::span<const ResearcherIndex> productive(Year y) const;
  /// P_y: scientific publications of year `y`.
  std::span<const PublicationIndex> publications_in(Year y) const;
  /// P_y(r).
  std::span<const PublicationIndex> publications_of(ResearcherIndex r, Year y) const;
  std::span<const PublicationIndex> publications_of(ResearcherIndex r) const {
    return index_.publications_by_researcher[r];
  }

  std::optional<Year> first_grant_year(ResearcherIndex r) const {
    return index_.first_grant_year[r];
  }
  std::span<const std::size_t> projects_led_by(ResearcherIndex r) const {
    return index_.projects_by_pi[r];
  }
  /// Projects whose PI is known and belongs to Π.
  std::size_t projects_with_published_pi() const;

 private:
  Corpus() = default;

  CorpusConfig config_;
  std::vector<Researcher> researchers_;
  std::vector<Publication> publications_;
  std::vector<Project> projects_;
  std::unordered_map<std::string, ResearcherIndex> by_id_;
  CorpusIndex index_;
};

struct Corpus::BuildResult {
  Corpus corpus;
  std::vector<Diagnostic> diagnostics;
  std::size_t rejected = 0;
};

/// read_records followed by Corpus::build.
Corpus::BuildResult load_corpus(const std::filesystem::path& researcher_path,
                                const std::filesystem::path& publication_path,
                                const std::filesystem::path& project_path,
                                const CorpusConfig& config);

/// Projects with start_year <= year <= end_year, optionally restricted to
/// the given kinds. Returned as indices into corpus.projects(), ascending.
std::vector<std::size_t> active_projects(const Corpus& corpus, Year year,
                                         const std::optional<std::set<ProjectKind>>& kinds = {});

struct ProjectCounts {
  int new_projects = 0;
  int active_projects = 0;
  int new_pis = 0;
  int active_pis = 0;
  friend bool operator==(const ProjectCounts&, const ProjectCounts&) = default;
};

/// Per-year project and PI counts over the corpus year bounds. PI columns
/// only count members of Π.
std::map<Year, ProjectCounts> project_counts_series(const Corpus& corpus);

/// Active-project counts per year broken down by kind.
std::map<Year, std::map<ProjectKind, int>> active_projects_by_kind(const Corpus& corpus);

}  // namespace pistat
