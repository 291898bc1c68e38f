#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pistat {

using Year = int;

/// Dense position of a researcher inside Corpus::researchers().
using ResearcherIndex = std::uint32_t;

/// Position of a publication inside Corpus::publications().
using PublicationIndex = std::uint32_t;

struct YearRange {
  Year first = 1970;
  Year last = 2016;

  bool contains(Year y) const { return first <= y && y <= last; }
  int size() const { return last >= first ? last - first + 1 : 0; }
  friend bool operator==(const YearRange&, const YearRange&) = default;
};

enum class ProjectKind : std::uint8_t {
  kProgramme,
  kBasic,
  kApplicative,
  kPostdoc,
  kInfrastructure,
  kTargeted,
  kEuroComplementary,
  kEuroLeadAgency,
};

inline constexpr std::array<ProjectKind, 8> kAllProjectKinds = {
    ProjectKind::kProgramme,      ProjectKind::kBasic,
    ProjectKind::kApplicative,    ProjectKind::kPostdoc,
    ProjectKind::kInfrastructure, ProjectKind::kTargeted,
    ProjectKind::kEuroComplementary, ProjectKind::kEuroLeadAgency,
};

/// Wire code used in project files and on the command line.
std::string_view kind_code(ProjectKind kind);
std::optional<ProjectKind> parse_kind(std::string_view code);

struct Researcher {
  std::string id;
  std::string main_field;
  std::size_t field_index = 0;  // position of main_field in the taxonomy
  std::optional<Year> first_pub_year;
  std::optional<Year> last_pub_year;
};

struct Publication {
  std::string id;
  Year year = 0;
  std::string type_code;
  int total_author_count = 1;
  std::vector<ResearcherIndex> registered_authors;  // sorted, unique
  bool is_scientific = false;
};

struct Project {
  std::string id;
  ProjectKind kind = ProjectKind::kBasic;
  Year start_year = 0;
  Year end_year = 0;
  std::optional<ResearcherIndex> pi;
  // Set only on postdoc projects whose PI started publishing within the
  // configured window before the project start.
  bool postdoc_subgroup = false;

  bool active_in(Year y) const { return start_year <= y && y <= end_year; }
};

}  // namespace pistat
