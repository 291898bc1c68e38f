#include "pistat/types.hpp"

namespace pistat {

std::string_view kind_code(ProjectKind kind) {
  switch (kind) {
    case ProjectKind::kProgramme: return "programme";
    case ProjectKind::kBasic: return "basic";
    case ProjectKind::kApplicative: return "applicative";
    case ProjectKind::kPostdoc: return "postdoc";
    case ProjectKind::kInfrastructure: return "infrastructure";
    case ProjectKind::kTargeted: return "targeted";
    case ProjectKind::kEuroComplementary: return "euro_complementary";
    case ProjectKind::kEuroLeadAgency: return "euro_lead_agency";
  }
  return "unknown";
}

std::optional<ProjectKind> parse_kind(std::string_view code) {
  for (auto kind : kAllProjectKinds) {
    if (kind_code(kind) == code) return kind;
  }
  return std::nullopt;
}

}  // namespace pistat
