#include "pistat/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "pistat/error.hpp"

namespace pistat {

std::string to_string(const Diagnostic& d) {
  std::string out = d.severity == Severity::kRejected ? "rejected" : "warning";
  if (!d.source.empty()) {
    out += " " + d.source;
    if (d.line > 0) out += ":" + std::to_string(d.line);
  }
  if (!d.record_id.empty()) out += " [" + d.record_id + "]";
  out += ": " + d.message;
  return out;
}

namespace {

// Splits one comma-separated line; fields may be double-quoted with "" as
// an escaped quote. Returns false on an unterminated quote.
bool split_csv_line(std::string_view line, std::vector<std::string>& fields) {
  fields.clear();
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) return false;
  fields.emplace_back(trim(current));
  return true;
}

class RecordFile {
 public:
  RecordFile(const std::filesystem::path& path, std::vector<std::string_view> header)
      : name_(path.string()), in_(path), header_(std::move(header)) {
    if (!in_) throw IoError(name_, "cannot open record file");
    std::string line;
    if (!next_line(line)) throw ParseError(name_, 1, "missing header line");
    if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    std::vector<std::string> fields;
    if (!split_csv_line(line, fields) || fields.size() != header_.size() ||
        !std::equal(fields.begin(), fields.end(), header_.begin())) {
      std::string expected;
      for (auto h : header_) expected += (expected.empty() ? "" : ",") + std::string(h);
      throw ParseError(name_, line_no_, "header must be '" + expected + "'");
    }
  }

  // Next non-blank data row, already split and checked for arity.
  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (next_line(line)) {
      if (trim(line).empty()) continue;
      if (!split_csv_line(line, fields)) fail("unterminated quoted field");
      if (fields.size() != header_.size()) {
        fail("expected " + std::to_string(header_.size()) + " fields, found " +
             std::to_string(fields.size()));
      }
      if (fields[0].find_first_of(" \t") != std::string::npos) {
        fail("identifier '" + fields[0] + "' contains whitespace");
      }
      return true;
    }
    return false;
  }

  int int_field(const std::string& text, std::string_view what) const {
    auto v = parse_int(text);
    if (!v) fail(std::string(what) + " is not an integer: '" + text + "'");
    return *v;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(name_, line_no_, what); }

  std::size_t line() const { return line_no_; }
  const std::string& name() const { return name_; }

 private:
  bool next_line(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  std::string name_;
  std::ifstream in_;
  std::vector<std::string_view> header_;
  std::size_t line_no_ = 0;
};

}  // namespace

RawCorpus read_records(const std::filesystem::path& researcher_path,
                       const std::filesystem::path& publication_path,
                       const std::filesystem::path& project_path) {
  RawCorpus raw;
  std::vector<std::string> f;
  {
    RecordFile file(researcher_path, {"id", "main_field"});
    raw.researcher_source = file.name();
    while (file.next(f)) {
      if (f[0].empty()) file.fail("empty researcher id");
      raw.researchers.push_back({f[0], f[1], file.line()});
    }
  }
  {
    RecordFile file(publication_path,
                    {"id", "year", "type_code", "total_author_count", "registered_author_ids"});
    raw.publication_source = file.name();
    while (file.next(f)) {
      if (f[0].empty()) file.fail("empty publication id");
      PublicationRecord rec;
      rec.id = f[0];
      rec.year = file.int_field(f[1], "year");
      rec.type_code = f[2];
      rec.total_author_count = file.int_field(f[3], "total_author_count");
      rec.registered_author_ids = split_list(f[4], ';');
      std::erase_if(rec.registered_author_ids, [](const std::string& s) { return s.empty(); });
      rec.line = file.line();
      raw.publications.push_back(std::move(rec));
    }
  }
  {
    RecordFile file(project_path, {"id", "kind_code", "start_year", "end_year", "pi_id"});
    raw.project_source = file.name();
    while (file.next(f)) {
      if (f[0].empty()) file.fail("empty project id");
      ProjectRecord rec;
      rec.id = f[0];
      rec.kind_code = f[1];
      rec.start_year = file.int_field(f[2], "start_year");
      rec.end_year = file.int_field(f[3], "end_year");
      if (!f[4].empty()) rec.pi_id = f[4];
      rec.line = file.line();
      raw.projects.push_back(std::move(rec));
    }
  }
  return raw;
}

PostdocReclassification reclassify_postdocs(std::vector<Project> projects,
                                            std::span<const Researcher> researchers,
                                            Year cutoff_year, int window_years) {
  PostdocReclassification out;
  for (auto& project : projects) {
    if (project.kind != ProjectKind::kPostdoc) {
      project.postdoc_subgroup = false;
      continue;
    }
    if (!project.pi) {
      project.postdoc_subgroup = false;
      out.diagnostics.push_back({Severity::kWarning, "", 0, project.id,
                                 "postdoc project without PI; kind left unchanged"});
      continue;
    }
    if (project.start_year < cutoff_year) {
      project.kind = ProjectKind::kBasic;
      project.postdoc_subgroup = false;
      continue;
    }
    const auto& first = researchers[*project.pi].first_pub_year;
    project.postdoc_subgroup = first && project.start_year - *first <= window_years;
  }
  out.projects = std::move(projects);
  return out;
}

CorpusIndex Corpus::build_index(std::span<const Researcher> researchers,
                                std::span<const Publication> publications,
                                std::span<const Project> projects, const CorpusConfig& config) {
  const auto n = researchers.size();
  const auto bounds = config.year_bounds;
  CorpusIndex idx;
  idx.is_active.assign(n, 0);
  idx.is_pi.assign(n, 0);
  idx.productive_by_year.resize(bounds.size());
  idx.publications_by_year.resize(bounds.size());
  idx.publications_by_researcher.resize(n);
  idx.first_grant_year.resize(n);
  idx.projects_by_pi.resize(n);

  for (PublicationIndex p = 0; p < publications.size(); ++p) {
    const auto& pub = publications[p];
    if (!pub.is_scientific || !bounds.contains(pub.year)) continue;
    idx.publications_by_year[pub.year - bounds.first].push_back(p);
    for (auto r : pub.registered_authors) idx.publications_by_researcher[r].push_back(p);
  }
  for (ResearcherIndex r = 0; r < n; ++r) {
    auto& list = idx.publications_by_researcher[r];
    std::stable_sort(list.begin(), list.end(), [&](PublicationIndex a, PublicationIndex b) {
      return publications[a].year < publications[b].year;
    });
    if (list.empty()) continue;
    idx.is_active[r] = 1;
    idx.active.push_back(r);
    Year last_year = bounds.first - 1;
    for (auto p : list) {
      const Year y = publications[p].year;
      if (y != last_year) idx.productive_by_year[y - bounds.first].push_back(r);
      last_year = y;
    }
  }

  for (std::size_t j = 0; j < projects.size(); ++j) {
    const auto& project = projects[j];
    if (!project.pi) continue;
    const auto r = *project.pi;
    idx.projects_by_pi[r].push_back(j);
    auto& first = idx.first_grant_year[r];
    if (!first || project.start_year < *first) first = project.start_year;
  }
  for (ResearcherIndex r = 0; r < n; ++r) {
    if (idx.projects_by_pi[r].empty()) continue;
    if (idx.is_active[r]) {
      idx.is_pi[r] = 1;
      idx.pis.push_back(r);
    } else {
      idx.unpublished_pis.push_back(r);
    }
  }
  return idx;
}

Corpus::BuildResult Corpus::build(RawCorpus raw, const CorpusConfig& config) {
  config.validate();
  BuildResult result{Corpus{}, {}, 0};
  Corpus& c = result.corpus;
  c.config_ = config;
  auto& diags = result.diagnostics;
  auto reject = [&](const std::string& source, std::size_t line, const std::string& id,
                    std::string message) {
    diags.push_back({Severity::kRejected, source, line, id, std::move(message)});
    ++result.rejected;
  };

  std::unordered_map<std::string_view, std::size_t> field_of;
  for (std::size_t i = 0; i < config.fields.size(); ++i) field_of[config.fields[i]] = i;

  for (auto& rec : raw.researchers) {
    auto field = field_of.find(rec.main_field);
    if (field == field_of.end()) {
      reject(raw.researcher_source, rec.line, rec.id,
             "main_field '" + rec.main_field + "' not in taxonomy");
      continue;
    }
    if (c.by_id_.contains(rec.id)) {
      reject(raw.researcher_source, rec.line, rec.id, "duplicate researcher id");
      continue;
    }
    c.by_id_.emplace(rec.id, static_cast<ResearcherIndex>(c.researchers_.size()));
    c.researchers_.push_back({rec.id, rec.main_field, field->second, std::nullopt, std::nullopt});
  }
  if (c.researchers_.empty()) throw ValidationError("researcher table is empty after validation");

  std::set<std::string> dangling;
  const std::unordered_set<std::string_view> scientific(config.scientific_types.begin(),
                                                         config.scientific_types.end());
  std::unordered_set<std::string> seen;
  for (auto& rec : raw.publications) {
    if (!seen.insert(rec.id).second) {
      reject(raw.publication_source, rec.line, rec.id, "duplicate publication id");
      continue;
    }
    Publication pub;
    bool unresolved = false;
    for (const auto& author : rec.registered_author_ids) {
      auto it = c.by_id_.find(author);
      if (it == c.by_id_.end()) {
        dangling.insert(author);
        unresolved = true;
      } else {
        pub.registered_authors.push_back(it->second);
      }
    }
    if (unresolved) continue;
    std::sort(pub.registered_authors.begin(), pub.registered_authors.end());
    const auto before = pub.registered_authors.size();
    pub.registered_authors.erase(
        std::unique(pub.registered_authors.begin(), pub.registered_authors.end()),
        pub.registered_authors.end());
    if (pub.registered_authors.size() != before) {
      diags.push_back({Severity::kWarning, raw.publication_source, rec.line, rec.id,
                       "repeated registered author collapsed"});
    }
    if (!config.year_bounds.contains(rec.year)) {
      reject(raw.publication_source, rec.line, rec.id,
             "year " + std::to_string(rec.year) + " outside corpus bounds");
      continue;
    }
    if (rec.total_author_count < 1) {
      reject(raw.publication_source, rec.line, rec.id, "total_author_count must be positive");
      continue;
    }
    if (static_cast<std::size_t>(rec.total_author_count) < pub.registered_authors.size()) {
      reject(raw.publication_source, rec.line, rec.id,
             "total_author_count " + std::to_string(rec.total_author_count) +
                 " smaller than registered author count " +
                 std::to_string(pub.registered_authors.size()));
      continue;
    }
    pub.id = std::move(rec.id);
    pub.year = rec.year;
    pub.is_scientific = scientific.contains(rec.type_code);
    pub.type_code = std::move(rec.type_code);
    pub.total_author_count = rec.total_author_count;
    c.publications_.push_back(std::move(pub));
  }

  seen.clear();
  std::vector<Project> projects;
  for (auto& rec : raw.projects) {
    std::optional<ResearcherIndex> pi;
    if (rec.pi_id) {
      auto it = c.by_id_.find(*rec.pi_id);
      if (it == c.by_id_.end()) {
        dangling.insert(*rec.pi_id);
        continue;
      }
      pi = it->second;
    }
    if (!seen.insert(rec.id).second) {
      reject(raw.project_source, rec.line, rec.id, "duplicate project id");
      continue;
    }
    auto kind = parse_kind(rec.kind_code);
    if (!kind) {
      reject(raw.project_source, rec.line, rec.id, "unknown project kind '" + rec.kind_code + "'");
      continue;
    }
    if (rec.start_year > rec.end_year) {
      reject(raw.project_source, rec.line, rec.id, "start_year after end_year");
      continue;
    }
    projects.push_back({std::move(rec.id), *kind, rec.start_year, rec.end_year, pi, false});
  }
  if (!dangling.empty()) {
    throw ValidationError("records reference unknown researcher ids",
                          std::vector<std::string>(dangling.begin(), dangling.end()));
  }

  // Career bounds come from scientific output only.
  for (const auto& pub : c.publications_) {
    if (!pub.is_scientific) continue;
    for (auto r : pub.registered_authors) {
      auto& res = c.researchers_[r];
      if (!res.first_pub_year || pub.year < *res.first_pub_year) res.first_pub_year = pub.year;
      if (!res.last_pub_year || pub.year > *res.last_pub_year) res.last_pub_year = pub.year;
    }
  }

  auto reclassified = reclassify_postdocs(std::move(projects), c.researchers_,
                                          config.postdoc_cutoff_year, config.postdoc_window_years);
  for (auto& d : reclassified.diagnostics) {
    d.source = raw.project_source;
    diags.push_back(std::move(d));
  }
  c.projects_ = std::move(reclassified.projects);

  c.index_ = build_index(c.researchers_, c.publications_, c.projects_, c.config_);
  for (auto r : c.index_.unpublished_pis) {
    diags.push_back({Severity::kWarning, raw.project_source, 0, c.researchers_[r].id,
                     "PI has no scientific publication; excluded from PI set"});
  }
  return result;
}

Corpus::BuildResult load_corpus(const std::filesystem::path& researcher_path,
                                const std::filesystem::path& publication_path,
                                const std::filesystem::path& project_path,
                                const CorpusConfig& config) {
  return Corpus::build(read_records(researcher_path, publication_path, project_path), config);
}

std::optional<ResearcherIndex> Corpus::find_researcher(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::span<const ResearcherIndex> Corpus::productive(Year y) const {
  if (!config_.year_bounds.contains(y)) return {};
  return index_.productive_by_year[y - config_.year_bounds.first];
}

std::span<const PublicationIndex> Corpus::publications_in(Year y) const {
  if (!config_.year_bounds.contains(y)) return {};
  return index_.publications_by_year[y - config_.year_bounds.first];
}

std::span<const PublicationIndex> Corpus::publications_of(ResearcherIndex r, Year y) const {
  std::span<const PublicationIndex> all = index_.publications_by_researcher[r];
  auto lo = std::partition_point(all.begin(), all.end(),
                                 [&](PublicationIndex p) { return publications_[p].year < y; });
  auto hi = std::partition_point(lo, all.end(),
                                 [&](PublicationIndex p) { return publications_[p].year <= y; });
  return {lo, hi};
}

std::size_t Corpus::projects_with_published_pi() const {
  return static_cast<std::size_t>(std::count_if(projects_.begin(), projects_.end(), [&](const Project& p) {
    return p.pi && is_pi(*p.pi);
  }));
}

std::vector<std::size_t> active_projects(const Corpus& corpus, Year year,
                                         const std::optional<std::set<ProjectKind>>& kinds) {
  std::vector<std::size_t> out;
  const auto projects = corpus.projects();
  for (std::size_t j = 0; j < projects.size(); ++j) {
    if (!projects[j].active_in(year)) continue;
    if (kinds && !kinds->contains(projects[j].kind)) continue;
    out.push_back(j);
  }
  return out;
}

std::map<Year, ProjectCounts> project_counts_series(const Corpus& corpus) {
  const auto bounds = corpus.year_bounds();
  std::map<Year, ProjectCounts> out;
  std::map<Year, std::set<ResearcherIndex>> active_pis;
  for (Year y = bounds.first; y <= bounds.last; ++y) out[y];

  for (const auto& project : corpus.projects()) {
    if (bounds.contains(project.start_year)) ++out[project.start_year].new_projects;
    const Year lo = std::max(project.start_year, bounds.first);
    const Year hi = std::min(project.end_year, bounds.last);
    for (Year y = lo; y <= hi; ++y) {
      ++out[y].active_projects;
      if (project.pi && corpus.is_pi(*project.pi)) active_pis[y].insert(*project.pi);
    }
  }
  for (auto r : corpus.pis()) {
    auto first = corpus.first_grant_year(r);
    if (first && bounds.contains(*first)) ++out[*first].new_pis;
  }
  for (auto& [y, pis] : active_pis) out[y].active_pis = static_cast<int>(pis.size());
  return out;
}

std::map<Year, std::map<ProjectKind, int>> active_projects_by_kind(const Corpus& corpus) {
  const auto bounds = corpus.year_bounds();
  std::map<Year, std::map<ProjectKind, int>> out;
  for (Year y = bounds.first; y <= bounds.last; ++y) {
    auto& row = out[y];
    for (auto kind : kAllProjectKinds) row[kind] = 0;
  }
  for (const auto& project : corpus.projects()) {
    const Year lo = std::max(project.start_year, bounds.first);
    const Year hi = std::min(project.end_year, bounds.last);
    for (Year y = lo; y <= hi; ++y) ++out[y][project.kind];
  }
  return out;
}

}  // namespace pistat
