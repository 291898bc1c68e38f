#include "synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

namespace pistat::oracle {

namespace {

std::string padded(char prefix, int n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c%03d", prefix, n);
  return buf;
}

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

Synthetic& Synthetic::researcher(std::string id, std::string field) {
  researchers.push_back({std::move(id), std::move(field), researchers.size() + 2});
  return *this;
}

Synthetic& Synthetic::publication(std::string id, Year year, int total, std::vector<std::string> authors,
                                  std::string type) {
  publications.push_back({std::move(id), year, std::move(type), total, std::move(authors), publications.size() + 2});
  return *this;
}

Synthetic& Synthetic::project(std::string id, std::string kind, Year start, Year end,
                              std::optional<std::string> pi) {
  projects.push_back({std::move(id), std::move(kind), start, end, std::move(pi), projects.size() + 2});
  return *this;
}

RawCorpus Synthetic::raw() const {
  RawCorpus raw;
  raw.researchers = researchers;
  raw.publications = publications;
  raw.projects = projects;
  raw.researcher_source = "researchers";
  raw.publication_source = "publications";
  raw.project_source = "projects";
  return raw;
}

Corpus Synthetic::corpus() const {
  auto result = Corpus::build(raw(), config);
  if (result.rejected != 0) throw std::logic_error("synthetic corpus had rejected records");
  return std::move(result.corpus);
}

void Synthetic::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  std::ofstream r(dir / "researchers.csv");
  r << "id,main_field\n";
  for (const auto& x : researchers) r << x.id << ',' << x.main_field << '\n';
  std::ofstream p(dir / "publications.csv");
  p << "id,year,type_code,total_author_count,registered_author_ids\n";
  for (const auto& x : publications) {
    p << x.id << ',' << x.year << ',' << x.type_code << ',' << x.total_author_count << ','
      << join(x.registered_author_ids, ';') << '\n';
  }
  std::ofstream j(dir / "projects.csv");
  j << "id,kind_code,start_year,end_year,pi_id\n";
  for (const auto& x : projects) {
    j << x.id << ',' << x.kind_code << ',' << x.start_year << ',' << x.end_year << ','
      << x.pi_id.value_or("") << '\n';
  }
}

Synthetic generate(std::uint64_t seed, const SyntheticLimits& limits) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  Synthetic s;
  const int first = uniform(1990, 2000);
  const int last = uniform(std::max(first + 4, 2008), 2016);
  s.config.year_bounds = {first, last};
  s.config.conor_year = uniform(first, last);
  s.config.postdoc_cutoff_year = uniform(first, last);
  s.config.postdoc_window_years = uniform(0, 10);
  const int field_count = uniform(2, 6);
  s.config.fields.clear();
  for (int f = 1; f <= field_count; ++f) s.config.fields.push_back(std::to_string(f));

  const int n_researchers = uniform(1, limits.max_researchers);
  for (int i = 0; i < n_researchers; ++i) {
    s.researchers.push_back({padded('r', i), s.config.fields[uniform(0, field_count - 1)], 0});
  }

  // A few prolific researchers make the co-authorship graph denser.
  const int hubs = std::max(1, n_researchers / 8);
  const std::vector<std::string> non_scientific = {"1.04", "1.25", "2.10", "3.15"};
  const int n_publications = uniform(0, limits.max_publications);
  for (int i = 0; i < n_publications; ++i) {
    PublicationRecord pub;
    pub.id = padded('p', i);
    pub.year = uniform(first, last);
    pub.type_code = chance(0.85)
                        ? s.config.scientific_types[uniform(0, static_cast<int>(s.config.scientific_types.size()) - 1)]
                        : non_scientific[uniform(0, 3)];
    const int registered = chance(0.05) ? 0 : uniform(1, std::min(5, n_researchers));
    std::vector<int> authors;
    while (static_cast<int>(authors.size()) < registered) {
      const int a = chance(0.3) ? uniform(0, hubs - 1) : uniform(0, n_researchers - 1);
      if (std::find(authors.begin(), authors.end(), a) == authors.end()) authors.push_back(a);
    }
    for (int a : authors) pub.registered_author_ids.push_back(padded('r', a));
    const int extra = chance(0.4) ? uniform(0, 4) : 0;
    pub.total_author_count = std::max(1, registered + extra);
    s.publications.push_back(std::move(pub));
  }

  const int n_projects = uniform(0, limits.max_projects);
  for (int i = 0; i < n_projects; ++i) {
    ProjectRecord project;
    project.id = padded('j', i);
    project.kind_code = std::string(kind_code(kAllProjectKinds[uniform(0, 7)]));
    if (chance(0.3)) project.kind_code = "postdoc";
    project.start_year = uniform(first, last);
    project.end_year = std::min(last, project.start_year + uniform(0, 5));
    if (!chance(0.1)) {
      const int pi = chance(0.5) ? uniform(0, hubs - 1) : uniform(0, n_researchers - 1);
      project.pi_id = padded('r', pi);
    }
    s.projects.push_back(std::move(project));
  }
  return s;
}

}  // namespace pistat::oracle
