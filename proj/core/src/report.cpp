#include "pistat/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "pistat/careers.hpp"
#include "pistat/error.hpp"
#include "pistat/stats.hpp"

#ifndef PISTAT_VERSION
#define PISTAT_VERSION "0.0.0"
#endif

namespace pistat {

std::string_view tool_version() { return PISTAT_VERSION; }

Cell cell(std::optional<double> v) {
  if (!v) return std::monostate{};
  return *v;
}

std::string format_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string out(buf);
  if (out == "-0.0000") out = "0.0000";
  return out;
}

namespace {

std::string csv_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_decimal(v); }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string out = "\"";
      for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
      }
      return out + "\"";
    }
  };
  return std::visit(Visitor{}, c);
}

nlohmann::ordered_json json_value(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(double v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

Cell integer(long long v) { return v; }

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_text(row[i]);
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Run configuration

std::vector<YearRange> parse_periods(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    auto first = parse_int(text.substr(0, colon));
    auto rest = text.substr(colon + 1);
    const auto dots = rest.find("..");
    if (!first || dots == std::string_view::npos) {
      throw UsageError("periods: expected 'start:end_first..end_last', got '" + std::string(text) + "'");
    }
    auto lo = parse_int(rest.substr(0, dots));
    auto hi = parse_int(rest.substr(dots + 2));
    if (!lo || !hi || *lo > *hi || *first > *lo) {
      throw UsageError("periods: invalid range '" + std::string(text) + "'");
    }
    return growing_periods(*first, *lo, *hi);
  }
  std::vector<YearRange> out;
  for (const auto& item : split_list(text, ',')) out.push_back(parse_year_range(item));
  if (out.empty()) throw UsageError("periods: empty list");
  return out;
}

namespace {

const std::set<std::string, std::less<>> kRunKeys = {
    "researchers",       "publications",      "projects",          "out",
    "from",              "to",                "group",             "indicators",
    "periods",           "format",            "correlation_years", "career_drop_short",
    "career_stopped_by", "postdoc_before",    "postdoc_horizon",   "ego_min_degree",
    "year_bounds",       "conor_year",        "postdoc_cutoff_year", "postdoc_window_years",
    "scientific_types",  "fields"};

int int_setting(const KeyValueFile& s, std::string_view key, int fallback) {
  auto raw = s.get(key);
  if (!raw) return fallback;
  auto v = parse_int(*raw);
  if (!v) throw UsageError(std::string(key) + ": expected an integer, got '" + *raw + "'");
  return *v;
}

}  // namespace

RunConfig run_config_from(const KeyValueFile& settings) {
  for (const auto& [key, value] : settings.entries()) {
    if (!kRunKeys.contains(key)) throw UsageError("unknown config key '" + key + "'");
  }
  RunConfig c;
  c.settings = settings;
  c.corpus = corpus_config_from(settings);
  c.corpus.validate();
  if (auto v = settings.get("researchers")) c.researchers = *v;
  if (auto v = settings.get("publications")) c.publications = *v;
  if (auto v = settings.get("projects")) c.projects = *v;
  if (auto v = settings.get("out")) c.out_dir = *v;

  const auto from = settings.get("from");
  const auto to = settings.get("to");
  if (from || to) {
    YearRange years = c.corpus.year_bounds;
    years.first = int_setting(settings, "from", years.first);
    years.last = int_setting(settings, "to", years.last);
    if (years.first > years.last || !c.corpus.year_bounds.contains(years.first) ||
        !c.corpus.year_bounds.contains(years.last)) {
      throw UsageError("--from/--to must be an ordered range inside year_bounds");
    }
    c.analysis_years = years;
  }
  if (auto v = settings.get("group")) {
    c.groups.clear();
    for (const auto& item : split_list(*v, ',')) {
      if (!item.empty()) c.groups.push_back(GroupSelector::parse(item));
    }
    if (c.groups.empty()) throw UsageError("group selection is empty");
  }
  if (auto v = settings.get("indicators")) {
    c.indicators.clear();
    for (const auto& item : split_list(*v, ',')) {
      auto ind = parse_indicator(item);
      if (!ind) throw UsageError("unknown indicator '" + item + "'");
      c.indicators.push_back(*ind);
    }
    if (c.indicators.empty()) throw UsageError("indicator selection is empty");
  }
  if (auto v = settings.get("periods")) {
    c.periods = parse_periods(*v);
  } else {
    const auto b = c.corpus.year_bounds;
    c.periods = growing_periods(b.first, std::clamp(1994, b.first, b.last), b.last);
  }
  if (auto v = settings.get("format")) {
    if (*v == "edge_list") {
      c.network_export = ExportFormat::kEdgeList;
    } else if (*v == "graphml") {
      c.network_export = ExportFormat::kGraphMl;
    } else if (*v != "none") {
      throw UsageError("format must be one of none, edge_list, graphml");
    }
  }
  if (auto v = settings.get("correlation_years")) {
    c.correlation_years = parse_year_range(*v);
  } else {
    const auto b = c.corpus.year_bounds;
    c.correlation_years = {std::clamp(1994, b.first, b.last), b.last};
  }
  c.career_drop_short = int_setting(settings, "career_drop_short", c.career_drop_short);
  if (c.career_drop_short < 0) throw UsageError("career_drop_short must be >= 0");
  if (settings.get("career_stopped_by")) {
    c.career_stopped_by = int_setting(settings, "career_stopped_by", 0);
  }
  c.postdoc_before = int_setting(settings, "postdoc_before", c.postdoc_before);
  c.postdoc_horizon = int_setting(settings, "postdoc_horizon", c.postdoc_horizon);
  if (c.postdoc_before > c.postdoc_horizon) throw UsageError("postdoc_before exceeds postdoc_horizon");
  c.ego_min_degree = int_setting(settings, "ego_min_degree", c.ego_min_degree);
  return c;
}

// ---------------------------------------------------------------------------
// Analyses

namespace {

std::vector<std::pair<std::string, Group>> resolve_groups(const Corpus& corpus, const RunConfig& config) {
  if (config.groups.empty()) throw UsageError("group selection is empty");
  std::vector<std::pair<std::string, Group>> out;
  for (const auto& selector : config.groups) {
    out.emplace_back(selector.label(), Group::resolve(corpus, selector));
  }
  return out;
}

}  // namespace

std::vector<Table> indicator_tables(const Corpus& corpus, const RunConfig& config) {
  const auto groups = resolve_groups(corpus, config);
  const auto years = config.years();
  std::vector<Table> tables;
  for (auto indicator : config.indicators) {
    Table t{"indicator_" + std::string(indicator_name(indicator)), {"year", "group", "value", "population"}, {}};
    for (const auto& [label, group] : groups) {
      const auto series = indicator_series(corpus, group, indicator, years);
      for (const auto& [year, value] : series.values) {
        t.rows.push_back({integer(year), label, value, integer(series.population.at(year))});
      }
    }
    tables.push_back(std::move(t));
  }

  Table counts{"project_counts", {"year", "new_projects", "active_projects", "new_pis", "active_pis"}, {}};
  for (const auto& [year, c] : project_counts_series(corpus)) {
    if (!years.contains(year)) continue;
    counts.rows.push_back({integer(year), integer(c.new_projects), integer(c.active_projects),
                           integer(c.new_pis), integer(c.active_pis)});
  }
  tables.push_back(std::move(counts));

  Table by_kind{"active_projects_by_kind", {"year"}, {}};
  for (auto kind : kAllProjectKinds) by_kind.columns.emplace_back(kind_code(kind));
  for (const auto& [year, row] : active_projects_by_kind(corpus)) {
    if (!years.contains(year)) continue;
    std::vector<Cell> cells{integer(year)};
    for (auto kind : kAllProjectKinds) cells.push_back(integer(row.at(kind)));
    by_kind.rows.push_back(std::move(cells));
  }
  tables.push_back(std::move(by_kind));
  return tables;
}

std::vector<Table> career_tables(const Corpus& corpus, const RunConfig& config) {
  const auto groups = resolve_groups(corpus, config);
  const auto baselines = CareerBaselines::compute(corpus);
  std::vector<Table> tables;

  Table population{"career_population", {"pcy", "group", "population"}, {}};
  for (const auto& [label, group] : groups) {
    for (const auto& [pcy, n] : population_by_pcy(corpus, group)) {
      population.rows.push_back({integer(pcy), label, integer(n)});
    }
  }
  tables.push_back(std::move(population));

  {
    const auto all = population_by_pcy(corpus, Group::resolve(corpus, GroupSelector::all_active()));
    const auto pis = population_by_pcy(corpus, Group::resolve(corpus, GroupSelector::pis()));
    Table share{"career_pi_share", {"pcy", "pi_population", "active_population", "pi_share"}, {}};
    for (const auto& [pcy, n] : all) {
      auto it = pis.find(pcy);
      const long long p = it == pis.end() ? 0 : it->second;
      share.rows.push_back({integer(pcy), integer(p), integer(n), static_cast<double>(p) / n});
    }
    tables.push_back(std::move(share));
  }

  for (auto indicator : kAllCareerIndicators) {
    Table t{"career_" + std::string(career_indicator_name(indicator)),
            {"pcy", "group", "value", "contributors", "population"}, {}};
    for (const auto& [label, group] : groups) {
      const auto series = career_series(corpus, group, indicator, baselines, label);
      for (const auto& [pcy, n] : series.population) {
        auto v = series.values.find(pcy);
        auto k = series.contributors.find(pcy);
        t.rows.push_back({integer(pcy), label,
                          v == series.values.end() ? Cell{} : Cell{v->second},
                          integer(k == series.contributors.end() ? 0 : k->second), integer(n)});
      }
    }
    tables.push_back(std::move(t));
  }

  Table subgroups{"career_subgroups", {"pcy", "subgroup", "value", "contributors", "population"}, {}};
  for (auto kind : kAllProjectKinds) {
    const auto series = subgroup_career_series(corpus, kind, CareerIndicator::kProductivity, baselines);
    if (!series) continue;
    for (const auto& [pcy, n] : series->population) {
      auto v = series->values.find(pcy);
      auto k = series->contributors.find(pcy);
      subgroups.rows.push_back({integer(pcy), std::string(kind_code(kind)),
                                v == series->values.end() ? Cell{} : Cell{v->second},
                                integer(k == series->contributors.end() ? 0 : k->second), integer(n)});
    }
  }
  tables.push_back(std::move(subgroups));

  Table lengths{"career_lengths",
                {"group", "members", "mean_length", "drop_short", "stopped_by", "filtered_mean_length"}, {}};
  for (const auto& [label, group] : groups) {
    lengths.rows.push_back(
        {label, integer(static_cast<long long>(group.size())), cell(mean_career_length(corpus, group)),
         integer(config.career_drop_short), integer(config.stopped_by()),
         cell(filtered_career_length(corpus, group, config.career_drop_short, config.stopped_by()))});
  }
  tables.push_back(std::move(lengths));

  const auto followup = postdoc_followup_rate(corpus, config.postdoc_before, config.postdoc_horizon);
  tables.push_back({"postdoc_followup",
                    {"postdoc_before", "horizon", "cohort", "without_followup", "rate"},
                    {{integer(config.postdoc_before), integer(config.postdoc_horizon),
                      integer(followup.cohort), integer(followup.without_followup), cell(followup.rate)}}});
  return tables;
}

std::vector<Table> network_tables(const Corpus& corpus, const RunConfig& config) {
  Table invariants{"network_invariants",
                   {"start_year", "end_year", "n_A", "n_pi", "gamma_gc", "n_pi_gc", "n_pi_star",
                    "alpha_star", "nu_A", "nu_pi", "zeta_cross", "zeta_cross_singletons", "gamma_cross"},
                   {}};
  Table pi_nets{"network_pi_subnetworks",
                {"start_year", "end_year", "pi_count", "gc_share", "component_count", "isolated_count"}, {}};
  Table ego{"network_ego_min_degree", {"start_year", "end_year", "min_degree", "nu_A", "nu_pi"}, {}};
  for (const auto& period : config.periods) {
    const auto net = build_network(corpus, period.first, period.last);
    if (net.node_count() == 0) continue;
    const auto row = invariant_row(corpus, net);
    invariants.rows.push_back({integer(row.start_year), integer(row.end_year), integer(row.n_A),
                               integer(row.n_pi), row.gamma_gc, integer(row.n_pi_gc),
                               integer(row.n_pi_star), cell(row.alpha_star), cell(row.nu_A),
                               cell(row.nu_pi), integer(row.zeta_cross),
                               integer(row.zeta_cross_singletons), row.gamma_cross});
    if (auto sub = pi_subnetwork(net)) {
      pi_nets.rows.push_back({integer(period.first), integer(period.last), integer(sub->pi_count),
                              sub->gc_share, integer(sub->component_count), integer(sub->isolated_count)});
    }
    const auto gc = giant_component(net);
    std::vector<NodeIndex> gc_pis;
    for (auto v : gc) {
      if (net.is_pi[v]) gc_pis.push_back(v);
    }
    ego.rows.push_back({integer(period.first), integer(period.last), integer(config.ego_min_degree),
                        cell(ego_pi_density(net, gc, config.ego_min_degree)),
                        cell(ego_pi_density(net, gc_pis, config.ego_min_degree))});
  }
  return {std::move(invariants), std::move(pi_nets), std::move(ego)};
}

std::vector<Table> correlation_tables(const Corpus& corpus, const RunConfig& config) {
  const auto groups = resolve_groups(corpus, config);
  Table t{"correlations", {"group", "indicator", "r", "points"}, {}};
  for (const auto& [label, group] : groups) {
    for (const auto& row : correlation_report(corpus, group, config.correlation_years)) {
      t.rows.push_back({label, row.indicator, cell(row.r), integer(row.points)});
    }
  }
  return {std::move(t)};
}

std::string render_json_bundle(const std::vector<Table>& tables, const RunConfig& config) {
  nlohmann::ordered_json doc;
  doc["tool"] = "pistat";
  doc["version"] = std::string(tool_version());
  nlohmann::ordered_json echo = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config.settings.entries()) echo[key] = value;
  doc["config"] = std::move(echo);
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& table : tables) {
    nlohmann::ordered_json t;
    t["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json r = nlohmann::ordered_json::array();
      for (const auto& c : row) r.push_back(json_value(c));
      rows.push_back(std::move(r));
    }
    t["rows"] = std::move(rows);
    out[table.name] = std::move(t);
  }
  doc["tables"] = std::move(out);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Commands

int report_exception(std::ostream& err) {
  try {
    throw;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const StatsError& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const EraError& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

namespace {

Corpus::BuildResult load(const RunConfig& config, std::ostream& err) {
  if (config.researchers.empty() || config.publications.empty() || config.projects.empty()) {
    throw UsageError("researchers, publications and projects paths are required");
  }
  auto result = load_corpus(config.researchers, config.publications, config.projects, config.corpus);
  if (result.rejected > 0) {
    err << "note: " << result.rejected << " record(s) rejected; run 'validate' for details\n";
  }
  return result;
}

void prepare_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError(dir.string(), "cannot create output directory" + (ec ? ": " + ec.message() : ""));
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

void write_tables(const std::vector<Table>& tables, const std::filesystem::path& dir, std::ostream& out) {
  prepare_out_dir(dir);
  for (const auto& table : tables) {
    std::ostringstream text;
    write_csv(table, text);
    const auto path = dir / (table.name + ".csv");
    write_file(path, text.str());
    out << "wrote " << path.string() << " (" << table.rows.size() << " rows)\n";
  }
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (...) {
    return report_exception(err);
  }
}

}  // namespace

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.researchers.empty() || config.publications.empty() || config.projects.empty()) {
      throw UsageError("researchers, publications and projects paths are required");
    }
    auto raw = read_records(config.researchers, config.publications, config.projects);
    const auto read_r = raw.researchers.size();
    const auto read_p = raw.publications.size();
    const auto read_j = raw.projects.size();
    auto result = Corpus::build(std::move(raw), config.corpus);
    const auto& c = result.corpus;
    for (const auto& d : result.diagnostics) out << to_string(d) << '\n';
    const auto without_pi = std::count_if(c.projects().begin(), c.projects().end(),
                                          [](const Project& p) { return !p.pi; });
    out << "researchers: " << read_r << " read, " << c.researchers().size() << " accepted\n";
    out << "publications: " << read_p << " read, " << c.publications().size() << " accepted\n";
    out << "projects: " << read_j << " read, " << c.projects().size() << " accepted\n";
    out << "rejected records: " << result.rejected << '\n';
    out << "active researchers (A): " << c.active().size() << '\n';
    out << "principal investigators (PI): " << c.pis().size() << '\n';
    out << "projects with known, published PI: " << c.projects_with_published_pi() << '\n';
    out << "projects without PI: " << without_pi << '\n';
    out << "PIs without scientific publication: " << c.index().unpublished_pis.size() << '\n';
    return 0;
  });
}

int cmd_indicators(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto loaded = load(config, err);
    write_tables(indicator_tables(loaded.corpus, config), config.out_dir, out);
    return 0;
  });
}

int cmd_careers(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto loaded = load(config, err);
    write_tables(career_tables(loaded.corpus, config), config.out_dir, out);
    return 0;
  });
}

int cmd_network(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto loaded = load(config, err);
    const auto tables = network_tables(loaded.corpus, config);
    write_tables(tables, config.out_dir, out);
    if (config.network_export) {
      const char* ext = *config.network_export == ExportFormat::kEdgeList ? ".edges" : ".graphml";
      for (const auto& period : config.periods) {
        const auto net = build_network(loaded.corpus, period.first, period.last);
        const auto path = config.out_dir / ("network_" + std::to_string(period.first) + "_" +
                                            std::to_string(period.last) + ext);
        export_network(net, path, *config.network_export);
        out << "wrote " << path.string() << '\n';
      }
    }
    return 0;
  });
}

int cmd_correlations(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto loaded = load(config, err);
    write_tables(correlation_tables(loaded.corpus, config), config.out_dir, out);
    return 0;
  });
}

int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto loaded = load(config, err);
    const auto& corpus = loaded.corpus;
    std::vector<Table> tables;
    for (auto* build : {&indicator_tables, &career_tables, &network_tables, &correlation_tables}) {
      auto part = build(corpus, config);
      std::move(part.begin(), part.end(), std::back_inserter(tables));
    }
    prepare_out_dir(config.out_dir);
    const auto path = config.out_dir / "report.json";
    write_file(path, render_json_bundle(tables, config));
    out << "wrote " << path.string() << " (" << tables.size() << " tables)\n";
    return 0;
  });
}

}  // namespace pistat
