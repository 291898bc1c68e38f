#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pistat/careers.hpp"
#include "pistat/error.hpp"
#include "pistat/report.hpp"
#include "pistat/stats.hpp"
#include "synthetic.hpp"

using namespace pistat;
using pistat::oracle::Synthetic;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("pistat_report_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

// Synthetic corpus on disk plus a RunConfig pointing at it.
struct Workspace {
  std::filesystem::path dir;
  Synthetic synthetic;
  RunConfig config;

  Workspace(const std::string& name, std::uint64_t seed, KeyValueFile extra = {}) {
    dir = scratch_dir(name);
    synthetic = oracle::generate(seed);
    synthetic.write(dir / "in");
    KeyValueFile kv = std::move(extra);
    kv.set("researchers", (dir / "in" / "researchers.csv").string());
    kv.set("publications", (dir / "in" / "publications.csv").string());
    kv.set("projects", (dir / "in" / "projects.csv").string());
    kv.set("out", (dir / "out").string());
    const auto b = synthetic.config.year_bounds;
    kv.set("year_bounds", std::to_string(b.first) + "-" + std::to_string(b.last));
    kv.set("conor_year", std::to_string(synthetic.config.conor_year));
    kv.set("postdoc_cutoff_year", std::to_string(synthetic.config.postdoc_cutoff_year));
    kv.set("postdoc_window_years", std::to_string(synthetic.config.postdoc_window_years));
    std::string fields;
    for (const auto& f : synthetic.config.fields) fields += (fields.empty() ? "" : ",") + f;
    kv.set("fields", fields);
    config = run_config_from(kv);
  }
};

}  // namespace

TEST(FormatDecimal, FourPlacesWithoutNegativeZero) {
  EXPECT_EQ(format_decimal(0.123456), "0.1235");
  EXPECT_EQ(format_decimal(2.0), "2.0000");
  EXPECT_EQ(format_decimal(-0.00001), "0.0000");
  EXPECT_EQ(format_decimal(-1.5), "-1.5000");
}

TEST(WriteCsv, FixedColumnsEmptyUndefinedAndQuoting) {
  Table t{"t", {"a", "b", "c", "d"}, {{1LL, 0.5, std::monostate{}, std::string("x,y")}}};
  std::ostringstream out;
  write_csv(t, out);
  EXPECT_EQ(out.str(), "a,b,c,d\n1,0.5000,,\"x,y\"\n");
}

TEST(RunConfig, DefaultsAndOverrides) {
  const auto defaults = run_config_from({});
  EXPECT_EQ(defaults.periods.size(), 23u);
  EXPECT_EQ(defaults.correlation_years, (YearRange{1994, 2016}));
  EXPECT_EQ(defaults.groups.size(), 2u);
  EXPECT_EQ(defaults.stopped_by(), 2014);
  EXPECT_EQ(defaults.years(), (YearRange{1970, 2016}));

  KeyValueFile kv;
  kv.set("from", "1990");
  kv.set("to", "2000");
  kv.set("group", "pis:postdoc,ids:a;b");
  kv.set("indicators", "productivity,solo_publications");
  kv.set("periods", "1980-1990,1980-1995");
  kv.set("format", "graphml");
  const auto c = run_config_from(kv);
  EXPECT_EQ(c.years(), (YearRange{1990, 2000}));
  EXPECT_EQ(c.groups[1].ids, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(c.indicators.size(), 2u);
  EXPECT_EQ(c.periods.size(), 2u);
  EXPECT_EQ(c.network_export, ExportFormat::kGraphMl);
}

TEST(RunConfig, RejectsBadSettings) {
  auto bad = [](const char* key, const char* value) {
    KeyValueFile kv;
    kv.set(key, value);
    EXPECT_THROW(run_config_from(kv), UsageError) << key << " = " << value;
  };
  bad("colour", "blue");
  bad("group", "");
  bad("group", "wizards");
  bad("indicators", "h_index");
  bad("from", "1900");
  bad("periods", "1994..2016");
  bad("format", "png");
  bad("conor_year", "1960");
  bad("career_drop_short", "-1");
  bad("ego_min_degree", "three");
}

TEST(ParsePeriods, BothNotations) {
  EXPECT_EQ(parse_periods("1970:1994..1996"),
            (std::vector<YearRange>{{1970, 1994}, {1970, 1995}, {1970, 1996}}));
  EXPECT_EQ(parse_periods("2000-2001, 1990-2016"), (std::vector<YearRange>{{2000, 2001}, {1990, 2016}}));
}

TEST(Tables, IndicatorCsvEqualsLibraryValues) {
  Workspace ws("indicators", 5);
  const auto corpus = ws.synthetic.corpus();
  const auto tables = indicator_tables(corpus, ws.config);
  const auto& t = tables[0];
  EXPECT_EQ(t.name, "indicator_productivity");
  const auto all = Group::resolve(corpus, GroupSelector::all_active());
  const auto series = indicator_series(corpus, all, Indicator::kProductivity, ws.config.years());
  std::size_t row = 0;
  for (const auto& [y, v] : series.values) {
    ASSERT_LT(row, t.rows.size());
    EXPECT_EQ(std::get<long long>(t.rows[row][0]), y);
    EXPECT_EQ(std::get<std::string>(t.rows[row][1]), "all");
    EXPECT_EQ(std::get<double>(t.rows[row][2]), v);
    ++row;
  }
}

TEST(Tables, PiShareIsConsistentWithPopulationFiles) {
  Workspace ws("careers", 8);
  ASSERT_EQ(cmd_careers(ws.config, std::cout, std::cerr), 0);
  const auto population = read_csv(ws.dir / "out" / "career_population.csv");
  const auto share = read_csv(ws.dir / "out" / "career_pi_share.csv");
  std::map<std::pair<std::string, std::string>, double> pop;
  for (std::size_t i = 1; i < population.size(); ++i) pop[{population[i][0], population[i][1]}] = std::stod(population[i][2]);
  ASSERT_GT(share.size(), 1u);
  for (std::size_t i = 1; i < share.size(); ++i) {
    const auto& pcy = share[i][0];
    const double n_a = pop.at({pcy, "all"});
    const double n_pi = pop.count({pcy, "pis"}) ? pop.at({pcy, "pis"}) : 0.0;
    EXPECT_EQ(share[i][3], format_decimal(n_pi / n_a)) << "pcy " << pcy;
  }
}

TEST(Tables, SinglePeriodNetworkRowMatchesLibrary) {
  KeyValueFile kv;
  Workspace ws("network", 13);
  const auto b = ws.synthetic.config.year_bounds;
  ws.config.periods = {b};
  const auto corpus = ws.synthetic.corpus();
  const auto tables = network_tables(corpus, ws.config);
  ASSERT_EQ(tables[0].rows.size(), 1u);
  const auto row = invariant_row(corpus, build_network(corpus, b.first, b.last));
  EXPECT_EQ(tables[0].columns.size(), 13u);
  EXPECT_EQ(std::get<long long>(tables[0].rows[0][2]), row.n_A);
  EXPECT_EQ(std::get<double>(tables[0].rows[0][4]), row.gamma_gc);
  EXPECT_EQ(std::get<double>(tables[0].rows[0][12]), row.gamma_cross);
}

TEST(Commands, JsonBundleMatchesCsvFiles) {
  Workspace ws("bundle", 21);
  ASSERT_EQ(cmd_report(ws.config, std::cout, std::cerr), 0);
  const auto doc = nlohmann::json::parse(slurp(ws.dir / "out" / "report.json"));
  EXPECT_EQ(doc["tool"], "pistat");
  EXPECT_EQ(doc["version"], std::string(tool_version()));
  EXPECT_EQ(doc["config"]["researchers"], ws.config.researchers.string());

  for (auto* cmd : {&cmd_indicators, &cmd_careers, &cmd_network, &cmd_correlations}) {
    ASSERT_EQ(cmd(ws.config, std::cout, std::cerr), 0);
  }
  int compared = 0;
  for (const auto& [name, table] : doc["tables"].items()) {
    const auto csv = read_csv(ws.dir / "out" / (name + ".csv"));
    ASSERT_EQ(csv.size(), table["rows"].size() + 1) << name;
    for (std::size_t c = 0; c < table["columns"].size(); ++c) EXPECT_EQ(csv[0][c], table["columns"][c]);
    for (std::size_t r = 0; r < table["rows"].size(); ++r) {
      const auto& cells = table["rows"][r];
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& cell = cells[c];
        const auto& text = csv[r + 1][c];
        if (cell.is_null()) {
          EXPECT_EQ(text, "");
        } else if (cell.is_number_float()) {
          EXPECT_EQ(text, format_decimal(cell.get<double>())) << name;
        } else if (cell.is_number_integer()) {
          EXPECT_EQ(text, std::to_string(cell.get<long long>()));
        } else {
          EXPECT_EQ(text, cell.get<std::string>());
        }
        ++compared;
      }
    }
  }
  EXPECT_GT(compared, 100);
}

TEST(Commands, RerunsAreByteIdentical) {
  Workspace ws("determinism", 34);
  ASSERT_EQ(cmd_report(ws.config, std::cout, std::cerr), 0);
  ASSERT_EQ(cmd_indicators(ws.config, std::cout, std::cerr), 0);
  const auto first_json = slurp(ws.dir / "out" / "report.json");
  const auto first_csv = slurp(ws.dir / "out" / "indicator_collaborators.csv");
  std::filesystem::remove_all(ws.dir / "out");
  ASSERT_EQ(cmd_report(ws.config, std::cout, std::cerr), 0);
  ASSERT_EQ(cmd_indicators(ws.config, std::cout, std::cerr), 0);
  EXPECT_EQ(slurp(ws.dir / "out" / "report.json"), first_json);
  EXPECT_EQ(slurp(ws.dir / "out" / "indicator_collaborators.csv"), first_csv);
}

TEST(Commands, ExitCodes) {
  Workspace ws("exit_codes", 2);
  std::ostringstream out, err;

  auto unknown_group = ws.config;
  unknown_group.groups = {GroupSelector::explicit_ids({"nobody"})};
  unknown_group.out_dir = ws.dir / "never";
  EXPECT_EQ(cmd_indicators(unknown_group, out, err), 1);
  EXPECT_FALSE(std::filesystem::exists(ws.dir / "never"));

  auto empty_groups = ws.config;
  empty_groups.groups.clear();
  EXPECT_EQ(cmd_careers(empty_groups, out, err), 1);

  auto short_range = ws.config;
  short_range.correlation_years = {2000, 2001};
  EXPECT_EQ(cmd_correlations(short_range, out, err), 1);

  auto missing = ws.config;
  missing.publications = ws.dir / "absent.csv";
  EXPECT_EQ(cmd_validate(missing, out, err), 3);

  std::ofstream(ws.dir / "dangling.csv") << "id,year,type_code,total_author_count,registered_author_ids\n"
                                            "p1,2005,1.01,2,r000;ghost\n";
  auto dangling = ws.config;
  dangling.publications = ws.dir / "dangling.csv";
  err.str("");
  EXPECT_EQ(cmd_validate(dangling, out, err), 2);
  EXPECT_NE(err.str().find("ghost"), std::string::npos);

  std::ofstream(ws.dir / "blocker") << "a file where a directory should be";
  auto blocked = ws.config;
  blocked.out_dir = ws.dir / "blocker" / "out";
  EXPECT_EQ(cmd_report(blocked, out, err), 3);

  auto nested = ws.config;
  nested.out_dir = ws.dir / "deep" / "er" / "out";
  EXPECT_EQ(cmd_report(nested, out, err), 0);
  EXPECT_TRUE(std::filesystem::exists(nested.out_dir / "report.json"));
}

TEST(Commands, ValidateSummary) {
  Workspace ws("validate", 4);
  std::ostringstream out, err;
  ASSERT_EQ(cmd_validate(ws.config, out, err), 0);
  const auto c = ws.synthetic.corpus();
  EXPECT_NE(out.str().find("active researchers (A): " + std::to_string(c.active().size())), std::string::npos);
  EXPECT_NE(out.str().find("principal investigators (PI): " + std::to_string(c.pis().size())), std::string::npos);
  EXPECT_NE(out.str().find("projects with known, published PI: " + std::to_string(c.projects_with_published_pi())),
            std::string::npos);
}
