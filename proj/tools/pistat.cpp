// pistat: grant/publication indicator tables from the command line.
//
// Settings come from three layers: built-in defaults, a key/value config
// file (--config, or $PISTAT_CONFIG), and command-line flags, with later
// layers winning key by key.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "pistat/error.hpp"
#include "pistat/report.hpp"

namespace {

using Command = int (*)(const pistat::RunConfig&, std::ostream&, std::ostream&);

struct Flags {
  std::string config;
  std::map<std::string, std::string> overrides;
};

void add_common_flags(CLI::App* sub, Flags& flags) {
  sub->add_option("--config", flags.config, "key = value config file (default: $PISTAT_CONFIG)");
  const std::pair<const char*, const char*> keyed[] = {
      {"researchers", "researchers CSV (id,main_field)"},
      {"publications", "publications CSV"},
      {"projects", "projects CSV"},
      {"out", "output directory"},
      {"from", "first analysed year"},
      {"to", "last analysed year"},
      {"group", "comma-separated groups: all, pis, pis:KIND+KIND, ids:ID;ID"},
      {"indicators", "comma-separated indicator names"},
      {"periods", "network periods, e.g. 1970-1994,1970-2016 or 1970:1994..2016"},
      {"format", "network export: none, edge_list, graphml"},
      {"correlation-years", "year range for correlations, e.g. 1994-2016"},
      {"conor-year", "first year with complete author lists"},
      {"year-bounds", "corpus year bounds, e.g. 1970-2016"},
  };
  for (const auto& [name, help] : keyed) {
    std::string key = name;
    std::replace(key.begin(), key.end(), '-', '_');
    sub->add_option_function<std::string>(
        std::string("--") + name, [&flags, key](const std::string& v) { flags.overrides[key] = v; }, help);
  }
}

int run(Command command, const Flags& flags) {
  pistat::KeyValueFile settings;
  std::string config_path = flags.config;
  if (config_path.empty()) {
    if (const char* env = std::getenv(pistat::kConfigEnvVar)) config_path = env;
  }
  pistat::RunConfig config;
  try {
    if (!config_path.empty()) settings = pistat::KeyValueFile::load(config_path);
    for (const auto& [key, value] : flags.overrides) settings.set(key, value);
    config = pistat::run_config_from(settings);
  } catch (const pistat::IoError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const pistat::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (...) {
    return pistat::report_exception(std::cerr);
  }
  return command(config, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indicators, career curves and co-authorship networks for grant and publication records"};
  app.set_version_flag("--version", std::string(pistat::tool_version()));
  app.require_subcommand(1);

  const std::pair<const char*, std::pair<const char*, Command>> verbs[] = {
      {"validate", {"load the corpus and print counts and diagnostics", &pistat::cmd_validate}},
      {"indicators", {"yearly indicator series per group", &pistat::cmd_indicators}},
      {"careers", {"career-aligned series, career lengths and postdoc follow-up", &pistat::cmd_careers}},
      {"network", {"co-authorship network invariants per period", &pistat::cmd_network}},
      {"correlations", {"Pearson correlation of indicators with active projects", &pistat::cmd_correlations}},
      {"report", {"all tables as one JSON bundle", &pistat::cmd_report}},
  };
  Flags flags;
  std::map<CLI::App*, Command> commands;
  for (const auto& [name, spec] : verbs) {
    auto* sub = app.add_subcommand(name, spec.first);
    add_common_flags(sub, flags);
    commands[sub] = spec.second;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) return run(command, flags);
  }
  return 1;
}
