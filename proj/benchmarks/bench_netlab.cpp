#include <benchmark/benchmark.h>

#include <algorithm>
#include <map>
#include <random>

#include "pistat/indicators.hpp"
#include "pistat/netlab.hpp"

namespace {

// Roughly national scale: preferential co-authorship over 1970-2016 with a
// few thousand PIs from 1994 on.
pistat::Corpus make_corpus(int researchers) {
  std::mt19937_64 rng(2016);
  pistat::RawCorpus raw;
  for (int i = 0; i < researchers; ++i) {
    raw.researchers.push_back({"r" + std::to_string(i), std::to_string(1 + i % 6), 0});
  }
  std::uniform_int_distribution<int> team(1, 6), year(1970, 2016), kind(0, 4);
  const char* kinds[] = {"basic", "applicative", "programme", "postdoc", "targeted"};
  const int publications = researchers * 6;
  for (int p = 0; p < publications; ++p) {
    pistat::PublicationRecord pub;
    pub.id = "p" + std::to_string(p);
    pub.year = year(rng);
    pub.type_code = "1.01";
    const int authors = team(rng);
    // Skew toward low ids so a backbone of prolific authors emerges.
    for (int a = 0; a < authors; ++a) {
      const double u = std::uniform_real_distribution<double>(0, 1)(rng);
      pub.registered_author_ids.push_back("r" + std::to_string(static_cast<int>(u * u * researchers)));
    }
    std::sort(pub.registered_author_ids.begin(), pub.registered_author_ids.end());
    pub.registered_author_ids.erase(std::unique(pub.registered_author_ids.begin(), pub.registered_author_ids.end()),
                                    pub.registered_author_ids.end());
    pub.total_author_count = static_cast<int>(pub.registered_author_ids.size()) + team(rng) - 1;
    raw.publications.push_back(std::move(pub));
  }
  std::uniform_int_distribution<int> start(1994, 2016), pi(0, researchers / 4);
  for (int j = 0; j < researchers / 3; ++j) {
    const int s = start(rng);
    raw.projects.push_back({"j" + std::to_string(j), kinds[kind(rng)], s, std::min(2016, s + 2), "r" + std::to_string(pi(rng)), 0});
  }
  return pistat::Corpus::build(std::move(raw), pistat::CorpusConfig{}).corpus;
}

const pistat::Corpus& corpus_of(int researchers) {
  static std::map<int, pistat::Corpus> cache;
  auto it = cache.find(researchers);
  if (it == cache.end()) it = cache.emplace(researchers, make_corpus(researchers)).first;
  return it->second;
}

}  // namespace

static void BM_BuildNetwork(benchmark::State& state) {
  const auto& corpus = corpus_of(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto net = pistat::build_network(corpus, 1970, 2016);
    benchmark::DoNotOptimize(net);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus.publications().size()));
}
BENCHMARK(BM_BuildNetwork)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_InvariantRow(benchmark::State& state) {
  const auto& corpus = corpus_of(static_cast<int>(state.range(0)));
  const auto net = pistat::build_network(corpus, 1970, 2016);
  for (auto _ : state) benchmark::DoNotOptimize(pistat::invariant_row(corpus, net));
}
BENCHMARK(BM_InvariantRow)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_InvariantTable(benchmark::State& state) {
  const auto& corpus = corpus_of(20000);
  const auto periods = pistat::growing_periods(1970, 1994, 2016);
  for (auto _ : state) benchmark::DoNotOptimize(pistat::invariant_table(corpus, periods));
}
BENCHMARK(BM_InvariantTable)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_IndicatorSeries(benchmark::State& state) {
  const auto& corpus = corpus_of(20000);
  const auto group = pistat::Group::resolve(corpus, pistat::GroupSelector::all_active());
  const auto indicator = static_cast<pistat::Indicator>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pistat::indicator_series(corpus, group, indicator, corpus.year_bounds()));
  }
  state.SetLabel(std::string(pistat::indicator_name(indicator)));
}
BENCHMARK(BM_IndicatorSeries)->DenseRange(0, 8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
