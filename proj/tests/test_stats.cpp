#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pistat/error.hpp"
#include "pistat/stats.hpp"
#include "synthetic.hpp"

using namespace pistat;
using pistat::oracle::Synthetic;

namespace {

std::map<Year, double> series(const std::vector<double>& v, Year first = 2000) {
  std::map<Year, double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out[first + static_cast<Year>(i)] = v[i];
  return out;
}

// Textbook single-pass sums formula, independent of the library's
// two-pass centred computation.
double direct_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

}  // namespace

TEST(Pearson, PerfectRelations) {
  const std::vector<double> x = {1, 4, 2, 8, 5};
  std::vector<double> twice, negated;
  for (double v : x) twice.push_back(2 * v), negated.push_back(-v);
  EXPECT_NEAR(*pearson(series(x), series(twice)), 1.0, 1e-15);
  EXPECT_NEAR(*pearson(series(x), series(negated)), -1.0, 1e-15);
}

TEST(Pearson, DegenerateInputs) {
  EXPECT_THROW(pearson(series({1, 2}), series({3, 4})), StatsError);
  EXPECT_FALSE(pearson(series({1, 2, 3}), series({5, 5, 5})).has_value());
  // Only two common years after pairwise dropping.
  EXPECT_THROW(pearson(series({1, 2, 3}), series({1, 2, 3}, 2001)), StatsError);
}

TEST(Pearson, AlignDropsMissingYearsPairwise) {
  const auto pair = PairedSeries::align({{2000, 1}, {2001, 2}, {2003, 4}}, {{2001, 5}, {2002, 6}, {2003, 7}});
  EXPECT_EQ(pair.common_years, (std::vector<Year>{2001, 2003}));
  EXPECT_EQ(pair.x, (std::vector<double>{2, 4}));
  EXPECT_EQ(pair.y, (std::vector<double>{5, 7}));
}

TEST(Pearson, MatchesDirectFormulaAndInvariants) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> scale(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(20), y(20);
    for (int i = 0; i < 20; ++i) {
      x[i] = noise(rng);
      y[i] = 0.3 * x[i] + noise(rng);
    }
    const auto r = *pearson(series(x), series(y));
    EXPECT_NEAR(r, direct_pearson(x, y), 1e-12);
    EXPECT_LE(std::fabs(r), 1.0);
    EXPECT_EQ(r, *pearson(series(y), series(x)));

    double a = scale(rng);
    if (std::fabs(a) < 1e-3) a = 1.0;
    const double b = scale(rng) * 100;
    std::vector<double> ax(20);
    for (int i = 0; i < 20; ++i) ax[i] = a * x[i] + b;
    EXPECT_NEAR(*pearson(series(ax), series(y)), (a > 0 ? 1 : -1) * r, 1e-12);
  }
}

TEST(CorrelationReport, CollinearProjectsAndShortRanges) {
  Synthetic s;
  s.researcher("a").researcher("b");
  // Active projects and per-researcher output both grow 1, 2, 3, 4.
  for (int y = 0; y < 4; ++y) {
    for (int k = 0; k <= y; ++k) {
      s.publication("p" + std::to_string(y) + "_" + std::to_string(k), 2000 + y, 1, {"a"});
      s.publication("q" + std::to_string(y) + "_" + std::to_string(k), 2000 + y, 1, {"b"});
      s.project("j" + std::to_string(y) + "_" + std::to_string(k), "basic", 2000 + y, 2000 + y, "a");
    }
  }
  const auto c = s.corpus();
  const auto g = Group::resolve(c, GroupSelector::all_active());
  const auto rows = correlation_report(c, g, {2000, 2003});
  ASSERT_EQ(rows.size(), kAllIndicators.size());
  EXPECT_EQ(rows[0].indicator, "productivity");
  EXPECT_NEAR(*rows[0].r, 1.0, 1e-12);
  EXPECT_EQ(rows[0].points, 4);
  EXPECT_THROW(correlation_report(c, g, {2000, 2001}), StatsError);
}
