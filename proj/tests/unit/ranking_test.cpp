#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "rankdiff/ranking.hpp"

using namespace rankdiff;
using namespace fixtures;

namespace {

std::vector<UnitScore> units(const std::vector<std::pair<std::string, double>>& scores,
                             Indicator indicator = Indicator::kFss) {
  std::vector<UnitScore> out;
  for (const auto& [id, s] : scores) {
    UnitScore u;
    u.university_id = id;
    u.indicator = indicator;
    u.score = s;
    out.push_back(u);
  }
  return out;
}

const RankedEntry& entry(const RankedList& list, const std::string& id) {
  return *std::find_if(list.entries.begin(), list.entries.end(),
                       [&](const RankedEntry& e) { return e.unit_id == id; });
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

std::vector<UnitScore> random_units(std::mt19937_64& rng, int n) {
  std::vector<UnitScore> out;
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < n; ++i) {
    UnitScore s;
    s.university_id = "U" + std::to_string(i);
    s.score = u(rng);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(Rank, ReferenceOrderForChim08) {
  const auto rows = read_reference_table("chim08_sds.csv");
  std::vector<std::pair<std::string, double>> fss;
  for (const auto& r : rows) fss.emplace_back(r.unit, r.fss_score);
  const auto ranked = rank(units(fss));
  EXPECT_EQ(entry(ranked, "UNIV_1").rank, 1);
  EXPECT_EQ(entry(ranked, "UNIV_29").rank, 29);
}

TEST(Rank, TiesBrokenByUnitIdAndReported) {
  const auto ranked = rank(units({{"B", 5}, {"A", 5}, {"C", 3}}));
  EXPECT_EQ(entry(ranked, "A").rank, 1);
  EXPECT_EQ(entry(ranked, "B").rank, 2);
  EXPECT_EQ(entry(ranked, "C").rank, 3);
  EXPECT_TRUE(entry(ranked, "A").tied);
  EXPECT_FALSE(entry(ranked, "C").tied);
  ASSERT_EQ(ranked.tie_groups.size(), 1u);
  EXPECT_EQ(ranked.tie_groups[0], (std::vector<std::string>{"A", "B"}));
}

TEST(Rank, TieBreakKeyPrecedesUnitId) {
  auto u = units({{"A", 5}, {"B", 5}});
  u[0].tie_break = 2;
  u[1].tie_break = 1;
  const auto ranked = rank(u);
  EXPECT_EQ(ranked.entries[0].unit_id, "B");
}

TEST(Rank, SingleUnitIsDegenerate) {
  const auto ranked = rank(units({{"A", 1.0}}));
  EXPECT_EQ(ranked.entries[0].rank, 1);
  EXPECT_DOUBLE_EQ(ranked.entries[0].percentile, 100.0);
  EXPECT_TRUE(ranked.degenerate);
}

TEST(Rank, EmptyBoard) {
  EXPECT_EQ(code_of([] { (void)rank(std::vector<UnitScore>{}); }), ErrorCode::kEmptyBoard);
}

TEST(Percentile, Examples) {
  EXPECT_DOUBLE_EQ(percentile(1, 29), 100.0);
  EXPECT_DOUBLE_EQ(percentile(29, 29), 0.0);
  EXPECT_DOUBLE_EQ(percentile(25, 49), 50.0);
  EXPECT_DOUBLE_EQ(percentile(40, 49), 18.75);
  EXPECT_DOUBLE_EQ(round_half_away(percentile(40, 49), 1), 18.8);
  EXPECT_DOUBLE_EQ(round_half_away(percentile(2, 29), 1), 96.4);
  EXPECT_EQ(code_of([] { (void)percentile(1, 1); }), ErrorCode::kDegeneratePopulation);
}

TEST(Quartile, Examples) {
  EXPECT_EQ(quartile(16, 64), 1);
  EXPECT_EQ(quartile(17, 64), 2);
  for (int n = 1; n <= 40; ++n) {
    EXPECT_EQ(quartile(1, n), 1);
    EXPECT_EQ(quartile(n, n), n == 1 ? 1 : 4);
  }
}

TEST(Compare, ReferenceRows) {
  const auto rows = read_reference_table("chim08_sds.csv");
  std::vector<std::pair<std::string, double>> fss, mncs;
  for (const auto& r : rows) {
    fss.emplace_back(r.unit, r.fss_score);
    mncs.emplace_back(r.unit, r.mncs_score);
  }
  const auto cmp = compare(rank(units(fss)), rank(units(mncs, Indicator::kMncs)));
  auto row = [&](const std::string& id) {
    return *std::find_if(cmp.rows.begin(), cmp.rows.end(),
                         [&](const ComparisonRow& r) { return r.unit_id == id; });
  };
  const auto u2 = row("UNIV_2");
  EXPECT_EQ(u2.fss.rank, 2);
  EXPECT_EQ(u2.mncs.rank, 5);
  EXPECT_EQ(u2.rank_shift, -3);
  EXPECT_EQ(shift_glyph(u2.rank_shift), "↓3");
  EXPECT_DOUBLE_EQ(round_half_away(u2.fss.percentile, 1), 96.4);
  EXPECT_DOUBLE_EQ(round_half_away(u2.mncs.percentile, 1), 85.7);
  EXPECT_DOUBLE_EQ(round_half_away(u2.percentile_shift, 1), -10.7);

  const auto u21 = row("UNIV_21");
  EXPECT_EQ(u21.fss.rank, 18);
  EXPECT_EQ(u21.mncs.rank, 4);
  EXPECT_EQ(u21.rank_shift, 14);
  EXPECT_EQ(shift_glyph(u21.rank_shift), "↑14");
  EXPECT_DOUBLE_EQ(round_half_away(u21.percentile_shift, 1), 50.0);

  EXPECT_EQ(cmp.n, 29u);
  for (std::size_t i = 0; i < cmp.rows.size(); ++i) {
    EXPECT_EQ(cmp.rows[i].fss.rank, static_cast<int>(i) + 1);
  }
}

TEST(Compare, IdenticalBoardsHaveNoShift) {
  const auto l = rank(units({{"A", 3}, {"B", 2}, {"C", 1}}));
  for (const auto& r : compare(l, l).rows) {
    EXPECT_EQ(r.rank_shift, 0);
    EXPECT_DOUBLE_EQ(r.percentile_shift, 0.0);
    EXPECT_EQ(shift_glyph(r.rank_shift), "=");
  }
}

TEST(Compare, UnitSetMismatch) {
  const auto a = rank(units({{"A", 3}, {"B", 2}}));
  const auto b = rank(units({{"A", 3}, {"C", 2}}));
  const auto c = rank(units({{"A", 3}}));
  EXPECT_EQ(code_of([&] { (void)compare(a, b); }), ErrorCode::kUnitSetMismatch);
  EXPECT_EQ(code_of([&] { (void)compare(a, c); }), ErrorCode::kUnitSetMismatch);
}

TEST(Rounding, HalfAwayFromZero) {
  EXPECT_DOUBLE_EQ(round_half_away(18.75, 1), 18.8);
  EXPECT_DOUBLE_EQ(round_half_away(-18.75, 1), -18.8);
  EXPECT_DOUBLE_EQ(round_half_away(0.125, 2), 0.13);
  EXPECT_DOUBLE_EQ(round_half_away(2.5, 0), 3.0);
  EXPECT_DOUBLE_EQ(round_half_away(-2.5, 0), -3.0);
}

// ---- properties ----

TEST(RankingProperties, PercentileIsAffineInRank) {
  for (int n = 2; n <= 80; ++n) {
    for (int r = 1; r < n; ++r) {
      EXPECT_NEAR(percentile(r, n) - percentile(r + 1, n), 100.0 / (n - 1), 1e-12);
    }
  }
}

TEST(RankingProperties, RankedListInvariants) {
  std::mt19937_64 rng(301);
  for (int round = 0; round < 300; ++round) {
    const int n = std::uniform_int_distribution<int>(2, 60)(rng);
    const auto ranked = rank(random_units(rng, n));
    ASSERT_EQ(ranked.n, static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(ranked.entries[i].rank, i + 1);
      if (i > 0) {
        EXPECT_GE(ranked.entries[i - 1].score, ranked.entries[i].score);
        EXPECT_GT(ranked.entries[i - 1].percentile, ranked.entries[i].percentile);
      }
      EXPECT_GE(ranked.entries[i].percentile, 0.0);
      EXPECT_LE(ranked.entries[i].percentile, 100.0);
    }
  }
}

TEST(RankingProperties, ArgsortInvariance) {
  std::mt19937_64 rng(302);
  for (int round = 0; round < 300; ++round) {
    auto u = random_units(rng, std::uniform_int_distribution<int>(2, 40)(rng));
    auto t = u;
    const double a = std::uniform_real_distribution<double>(0.1, 10)(rng);
    const double b = std::uniform_real_distribution<double>(-5, 5)(rng);
    for (auto& s : t) s.score = std::exp(a * s.score) + b;
    const auto r1 = rank(u);
    const auto r2 = rank(t);
    for (std::size_t i = 0; i < r1.entries.size(); ++i) {
      EXPECT_EQ(r1.entries[i].unit_id, r2.entries[i].unit_id);
    }
  }
}

TEST(RankingProperties, ShiftConservationAndPercentileShift) {
  std::mt19937_64 rng(303);
  for (int round = 0; round < 300; ++round) {
    const int n = std::uniform_int_distribution<int>(2, 60)(rng);
    auto f = random_units(rng, n);
    auto m = random_units(rng, n);
    const auto cmp = compare(rank(f), rank(m));
    int total = 0;
    for (const auto& r : cmp.rows) {
      total += r.rank_shift;
      EXPECT_NEAR(r.percentile_shift, r.rank_shift * 100.0 / (n - 1), 1e-9);
      EXPECT_EQ(r.rank_shift > 0, r.percentile_shift > 0);
      EXPECT_EQ(r.rank_shift == 0, r.percentile_shift == 0);
      EXPECT_EQ(r.quartile_fss, quartile(r.fss.rank, n));
      EXPECT_EQ(r.quartile_mncs, quartile(r.mncs.rank, n));
    }
    EXPECT_EQ(total, 0);
  }
}

TEST(RankingProperties, QuartilesBalanced) {
  for (int n = 1; n <= 200; ++n) {
    int counts[5] = {0, 0, 0, 0, 0};
    for (int r = 1; r <= n; ++r) {
      const int q = quartile(r, n);
      ASSERT_GE(q, 1);
      ASSERT_LE(q, 4);
      ++counts[q];
    }
    if (n < 4) continue;
    const auto [lo, hi] = std::minmax_element(counts + 1, counts + 5);
    EXPECT_LE(*hi - *lo, 1) << "n=" << n;
  }
}
