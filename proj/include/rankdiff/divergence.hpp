#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankdiff/indicators.hpp"
#include "rankdiff/ranking.hpp"

namespace rankdiff {

// Sample Pearson correlation.  Throws DegenerateVariance for fewer than 3 pairs or a
// constant argument.
double pearson(std::span<const double> xs, std::span<const double> ys);

// Ascending 1-based ranks; tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of average ranks.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct DivergenceSummary {
  std::string scope_code;
  std::size_t n_units = 0;
  double pct_shifting_rank = 0.0;
  double mean_abs_shift = 0.0;
  double median_abs_shift = 0.0;
  int max_abs_shift = 0;
  // Position statistics times 100 / (n - 1).
  double mean_pct_shift = 0.0;
  double median_pct_shift = 0.0;
  double max_pct_shift = 0.0;
  // Absent below three units or with constant scores.
  std::optional<double> pearson;
  std::optional<double> spearman;
};

DivergenceSummary shift_stats(const ComparisonTable& cmp, std::string scope_code = {});

struct QuartileSummary {
  std::string scope_code;
  std::size_t n_units = 0;
  double pct_shifting_quartile = 0.0;
  double mean_abs_quartile_shift = 0.0;
  int max_quartile_shift = 0;
  double pct_leaving_q1 = 0.0;  // share of FSS-Q1 units outside MNCS-Q1
};

QuartileSummary quartile_stats(const ComparisonTable& cmp, std::string scope_code = {});

struct DispersionStats {
  std::string scope_code;
  Indicator indicator = Indicator::kFss;
  std::size_t n = 0;
  double mean = 0.0;
  double std_dev = 0.0;  // n - 1 denominator
  double coefficient_of_variation = 0.0;
};

// Throws ZeroMean, or DegeneratePopulation below two scores.
DispersionStats dispersion(std::span<const double> scores, Indicator indicator,
                           std::string scope_code = {});
DispersionStats dispersion(const ScoreBoard& board);

struct StatRange {
  double min = 0.0;
  double max = 0.0;
};

// Min-max of SDS-level divergence statistics within one UDA.
struct RangeSummary {
  std::string uda_code;
  std::size_t n_sds = 0;
  StatRange pct_shifting_rank;
  StatRange mean_abs_shift;
  StatRange mean_pct_shift;
  StatRange median_abs_shift;
  StatRange max_abs_shift;
  StatRange max_pct_shift;
  std::optional<StatRange> pearson;
  std::optional<StatRange> spearman;
};

// Throws NoRankableSds on an empty list.
RangeSummary range_summary(std::span<const DivergenceSummary> per_sds, std::string uda_code);

}  // namespace rankdiff
