#pragma once

#include <span>
#include <string>
#include <vector>

#include "rankdiff/indicators.hpp"

namespace rankdiff {

struct RankedEntry {
  std::string unit_id;
  double score = 0.0;
  int rank = 0;
  double percentile = 0.0;
  bool tied = false;  // shares its score with another unit
  int staff = 0;      // research staff, display only
};

struct RankedList {
  std::vector<RankedEntry> entries;  // rank order
  std::size_t n = 0;
  // Groups of unit ids with equal scores, in rank order.
  std::vector<std::vector<std::string>> tie_groups;
  bool degenerate = false;  // n < 2, percentile fixed at 100
};

// Sorts by score descending; ties go to the lower tie_break, then to the lower unit id.
// Throws EmptyBoard.
RankedList rank(std::span<const UnitScore> units);
RankedList rank(const ScoreBoard& board);

// 100 * (n - rank) / (n - 1).  Throws DegeneratePopulation for n < 2.
double percentile(int rank, int n);

// ceil(4 * rank / n); 1 is the top quartile and always holds rank 1.
int quartile(int rank, int n);

struct Placement {
  double score = 0.0;
  int rank = 0;
  double percentile = 0.0;
};

struct ComparisonRow {
  std::string unit_id;
  int staff = 0;
  Placement fss;
  Placement mncs;
  int rank_shift = 0;             // rank_fss - rank_mncs; positive improves under MNCS
  double percentile_shift = 0.0;  // percentile_mncs - percentile_fss
  int quartile_fss = 0;
  int quartile_mncs = 0;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;  // FSS rank order
  std::size_t n = 0;
};

// Throws UnitSetMismatch when the lists do not rank the same units.
ComparisonTable compare(const RankedList& fss, const RankedList& mncs);

// Rounds half away from zero at the given number of decimals.
double round_half_away(double value, int decimals);

// "↑k", "↓k" or "=".
std::string shift_glyph(int rank_shift);

}  // namespace rankdiff
