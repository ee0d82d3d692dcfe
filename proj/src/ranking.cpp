#include "rankdiff/ranking.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace rankdiff {

RankedList rank(std::span<const UnitScore> units) {
  if (units.empty()) throw Error(ErrorCode::kEmptyBoard, "cannot rank an empty board");

  std::vector<std::size_t> order(units.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ua = units[a];
    const auto& ub = units[b];
    if (ua.score != ub.score) return ua.score > ub.score;
    if (ua.tie_break && ub.tie_break && *ua.tie_break != *ub.tie_break) {
      return *ua.tie_break < *ub.tie_break;
    }
    return ua.university_id < ub.university_id;
  });

  RankedList out;
  out.n = units.size();
  out.degenerate = out.n < 2;
  const int n = static_cast<int>(out.n);
  out.entries.reserve(out.n);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const auto& u = units[order[pos]];
    RankedEntry e;
    e.unit_id = u.university_id;
    e.score = u.score;
    e.rank = static_cast<int>(pos) + 1;
    e.percentile = out.degenerate ? 100.0 : percentile(e.rank, n);
    e.staff = u.research_staff;
    out.entries.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < out.entries.size();) {
    std::size_t j = i + 1;
    while (j < out.entries.size() && out.entries[j].score == out.entries[i].score) ++j;
    if (j - i > 1) {
      std::vector<std::string> group;
      for (std::size_t k = i; k < j; ++k) {
        out.entries[k].tied = true;
        group.push_back(out.entries[k].unit_id);
      }
      out.tie_groups.push_back(std::move(group));
    }
    i = j;
  }
  return out;
}

RankedList rank(const ScoreBoard& board) { return rank(std::span<const UnitScore>(board.units)); }

double percentile(int rank, int n) {
  if (n < 2) {
    throw Error(ErrorCode::kDegeneratePopulation,
                fmt::format("percentile undefined for population of {}", n));
  }
  if (rank < 1 || rank > n) {
    throw std::out_of_range(fmt::format("rank {} outside 1..{}", rank, n));
  }
  return 100.0 * static_cast<double>(n - rank) / static_cast<double>(n - 1);
}

int quartile(int rank, int n) {
  if (n < 1 || rank < 1 || rank > n) {
    throw std::out_of_range(fmt::format("rank {} outside 1..{}", rank, n));
  }
  // The top unit is Q1 even where ceil(4 / n) > 1, i.e. n = 2 or 3.
  if (rank == 1) return 1;
  return (4 * rank + n - 1) / n;
}

ComparisonTable compare(const RankedList& fss, const RankedList& mncs) {
  std::unordered_map<std::string, const RankedEntry*> by_unit;
  for (const auto& e : mncs.entries) by_unit.emplace(e.unit_id, &e);
  if (fss.entries.size() != mncs.entries.size() || by_unit.size() != mncs.entries.size()) {
    throw Error(ErrorCode::kUnitSetMismatch,
                fmt::format("FSS ranks {} units, MNCS ranks {}", fss.entries.size(),
                            mncs.entries.size()));
  }
  ComparisonTable out;
  out.n = fss.entries.size();
  const int n = static_cast<int>(out.n);
  for (const auto& f : fss.entries) {
    auto it = by_unit.find(f.unit_id);
    if (it == by_unit.end()) {
      throw Error(ErrorCode::kUnitSetMismatch,
                  fmt::format("unit '{}' is ranked by FSS but not by MNCS", f.unit_id));
    }
    const auto& m = *it->second;
    ComparisonRow row;
    row.unit_id = f.unit_id;
    row.staff = f.staff ? f.staff : m.staff;
    row.fss = Placement{f.score, f.rank, f.percentile};
    row.mncs = Placement{m.score, m.rank, m.percentile};
    row.rank_shift = f.rank - m.rank;
    // Same as m.percentile - f.percentile, without the cancellation error.
    row.percentile_shift = n < 2 ? 0.0 : 100.0 * row.rank_shift / static_cast<double>(n - 1);
    row.quartile_fss = quartile(f.rank, n);
    row.quartile_mncs = quartile(m.rank, n);
    out.rows.push_back(std::move(row));
  }
  return out;
}

double round_half_away(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double scaled = value * scale;
  // Absorb representation error so that e.g. 18.75 rounds to 18.8.
  const double nudged = scaled + std::copysign(1e-9 * std::max(1.0, std::fabs(scaled)), scaled);
  return std::round(nudged) / scale;
}

std::string shift_glyph(int rank_shift) {
  if (rank_shift > 0) return fmt::format("↑{}", rank_shift);
  if (rank_shift < 0) return fmt::format("↓{}", -rank_shift);
  return "=";
}

}  // namespace rankdiff
