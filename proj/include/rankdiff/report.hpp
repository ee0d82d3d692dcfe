#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankdiff/divergence.hpp"
#include "rankdiff/indicators.hpp"
#include "rankdiff/ranking.hpp"

namespace rankdiff {

// Rank, compare and summarise one scope.
struct ScopeComparison {
  Level level = Level::kSds;
  std::string scope_code;
  std::string uda_code;  // SDS scopes only
  RankedList fss_ranked;
  RankedList mncs_ranked;
  ComparisonTable table;
  DivergenceSummary shifts;
  QuartileSummary quartiles;
  std::optional<DispersionStats> fss_dispersion;
  std::optional<DispersionStats> mncs_dispersion;
  std::vector<std::string> warnings;
};

ScopeComparison compare_scope(const ScoreBoard& fss, const ScoreBoard& mncs);

// Paired score columns read from a CSV: unit (or university_id), fss_score, mncs_score and
// optionally staff (or research_staff), fss_rank and mncs_rank.  Rank columns only order
// units whose scores are equal.
struct ReplayBoards {
  ScoreBoard fss;
  ScoreBoard mncs;
};

ReplayBoards read_score_pairs(const std::filesystem::path& path, Level level,
                              const std::string& scope_code);

// Scoreboard CSV: level,scope_code,university_id,indicator,score,research_staff_or_weight.
void write_scoreboard_csv(std::ostream& out, const ScoreBoard& board);
// Both indicators side by side, one row per unit:
// level,scope_code,university_id,fss_score,research_staff,mncs_score,publication_weight.
void write_paired_scoreboard_csv(std::ostream& out, const ScopeBoards& boards);

// university,staff,fss_score,fss_rank,fss_pct,mncs_score,mncs_rank,mncs_pct,rank_shift,
// pct_shift,q_fss,q_mncs
void write_comparison_csv(std::ostream& out, const ComparisonTable& table);

void write_divergence_csv(std::ostream& out, std::span<const ScopeComparison> scopes);
void write_quartile_csv(std::ostream& out, std::span<const ScopeComparison> scopes);
void write_dispersion_csv(std::ostream& out, std::span<const ScopeComparison> scopes);
void write_range_csv(std::ostream& out, std::span<const RangeSummary> ranges);

// SDS comparisons grouped by UDA.
std::vector<RangeSummary> ranges_by_uda(std::span<const ScopeComparison> sds_scopes);

// Publication-style tables: 3-decimal scores, 1-decimal percentiles, ↑/↓/= shift glyphs.
void write_markdown_report(std::ostream& out, Level level, std::span<const ScopeComparison> scopes,
                           std::span<const RangeSummary> ranges);

}  // namespace rankdiff
