#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankdiff/baselines.hpp"
#include "rankdiff/corpus.hpp"

namespace rankdiff {

enum class Indicator : std::uint8_t { kFss, kMncs };

std::string_view to_string(Indicator indicator);

// Salary- and tenure-normalised fractional impact of one professor.
struct ProfessorScore {
  std::string professor_id;
  double fss_p = 0.0;
  int term_count = 0;  // normalizable publications summed
  double t = 0.0;
  double salary = 0.0;
};

// Publications that could not be normalised, per run.
struct ExclusionReport {
  std::vector<std::string> missing_baseline_pubs;
  std::vector<std::string> unstandardizable_sds;  // SDSs without a productive professor
};

// Computes FSS_P over the professor's authored publications in `corpus`.
// Publications without a baseline are skipped and appended to `exclusions`.
// Throws MissingSalary or NonPositiveTenure.
ProfessorScore fss_professor(const Professor& prof, const Corpus& corpus,
                             const ScalingFactorTable& table, const SalaryTable& salaries,
                             ExclusionReport* exclusions = nullptr);

// Scores for every professor, indexed like corpus.professors().
std::vector<ProfessorScore> compute_professor_scores(const Corpus& corpus,
                                                     const ScalingFactorTable& table,
                                                     ExclusionReport* exclusions = nullptr);

// National mean FSS_P over the SDS's productive (fss_p > 0) professors.
// Throws NoProductiveProfessors.
double sds_average_fss(const Corpus& corpus, std::string_view sds_code,
                       std::span<const ProfessorScore> scores);

// SDS code -> national average of productive professors.  SDSs with no productive
// professor are absent and listed in `exclusions`.
using SdsStandards = std::map<std::string, double, std::less<>>;
SdsStandards compute_sds_standards(const Corpus& corpus, std::span<const ProfessorScore> scores,
                                   ExclusionReport* exclusions = nullptr);

struct UnitScore {
  std::string university_id;
  std::string scope_code;
  Indicator indicator = Indicator::kFss;
  double score = 0.0;
  int research_staff = 0;         // RS, FSS only
  double publication_weight = 0;  // sum of m_i / n_i, MNCS only
  // Secondary ordering key among equal scores (e.g. a published rank); lower ranks first.
  std::optional<double> tie_break;
};

// FSS_U: mean of SDS-standardised FSS_P over the unit's in-scope professors.
// Professors whose SDS has no standard are dropped from numerator and RS.
// Throws NoProductiveProfessors if no professor remains.
UnitScore fss_unit(std::string_view university_id, Level level, std::string_view scope_code,
                   const Corpus& corpus, std::span<const ProfessorScore> scores,
                   const SdsStandards& standards);

// MNCS: impact weighted by m_i / n_i over the unit's in-scope publications.
// Throws NoPublications when the weight sum is zero.
UnitScore mncs_unit(std::string_view university_id, Level level, std::string_view scope_code,
                    const Corpus& corpus, const ScalingFactorTable& table);

struct Provenance {
  std::string corpus_digest;
  std::string baseline_digest;
  std::string config;
};

struct ScoreBoard {
  Level level = Level::kSds;
  std::string scope_code;
  Indicator indicator = Indicator::kFss;
  std::vector<UnitScore> units;
  Provenance provenance;
};

// FSS and MNCS boards over the same unit set.
struct ScopeBoards {
  ScoreBoard fss;
  ScoreBoard mncs;
  std::vector<std::string> warnings;
};

// Everything the unit scorers share for one filtered corpus.
struct ScoringContext {
  const Corpus* corpus = nullptr;
  const ScalingFactorTable* table = nullptr;
  std::vector<ProfessorScore> professor_scores;
  SdsStandards standards;
  ExclusionReport exclusions;
  Provenance provenance;

  static ScoringContext build(const Corpus& corpus, const ScalingFactorTable& table,
                              std::string config_summary = {});
};

// Throws ScopeNotRankable when fewer units than the level requires survive.
ScopeBoards score_scope(const ScoringContext& ctx, Level level, std::string_view scope_code,
                        const FilterConfig& cfg);

ScoreBoard scoreboard(const ScoringContext& ctx, Indicator indicator, Level level,
                      std::string_view scope_code, const FilterConfig& cfg);

struct SkippedScope {
  std::string scope_code;
  std::string reason;
};

struct LevelScores {
  Level level = Level::kSds;
  std::vector<ScopeBoards> boards;
  std::vector<SkippedScope> not_rankable;
};

LevelScores score_level(const ScoringContext& ctx, Level level, const FilterConfig& cfg);

}  // namespace rankdiff
