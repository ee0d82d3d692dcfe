#include "rankdiff/indicators.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

#include "rankdiff/log.hpp"

namespace rankdiff {

std::string_view to_string(Indicator indicator) {
  return indicator == Indicator::kFss ? "FSS" : "MNCS";
}

ProfessorScore fss_professor(const Professor& prof, const Corpus& corpus,
                             const ScalingFactorTable& table, const SalaryTable& salaries,
                             ExclusionReport* exclusions) {
  auto sal = salaries.find(prof.academic_rank);
  if (sal == salaries.end() || !(sal->second > 0)) {
    throw Error(ErrorCode::kMissingSalary,
                fmt::format("no salary for rank '{}' of professor '{}'", prof.academic_rank,
                            prof.professor_id));
  }
  if (!(prof.years_on_staff > 0)) {
    throw Error(ErrorCode::kNonPositiveTenure,
                fmt::format("professor '{}' has years_on_staff {}", prof.professor_id,
                            prof.years_on_staff));
  }
  ProfessorScore s{prof.professor_id, 0.0, 0, prof.years_on_staff, sal->second};
  const auto idx = corpus.professor_index(prof.professor_id);
  if (!idx) return s;

  double sum = 0.0;
  for (const auto pub_idx : corpus.publications_of(*idx)) {
    const auto& pub = corpus.publications()[pub_idx];
    const auto impact = try_normalized_impact(pub, table);
    if (!impact) {
      if (exclusions) exclusions->missing_baseline_pubs.push_back(pub.pub_id);
      continue;
    }
    sum += *impact / pub.n_authors_total;
    ++s.term_count;
  }
  s.fss_p = sum / (s.salary * s.t);
  return s;
}

std::vector<ProfessorScore> compute_professor_scores(const Corpus& corpus,
                                                     const ScalingFactorTable& table,
                                                     ExclusionReport* exclusions) {
  std::vector<ProfessorScore> out;
  out.reserve(corpus.professors().size());
  ExclusionReport local;
  for (const auto& prof : corpus.professors()) {
    out.push_back(fss_professor(prof, corpus, table, corpus.salaries(), &local));
  }
  if (exclusions) {
    // A co-authored publication is reported once.
    std::set<std::string> unique(local.missing_baseline_pubs.begin(),
                                 local.missing_baseline_pubs.end());
    exclusions->missing_baseline_pubs.insert(exclusions->missing_baseline_pubs.end(),
                                             unique.begin(), unique.end());
  }
  return out;
}

double sds_average_fss(const Corpus& corpus, std::string_view sds_code,
                       std::span<const ProfessorScore> scores) {
  double sum = 0.0;
  std::size_t n = 0;
  const auto profs = corpus.professors();
  for (std::size_t i = 0; i < profs.size() && i < scores.size(); ++i) {
    if (profs[i].sds_code != sds_code || !(scores[i].fss_p > 0)) continue;
    sum += scores[i].fss_p;
    ++n;
  }
  if (n == 0) {
    throw Error(ErrorCode::kNoProductiveProfessors,
                fmt::format("SDS '{}' has no productive professor", sds_code));
  }
  return sum / static_cast<double>(n);
}

SdsStandards compute_sds_standards(const Corpus& corpus, std::span<const ProfessorScore> scores,
                                   ExclusionReport* exclusions) {
  std::map<std::string, std::pair<double, std::size_t>> acc;
  std::set<std::string> present;
  const auto profs = corpus.professors();
  for (std::size_t i = 0; i < profs.size() && i < scores.size(); ++i) {
    present.insert(profs[i].sds_code);
    if (scores[i].fss_p > 0) {
      auto& [sum, n] = acc[profs[i].sds_code];
      sum += scores[i].fss_p;
      ++n;
    }
  }
  SdsStandards out;
  for (const auto& code : present) {
    auto it = acc.find(code);
    if (it == acc.end()) {
      log::warn("SDS {} has no productive professor; its professors are excluded from FSS", code);
      if (exclusions) exclusions->unstandardizable_sds.push_back(code);
      continue;
    }
    out.emplace(code, it->second.first / static_cast<double>(it->second.second));
  }
  return out;
}

UnitScore fss_unit(std::string_view university_id, Level level, std::string_view scope_code,
                   const Corpus& corpus, std::span<const ProfessorScore> scores,
                   const SdsStandards& standards) {
  double sum = 0.0;
  int rs = 0;
  const auto profs = corpus.professors();
  for (std::size_t i = 0; i < profs.size() && i < scores.size(); ++i) {
    const auto& p = profs[i];
    if (p.university_id != university_id || !corpus.in_scope(p, level, scope_code)) continue;
    auto it = standards.find(p.sds_code);
    if (it == standards.end()) continue;
    sum += scores[i].fss_p / it->second;
    ++rs;
  }
  if (rs == 0) {
    throw Error(ErrorCode::kNoProductiveProfessors,
                fmt::format("university '{}' has no standardizable professor in {} '{}'",
                            university_id, to_string(level), scope_code));
  }
  UnitScore u;
  u.university_id = std::string(university_id);
  u.scope_code = std::string(scope_code);
  u.indicator = Indicator::kFss;
  u.score = sum / rs;
  u.research_staff = rs;
  return u;
}

UnitScore mncs_unit(std::string_view university_id, Level level, std::string_view scope_code,
                    const Corpus& corpus, const ScalingFactorTable& table) {
  // publication index -> m_i
  std::map<std::size_t, int> authors_here;
  const auto profs = corpus.professors();
  for (std::size_t i = 0; i < profs.size(); ++i) {
    const auto& p = profs[i];
    if (p.university_id != university_id || !corpus.in_scope(p, level, scope_code)) continue;
    for (const auto pub : corpus.publications_of(i)) ++authors_here[pub];
  }
  double num = 0.0;
  double den = 0.0;
  for (const auto& [pub_idx, m] : authors_here) {
    const auto& pub = corpus.publications()[pub_idx];
    const auto impact = try_normalized_impact(pub, table);
    if (!impact) continue;
    const double w = static_cast<double>(m) / pub.n_authors_total;
    num += *impact * w;
    den += w;
  }
  if (!(den > 0)) {
    throw Error(ErrorCode::kNoPublications,
                fmt::format("university '{}' has no normalizable publication in {} '{}'",
                            university_id, to_string(level), scope_code));
  }
  UnitScore u;
  u.university_id = std::string(university_id);
  u.scope_code = std::string(scope_code);
  u.indicator = Indicator::kMncs;
  u.score = num / den;
  u.publication_weight = den;
  return u;
}

ScoringContext ScoringContext::build(const Corpus& corpus, const ScalingFactorTable& table,
                                     std::string config_summary) {
  ScoringContext ctx;
  ctx.corpus = &corpus;
  ctx.table = &table;
  ctx.professor_scores = compute_professor_scores(corpus, table, &ctx.exclusions);
  ctx.standards = compute_sds_standards(corpus, ctx.professor_scores, &ctx.exclusions);
  ctx.provenance = Provenance{corpus.digest(), table.digest(), std::move(config_summary)};
  if (!ctx.exclusions.missing_baseline_pubs.empty()) {
    log::warn("{} publication(s) lack a baseline and were excluded",
              ctx.exclusions.missing_baseline_pubs.size());
  }
  return ctx;
}

ScopeBoards score_scope(const ScoringContext& ctx, Level level, std::string_view scope_code,
                        const FilterConfig& cfg) {
  const auto& corpus = *ctx.corpus;
  ScopeBoards out;
  for (auto* b : {&out.fss, &out.mncs}) {
    b->level = level;
    b->scope_code = std::string(scope_code);
    b->provenance = ctx.provenance;
  }
  out.fss.indicator = Indicator::kFss;
  out.mncs.indicator = Indicator::kMncs;

  const auto units = eligible_units(corpus, level, scope_code, cfg);
  for (const auto& unit : units) {
    std::optional<UnitScore> fss, mncs;
    try {
      fss = fss_unit(unit.university_id, level, scope_code, corpus, ctx.professor_scores,
                     ctx.standards);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoProductiveProfessors) throw;
      out.warnings.push_back(fmt::format("dropped from FSS: {}", e.what()));
    }
    try {
      mncs = mncs_unit(unit.university_id, level, scope_code, corpus, *ctx.table);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoPublications) throw;
      out.warnings.push_back(fmt::format("dropped from MNCS: {}", e.what()));
    }
    if (fss && mncs) {
      out.fss.units.push_back(std::move(*fss));
      out.mncs.units.push_back(std::move(*mncs));
    } else if (fss || mncs) {
      out.warnings.push_back(fmt::format("{} {} '{}': university '{}' lacks one indicator and is "
                                         "left out of both boards",
                                         to_string(level), "scope", scope_code,
                                         unit.university_id));
    }
  }
  for (const auto& w : out.warnings) log::info("{}", w);

  if (!is_rankable(out.fss.units.size(), level, cfg)) {
    throw Error(ErrorCode::kScopeNotRankable,
                fmt::format("{} '{}' has {} scorable unit(s); at least {} required",
                            to_string(level), scope_code, out.fss.units.size(),
                            level == Level::kSds ? std::max(cfg.min_units_to_rank, 1) : 1));
  }
  return out;
}

ScoreBoard scoreboard(const ScoringContext& ctx, Indicator indicator, Level level,
                      std::string_view scope_code, const FilterConfig& cfg) {
  auto boards = score_scope(ctx, level, scope_code, cfg);
  return indicator == Indicator::kFss ? std::move(boards.fss) : std::move(boards.mncs);
}

LevelScores score_level(const ScoringContext& ctx, Level level, const FilterConfig& cfg) {
  LevelScores out;
  out.level = level;
  for (const auto& scope : scopes_at(*ctx.corpus, level)) {
    try {
      out.boards.push_back(score_scope(ctx, level, scope, cfg));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kScopeNotRankable) throw;
      out.not_rankable.push_back(SkippedScope{scope, e.what()});
    }
  }
  return out;
}

}  // namespace rankdiff
