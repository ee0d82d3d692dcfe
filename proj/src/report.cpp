#include "rankdiff/report.hpp"

#include <fmt/format.h>

#include <map>
#include <ostream>
#include <set>

#include "rankdiff/csv.hpp"

namespace rankdiff {

namespace {

std::string fixed(double v, int decimals) {
  const double r = round_half_away(v, decimals);
  // avoid "-0.0"
  return fmt::format("{:.{}f}", r == 0.0 ? 0.0 : r, decimals);
}

std::string signed_fixed(double v, int decimals) {
  const double r = round_half_away(v, decimals);
  if (r == 0.0) return fixed(0.0, decimals);
  return fmt::format("{:+.{}f}", r, decimals);
}

std::string opt_real(const std::optional<double>& v) { return v ? csv::format_real(*v) : ""; }

std::string opt_fixed(const std::optional<double>& v, int decimals) {
  return v ? fixed(*v, decimals) : "n/a";
}

}  // namespace

ScopeComparison compare_scope(const ScoreBoard& fss, const ScoreBoard& mncs) {
  ScopeComparison out;
  out.level = fss.level;
  out.scope_code = fss.scope_code;
  out.fss_ranked = rank(fss);
  out.mncs_ranked = rank(mncs);
  out.table = compare(out.fss_ranked, out.mncs_ranked);
  out.shifts = shift_stats(out.table, fss.scope_code);
  out.quartiles = quartile_stats(out.table, fss.scope_code);

  for (const auto* ranked : {&out.fss_ranked, &out.mncs_ranked}) {
    const auto name = ranked == &out.fss_ranked ? "FSS" : "MNCS";
    for (const auto& group : ranked->tie_groups) {
      std::string ids;
      for (const auto& id : group) ids += (ids.empty() ? "" : ", ") + id;
      out.warnings.push_back(fmt::format("{} '{}': {} tie among {}", to_string(fss.level),
                                         fss.scope_code, name, ids));
    }
  }
  if (out.table.n < 2) {
    out.warnings.push_back(fmt::format("{} '{}': single unit, percentiles and quartiles are "
                                       "degenerate",
                                       to_string(fss.level), fss.scope_code));
  }
  if (!out.shifts.pearson) {
    out.warnings.push_back(fmt::format("{} '{}': correlations omitted ({} unit(s) or constant "
                                       "scores)",
                                       to_string(fss.level), fss.scope_code, out.table.n));
  }
  try {
    out.fss_dispersion = dispersion(fss);
    out.mncs_dispersion = dispersion(mncs);
  } catch (const Error& e) {
    out.warnings.push_back(fmt::format("{} '{}': dispersion omitted: {}", to_string(fss.level),
                                       fss.scope_code, e.what()));
    out.fss_dispersion.reset();
    out.mncs_dispersion.reset();
  }
  return out;
}

ReplayBoards read_score_pairs(const std::filesystem::path& path, Level level,
                              const std::string& scope_code) {
  const auto t = csv::Table::read(path);
  const auto c_unit = t.has_column("unit") ? t.column("unit") : t.column("university_id");
  const auto c_fss = t.column("fss_score");
  const auto c_mncs = t.column("mncs_score");
  std::optional<std::size_t> c_staff, c_fr, c_mr;
  if (t.has_column("staff")) c_staff = t.column("staff");
  else if (t.has_column("research_staff")) c_staff = t.column("research_staff");
  if (t.has_column("fss_rank")) c_fr = t.column("fss_rank");
  if (t.has_column("mncs_rank")) c_mr = t.column("mncs_rank");

  ReplayBoards out;
  out.fss.level = out.mncs.level = level;
  out.fss.scope_code = out.mncs.scope_code = scope_code;
  out.fss.indicator = Indicator::kFss;
  out.mncs.indicator = Indicator::kMncs;
  std::set<std::string> seen;
  for (const auto& row : t.rows()) {
    const auto& unit = t.text(row, c_unit);
    if (unit.empty()) throw LoadError(t.source(), row.line, t.header()[c_unit], "empty unit id");
    if (!seen.insert(unit).second) {
      throw LoadError(t.source(), row.line, t.header()[c_unit], "duplicate unit '" + unit + "'");
    }
    UnitScore f, m;
    f.university_id = m.university_id = unit;
    f.scope_code = m.scope_code = scope_code;
    f.indicator = Indicator::kFss;
    m.indicator = Indicator::kMncs;
    f.score = t.real(row, c_fss);
    m.score = t.real(row, c_mncs);
    if (f.score < 0 || m.score < 0) {
      throw LoadError(t.source(), row.line, f.score < 0 ? "fss_score" : "mncs_score",
                      "scores must be non-negative");
    }
    if (c_staff && !t.text(row, *c_staff).empty()) {
      f.research_staff = static_cast<int>(t.real(row, *c_staff));
    }
    if (c_fr && !t.text(row, *c_fr).empty()) f.tie_break = t.real(row, *c_fr);
    if (c_mr && !t.text(row, *c_mr).empty()) m.tie_break = t.real(row, *c_mr);
    out.fss.units.push_back(std::move(f));
    out.mncs.units.push_back(std::move(m));
  }
  if (out.fss.units.empty()) {
    throw Error(ErrorCode::kEmptyBoard, path.string() + ": no score rows");
  }
  return out;
}

void write_scoreboard_csv(std::ostream& out, const ScoreBoard& board) {
  csv::Writer w(out);
  w.row({"level", "scope_code", "university_id", "indicator", "score", "research_staff_or_weight"});
  for (const auto& u : board.units) {
    w.row({std::string(to_string(board.level)), board.scope_code, u.university_id,
           std::string(to_string(board.indicator)), csv::format_real(u.score),
           board.indicator == Indicator::kFss ? std::to_string(u.research_staff)
                                              : csv::format_real(u.publication_weight)});
  }
}

void write_paired_scoreboard_csv(std::ostream& out, const ScopeBoards& boards) {
  csv::Writer w(out);
  w.row({"level", "scope_code", "university_id", "fss_score", "research_staff", "mncs_score",
         "publication_weight"});
  for (std::size_t i = 0; i < boards.fss.units.size(); ++i) {
    const auto& f = boards.fss.units[i];
    const auto& m = boards.mncs.units.at(i);
    w.row({std::string(to_string(boards.fss.level)), boards.fss.scope_code, f.university_id,
           csv::format_real(f.score), std::to_string(f.research_staff), csv::format_real(m.score),
           csv::format_real(m.publication_weight)});
  }
}

void write_comparison_csv(std::ostream& out, const ComparisonTable& table) {
  csv::Writer w(out);
  w.row({"university", "staff", "fss_score", "fss_rank", "fss_pct", "mncs_score", "mncs_rank",
         "mncs_pct", "rank_shift", "pct_shift", "q_fss", "q_mncs"});
  for (const auto& r : table.rows) {
    w.row({r.unit_id, std::to_string(r.staff), csv::format_real(r.fss.score),
           std::to_string(r.fss.rank), csv::format_real(r.fss.percentile),
           csv::format_real(r.mncs.score), std::to_string(r.mncs.rank),
           csv::format_real(r.mncs.percentile), std::to_string(r.rank_shift),
           csv::format_real(r.percentile_shift), std::to_string(r.quartile_fss),
           std::to_string(r.quartile_mncs)});
  }
}

void write_divergence_csv(std::ostream& out, std::span<const ScopeComparison> scopes) {
  csv::Writer w(out);
  w.row({"scope", "n_units", "pearson", "spearman", "pct_shifting_rank", "mean_abs_shift",
         "mean_pct_shift", "median_abs_shift", "median_pct_shift", "max_abs_shift",
         "max_pct_shift"});
  for (const auto& s : scopes) {
    const auto& d = s.shifts;
    w.row({s.scope_code, std::to_string(d.n_units), opt_real(d.pearson), opt_real(d.spearman),
           csv::format_real(d.pct_shifting_rank), csv::format_real(d.mean_abs_shift),
           csv::format_real(d.mean_pct_shift), csv::format_real(d.median_abs_shift),
           csv::format_real(d.median_pct_shift), std::to_string(d.max_abs_shift),
           csv::format_real(d.max_pct_shift)});
  }
}

void write_quartile_csv(std::ostream& out, std::span<const ScopeComparison> scopes) {
  csv::Writer w(out);
  w.row({"scope", "n_units", "pct_shifting_quartile", "mean_abs_quartile_shift",
         "max_quartile_shift", "pct_leaving_q1"});
  for (const auto& s : scopes) {
    const auto& q = s.quartiles;
    w.row({s.scope_code, std::to_string(q.n_units), csv::format_real(q.pct_shifting_quartile),
           csv::format_real(q.mean_abs_quartile_shift), std::to_string(q.max_quartile_shift),
           csv::format_real(q.pct_leaving_q1)});
  }
}

void write_dispersion_csv(std::ostream& out, std::span<const ScopeComparison> scopes) {
  csv::Writer w(out);
  w.row({"scope", "n_units", "fss_mean", "fss_std_dev", "fss_cv", "mncs_mean", "mncs_std_dev",
         "mncs_cv"});
  for (const auto& s : scopes) {
    if (!s.fss_dispersion || !s.mncs_dispersion) continue;
    const auto& f = *s.fss_dispersion;
    const auto& m = *s.mncs_dispersion;
    w.row({s.scope_code, std::to_string(f.n), csv::format_real(f.mean),
           csv::format_real(f.std_dev), csv::format_real(f.coefficient_of_variation),
           csv::format_real(m.mean), csv::format_real(m.std_dev),
           csv::format_real(m.coefficient_of_variation)});
  }
}

void write_range_csv(std::ostream& out, std::span<const RangeSummary> ranges) {
  csv::Writer w(out);
  w.row({"uda", "n_sds", "pct_shifting_min", "pct_shifting_max", "mean_pct_shift_min",
         "mean_pct_shift_max", "max_pct_shift_min", "max_pct_shift_max", "pearson_min",
         "pearson_max", "spearman_min", "spearman_max"});
  for (const auto& r : ranges) {
    auto lo = [](const std::optional<StatRange>& x) { return x ? csv::format_real(x->min) : ""; };
    auto hi = [](const std::optional<StatRange>& x) { return x ? csv::format_real(x->max) : ""; };
    w.row({r.uda_code, std::to_string(r.n_sds), csv::format_real(r.pct_shifting_rank.min),
           csv::format_real(r.pct_shifting_rank.max), csv::format_real(r.mean_pct_shift.min),
           csv::format_real(r.mean_pct_shift.max), csv::format_real(r.max_pct_shift.min),
           csv::format_real(r.max_pct_shift.max), lo(r.pearson), hi(r.pearson), lo(r.spearman),
           hi(r.spearman)});
  }
}

std::vector<RangeSummary> ranges_by_uda(std::span<const ScopeComparison> sds_scopes) {
  std::map<std::string, std::vector<DivergenceSummary>> grouped;
  for (const auto& s : sds_scopes) grouped[s.uda_code].push_back(s.shifts);
  std::vector<RangeSummary> out;
  for (const auto& [uda, list] : grouped) out.push_back(range_summary(list, uda));
  return out;
}

void write_markdown_report(std::ostream& out, Level level, std::span<const ScopeComparison> scopes,
                           std::span<const RangeSummary> ranges) {
  out << "# FSS vs MNCS: " << to_string(level) << " level\n\n";

  for (const auto& s : scopes) {
    out << fmt::format("## {} {} ({} units)\n\n", to_string(level), s.scope_code, s.table.n);
    out << "| ID | Staff | FSS score | FSS rank | FSS pct | MNCS score | MNCS rank | MNCS pct "
           "| Rank shift | Percentile shift |\n";
    out << "|---|---:|---:|---:|---:|---:|---:|---:|:---:|---:|\n";
    for (const auto& r : s.table.rows) {
      out << fmt::format("| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n", r.unit_id,
                         r.staff, fixed(r.fss.score, 3), r.fss.rank, fixed(r.fss.percentile, 1),
                         fixed(r.mncs.score, 3), r.mncs.rank, fixed(r.mncs.percentile, 1),
                         shift_glyph(r.rank_shift), signed_fixed(r.percentile_shift, 1));
    }
    out << '\n';
  }

  out << "## Rank shifts and correlations (percentile shift in brackets)\n\n";
  out << "| Scope | Units | Pearson | Spearman | % shifting rank | Average shift | Median shift "
         "| Max shift |\n";
  out << "|---|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& s : scopes) {
    const auto& d = s.shifts;
    out << fmt::format("| {} | {} | {} | {} | {}% | {} ({}) | {} ({}) | {} ({}) |\n", s.scope_code,
                       d.n_units, opt_fixed(d.pearson, 3), opt_fixed(d.spearman, 3),
                       fixed(d.pct_shifting_rank, 1), fixed(d.mean_abs_shift, 1),
                       fixed(d.mean_pct_shift, 1), fmt::format("{:g}", d.median_abs_shift),
                       fixed(d.median_pct_shift, 1), d.max_abs_shift, fixed(d.max_pct_shift, 1));
  }
  out << '\n';

  out << "## Quartile shifts\n\n";
  out << "| Scope | Units | Shifting quartile | Average quartile shift | Max quartile shift | "
         "Shifting from Q1 |\n";
  out << "|---|---:|---:|---:|---:|---:|\n";
  for (const auto& s : scopes) {
    const auto& q = s.quartiles;
    out << fmt::format("| {} | {} | {}% | {} | {} | {}% |\n", s.scope_code, q.n_units,
                       fixed(q.pct_shifting_quartile, 1), fixed(q.mean_abs_quartile_shift, 1),
                       q.max_quartile_shift, fixed(q.pct_leaving_q1, 1));
  }
  out << '\n';

  out << "## Score distributions\n\n";
  out << "| Scope | FSS average | FSS std dev | FSS variation coeff. | MNCS average | MNCS std dev "
         "| MNCS variation coeff. |\n";
  out << "|---|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& s : scopes) {
    if (!s.fss_dispersion || !s.mncs_dispersion) continue;
    const auto& f = *s.fss_dispersion;
    const auto& m = *s.mncs_dispersion;
    out << fmt::format("| {} | {} | {} | {} | {} | {} | {} |\n", s.scope_code, fixed(f.mean, 3),
                       fixed(f.std_dev, 3), fixed(f.coefficient_of_variation, 3), fixed(m.mean, 3),
                       fixed(m.std_dev, 3), fixed(m.coefficient_of_variation, 3));
  }
  out << '\n';

  if (!ranges.empty()) {
    out << "## Ranges over SDSs by UDA (min-max)\n\n";
    out << "| UDA | SDSs | Shifting (%) | Average shift (pct) | Max shift (pct) | Pearson | Spearman "
           "|\n";
    out << "|---|---:|---|---|---|---|---|\n";
    auto range = [](const StatRange& r, int decimals) {
      return fmt::format("({}-{})", fixed(r.min, decimals), fixed(r.max, decimals));
    };
    for (const auto& r : ranges) {
      out << fmt::format("| {} | {} | {} | {} | {} | {} | {} |\n", r.uda_code, r.n_sds,
                         range(r.pct_shifting_rank, 1), range(r.mean_pct_shift, 1),
                         range(r.max_pct_shift, 1), r.pearson ? range(*r.pearson, 3) : "n/a",
                         r.spearman ? range(*r.spearman, 3) : "n/a");
    }
    out << '\n';
  }
}

}  // namespace rankdiff
