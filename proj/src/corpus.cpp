#include "rankdiff/corpus.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "rankdiff/csv.hpp"
#include "rankdiff/digest.hpp"

namespace rankdiff {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string> split_categories(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto bar = text.find('|', start);
    if (bar == std::string_view::npos) bar = text.size();
    auto piece = text.substr(start, bar - start);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    if (!piece.empty()) out.emplace_back(piece);
    start = bar + 1;
  }
  return out;
}

std::string join_categories(const std::vector<std::string>& cats) {
  std::string out;
  for (std::size_t i = 0; i < cats.size(); ++i) {
    if (i) out.push_back('|');
    out += cats[i];
  }
  return out;
}

std::size_t line_or_zero(const std::vector<std::size_t>* lines, std::size_t i) {
  return lines && i < lines->size() ? (*lines)[i] : 0;
}

void write_publications(std::ostream& out, const CorpusData& d) {
  csv::Writer w(out);
  w.row({"pub_id", "year", "doc_type", "subject_categories", "citations", "n_authors_total"});
  for (const auto& p : d.publications) {
    w.row({p.pub_id, std::to_string(p.year), p.doc_type, join_categories(p.subject_categories),
           std::to_string(p.citations), std::to_string(p.n_authors_total)});
  }
}

void write_authorships(std::ostream& out, const CorpusData& d) {
  csv::Writer w(out);
  w.row({"pub_id", "professor_id"});
  for (const auto& a : d.authorships) w.row({a.pub_id, a.professor_id});
}

void write_professors(std::ostream& out, const CorpusData& d) {
  csv::Writer w(out);
  w.row({"professor_id", "university_id", "sds_code", "academic_rank", "years_on_staff"});
  for (const auto& p : d.professors) {
    w.row({p.professor_id, p.university_id, p.sds_code, p.academic_rank,
           csv::format_real(p.years_on_staff)});
  }
}

void write_fields(std::ostream& out, const CorpusData& d) {
  csv::Writer w(out);
  w.row({"sds_code", "sds_name", "uda_code", "uda_name"});
  for (const auto& [code, info] : d.fields.sds) {
    auto it = d.fields.uda_names.find(info.uda_code);
    w.row({code, info.name, info.uda_code, it == d.fields.uda_names.end() ? "" : it->second});
  }
}

void write_salaries(std::ostream& out, const CorpusData& d) {
  csv::Writer w(out);
  w.row({"academic_rank", "avg_yearly_salary"});
  for (const auto& [rank, salary] : d.salaries) w.row({rank, csv::format_real(salary)});
}

}  // namespace

const SdsInfo* FieldScheme::find_sds(std::string_view code) const {
  auto it = sds.find(std::string(code));
  return it == sds.end() ? nullptr : &it->second;
}

std::string_view to_string(Level level) {
  switch (level) {
    case Level::kSds: return "SDS";
    case Level::kUda: return "UDA";
    case Level::kOverall: return "OVERALL";
  }
  return "?";
}

Level parse_level(std::string_view text) {
  const auto l = lower(text);
  if (l == "sds") return Level::kSds;
  if (l == "uda") return Level::kUda;
  if (l == "overall") return Level::kOverall;
  throw Error(ErrorCode::kConfig, fmt::format("unknown level '{}'", text));
}

int FilterConfig::min_professors(Level level) const {
  switch (level) {
    case Level::kSds: return min_professors_sds;
    case Level::kUda: return min_professors_uda;
    case Level::kOverall: return min_professors_overall;
  }
  return 0;
}

std::vector<Violation> validate(const CorpusData& d, const SourceMap* src) {
  std::vector<Violation> out;
  const std::string pub_file = src ? src->publications_file : "publications";
  const std::string auth_file = src ? src->authorships_file : "authorships";
  const std::string prof_file = src ? src->professors_file : "professors";
  const std::string field_file = src ? src->fields_file : "fields";
  const std::string sal_file = src ? src->salaries_file : "salaries";
  auto add = [&](const std::string& file, std::size_t line, std::string field, std::string msg) {
    out.push_back(Violation{file, line, std::move(field), std::move(msg)});
  };

  if (d.window.start_year > d.window.end_year) {
    add("", 0, "window", fmt::format("start year {} after end year {}", d.window.start_year,
                                     d.window.end_year));
  }

  for (const auto& [code, info] : d.fields.sds) {
    if (!d.fields.uda_names.contains(info.uda_code)) {
      add(field_file, 0, "uda_code", fmt::format("SDS {} maps to unknown UDA '{}'", code,
                                                 info.uda_code));
    }
  }
  for (const auto& [rank, salary] : d.salaries) {
    if (!(salary > 0)) add(sal_file, 0, "avg_yearly_salary", "salary of rank '" + rank + "' must be positive");
  }

  std::unordered_map<std::string, std::size_t> pubs;
  const auto* pub_lines = src ? &src->publication_lines : nullptr;
  for (std::size_t i = 0; i < d.publications.size(); ++i) {
    const auto& p = d.publications[i];
    const auto line = line_or_zero(pub_lines, i);
    if (p.pub_id.empty()) add(pub_file, line, "pub_id", "empty publication id");
    if (!pubs.emplace(p.pub_id, i).second) {
      add(pub_file, line, "pub_id", "duplicate publication id '" + p.pub_id + "'");
    }
    if (p.n_authors_total < 1) add(pub_file, line, "n_authors_total", "must be at least 1");
    if (p.citations < 0) add(pub_file, line, "citations", "must be non-negative");
    if (p.subject_categories.empty()) add(pub_file, line, "subject_categories", "no subject category");
    std::set<std::string> seen(p.subject_categories.begin(), p.subject_categories.end());
    if (seen.size() != p.subject_categories.size()) {
      add(pub_file, line, "subject_categories", "repeated subject category");
    }
    if (p.doc_type.empty()) add(pub_file, line, "doc_type", "empty document type");
  }

  std::unordered_set<std::string> profs;
  const auto* prof_lines = src ? &src->professor_lines : nullptr;
  const double window_len = d.window.length();
  for (std::size_t i = 0; i < d.professors.size(); ++i) {
    const auto& p = d.professors[i];
    const auto line = line_or_zero(prof_lines, i);
    if (p.professor_id.empty()) add(prof_file, line, "professor_id", "empty professor id");
    if (!profs.insert(p.professor_id).second) {
      add(prof_file, line, "professor_id", "duplicate professor id '" + p.professor_id + "'");
    }
    if (p.university_id.empty()) add(prof_file, line, "university_id", "empty university id");
    if (!d.fields.sds.contains(p.sds_code)) {
      add(prof_file, line, "sds_code", "unknown SDS '" + p.sds_code + "'");
    }
    if (!d.salaries.contains(p.academic_rank)) {
      add(prof_file, line, "academic_rank", "rank '" + p.academic_rank + "' not in salary table");
    }
    if (!(p.years_on_staff > 0) || p.years_on_staff > window_len) {
      add(prof_file, line, "years_on_staff",
          fmt::format("{} outside (0, {}]", p.years_on_staff, window_len));
    }
  }

  std::set<std::pair<std::string, std::string>> pairs;
  std::unordered_map<std::string, int> per_pub;
  const auto* auth_lines = src ? &src->authorship_lines : nullptr;
  for (std::size_t i = 0; i < d.authorships.size(); ++i) {
    const auto& a = d.authorships[i];
    const auto line = line_or_zero(auth_lines, i);
    if (!pubs.contains(a.pub_id)) {
      add(auth_file, line, "pub_id", "authorship references missing publication '" + a.pub_id + "'");
    }
    if (!profs.contains(a.professor_id)) {
      add(auth_file, line, "professor_id",
          "authorship references missing professor '" + a.professor_id + "'");
    }
    if (!pairs.emplace(a.pub_id, a.professor_id).second) {
      add(auth_file, line, "", "duplicate authorship (" + a.pub_id + ", " + a.professor_id + ")");
    }
    ++per_pub[a.pub_id];
  }
  for (const auto& [pub_id, count] : per_pub) {
    auto it = pubs.find(pub_id);
    if (it == pubs.end()) continue;
    const auto& p = d.publications[it->second];
    if (count > p.n_authors_total) {
      add(pub_file, line_or_zero(pub_lines, it->second), "n_authors_total",
          fmt::format("publication '{}' has {} authorships but n_authors_total={}", pub_id, count,
                      p.n_authors_total));
    }
  }
  return out;
}

Corpus::Corpus(CorpusData data) : data_(std::move(data)) {
  pub_index_.reserve(data_.publications.size());
  for (std::size_t i = 0; i < data_.publications.size(); ++i) {
    pub_index_.emplace(data_.publications[i].pub_id, i);
  }
  prof_index_.reserve(data_.professors.size());
  for (std::size_t i = 0; i < data_.professors.size(); ++i) {
    prof_index_.emplace(data_.professors[i].professor_id, i);
  }
  pubs_by_professor_.resize(data_.professors.size());
  professors_by_pub_.resize(data_.publications.size());
  for (const auto& a : data_.authorships) {
    const auto pub = pub_index_.at(a.pub_id);
    const auto prof = prof_index_.at(a.professor_id);
    pubs_by_professor_[prof].push_back(pub);
    professors_by_pub_[pub].push_back(prof);
  }
  std::set<std::string> unis;
  for (const auto& p : data_.professors) unis.insert(p.university_id);
  universities_.assign(unis.begin(), unis.end());
}

Corpus Corpus::build(CorpusData data, const SourceMap* sources) {
  auto violations = validate(data, sources);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return Corpus(std::move(data));
}

std::optional<std::size_t> Corpus::publication_index(std::string_view pub_id) const {
  auto it = pub_index_.find(std::string(pub_id));
  if (it == pub_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Corpus::professor_index(std::string_view professor_id) const {
  auto it = prof_index_.find(std::string(professor_id));
  if (it == prof_index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Corpus::uda_of(const Professor& prof) const {
  return data_.fields.sds.at(prof.sds_code).uda_code;
}

bool Corpus::in_scope(const Professor& prof, Level level, std::string_view scope_code) const {
  switch (level) {
    case Level::kSds: return prof.sds_code == scope_code;
    case Level::kUda: return uda_of(prof) == scope_code;
    case Level::kOverall: return true;
  }
  return false;
}

LoadReport Corpus::report() const {
  LoadReport r;
  r.universities = universities_.size();
  r.professors = data_.professors.size();
  r.publications = data_.publications.size();
  r.authorships = data_.authorships.size();
  r.sds = data_.fields.sds.size();
  r.udas = data_.fields.uda_names.size();
  r.ranks = data_.salaries.size();
  return r;
}

std::string Corpus::digest() const {
  std::ostringstream out;
  out << "window," << data_.window.start_year << ',' << data_.window.end_year << '\n';
  write_publications(out, data_);
  write_authorships(out, data_);
  write_professors(out, data_);
  write_fields(out, data_);
  write_salaries(out, data_);
  return sha256_hex(out.str());
}

CorpusPaths CorpusPaths::in_directory(const std::filesystem::path& dir) {
  return CorpusPaths{dir / "publications.csv", dir / "authorships.csv", dir / "professors.csv",
                     dir / "fields.csv", dir / "salaries.csv"};
}

std::vector<std::filesystem::path> CorpusPaths::all() const {
  return {publications, authorships, professors, fields, salaries};
}

CorpusData read_corpus_data(const CorpusPaths& paths, const ObservationWindow& window,
                            SourceMap* sources) {
  CorpusData d;
  d.window = window;
  SourceMap local;
  SourceMap& src = sources ? *sources : local;
  src.publications_file = paths.publications.string();
  src.authorships_file = paths.authorships.string();
  src.professors_file = paths.professors.string();
  src.fields_file = paths.fields.string();
  src.salaries_file = paths.salaries.string();

  {
    const auto t = csv::Table::read(paths.fields);
    const auto c_sds = t.column("sds_code"), c_name = t.column("sds_name");
    const auto c_uda = t.column("uda_code"), c_uname = t.column("uda_name");
    for (const auto& row : t.rows()) {
      const auto& code = t.text(row, c_sds);
      if (code.empty()) throw LoadError(t.source(), row.line, "sds_code", "empty SDS code");
      const auto& uda = t.text(row, c_uda);
      if (uda.empty()) throw LoadError(t.source(), row.line, "uda_code", "empty UDA code");
      if (!d.fields.sds.emplace(code, SdsInfo{t.text(row, c_name), uda}).second) {
        throw LoadError(t.source(), row.line, "sds_code", "duplicate SDS code '" + code + "'");
      }
      auto [it, fresh] = d.fields.uda_names.emplace(uda, t.text(row, c_uname));
      if (!fresh && it->second != t.text(row, c_uname)) {
        throw LoadError(t.source(), row.line, "uda_name", "conflicting name for UDA '" + uda + "'");
      }
    }
  }
  {
    const auto t = csv::Table::read(paths.salaries);
    const auto c_rank = t.column("academic_rank"), c_sal = t.column("avg_yearly_salary");
    for (const auto& row : t.rows()) {
      const auto& rank = t.text(row, c_rank);
      if (!d.salaries.emplace(rank, t.real(row, c_sal)).second) {
        throw LoadError(t.source(), row.line, "academic_rank", "duplicate rank '" + rank + "'");
      }
    }
  }
  {
    const auto t = csv::Table::read(paths.publications);
    const auto c_id = t.column("pub_id"), c_year = t.column("year");
    const auto c_type = t.column("doc_type"), c_cat = t.column("subject_categories");
    const auto c_cit = t.column("citations"), c_n = t.column("n_authors_total");
    d.publications.reserve(t.rows().size());
    for (const auto& row : t.rows()) {
      Publication p;
      p.pub_id = t.text(row, c_id);
      p.year = static_cast<int>(t.integer(row, c_year));
      p.doc_type = t.text(row, c_type);
      p.subject_categories = split_categories(t.text(row, c_cat));
      p.citations = t.integer(row, c_cit);
      p.n_authors_total = static_cast<int>(t.integer(row, c_n));
      d.publications.push_back(std::move(p));
      src.publication_lines.push_back(row.line);
    }
  }
  {
    const auto t = csv::Table::read(paths.professors);
    const auto c_id = t.column("professor_id"), c_uni = t.column("university_id");
    const auto c_sds = t.column("sds_code"), c_rank = t.column("academic_rank");
    const auto c_years = t.column("years_on_staff");
    d.professors.reserve(t.rows().size());
    for (const auto& row : t.rows()) {
      d.professors.push_back(Professor{t.text(row, c_id), t.text(row, c_uni), t.text(row, c_sds),
                                       t.text(row, c_rank), t.real(row, c_years)});
      src.professor_lines.push_back(row.line);
    }
  }
  {
    const auto t = csv::Table::read(paths.authorships);
    const auto c_pub = t.column("pub_id"), c_prof = t.column("professor_id");
    d.authorships.reserve(t.rows().size());
    for (const auto& row : t.rows()) {
      d.authorships.push_back(Authorship{t.text(row, c_pub), t.text(row, c_prof)});
      src.authorship_lines.push_back(row.line);
    }
  }
  return d;
}

Corpus load_corpus(const CorpusPaths& paths, const ObservationWindow& window) {
  SourceMap sources;
  auto data = read_corpus_data(paths, window, &sources);
  return Corpus::build(std::move(data), &sources);
}

void write_corpus(const CorpusData& data, const CorpusPaths& paths) {
  auto open = [](const std::filesystem::path& p) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + p.string());
    return out;
  };
  {
    auto out = open(paths.publications);
    write_publications(out, data);
  }
  {
    auto out = open(paths.authorships);
    write_authorships(out, data);
  }
  {
    auto out = open(paths.professors);
    write_professors(out, data);
  }
  {
    auto out = open(paths.fields);
    write_fields(out, data);
  }
  {
    auto out = open(paths.salaries);
    write_salaries(out, data);
  }
}

FilteredCorpus apply_filters(const Corpus& corpus, const FilterConfig& cfg) {
  const auto& src = corpus.data();
  CorpusData out;
  out.window = src.window;
  out.fields = src.fields;
  out.salaries = src.salaries;
  FilterReport report;

  std::set<std::string> excluded_types;
  for (const auto& t : cfg.excluded_doc_types) excluded_types.insert(lower(t));

  std::unordered_set<std::string> kept_profs;
  for (const auto& p : src.professors) {
    if (p.years_on_staff < cfg.min_years_on_staff) {
      ++report.professors_removed;
      continue;
    }
    kept_profs.insert(p.professor_id);
    out.professors.push_back(p);
  }

  // Publications that may carry authorships.
  std::unordered_set<std::string> research_pubs;
  for (const auto& p : src.publications) {
    if (!src.window.contains(p.year)) {
      ++report.publications_removed_window;
      continue;
    }
    if (excluded_types.contains(lower(p.doc_type))) {
      if (cfg.baseline_include_all_doctypes) {
        ++report.publications_baseline_only;
        out.publications.push_back(p);
      } else {
        ++report.publications_removed_doc_type;
      }
      continue;
    }
    research_pubs.insert(p.pub_id);
    out.publications.push_back(p);
  }

  for (const auto& a : src.authorships) {
    if (kept_profs.contains(a.professor_id) && research_pubs.contains(a.pub_id)) {
      out.authorships.push_back(a);
    } else {
      ++report.authorships_removed;
    }
  }
  return FilteredCorpus{Corpus::build(std::move(out)), report};
}

std::vector<EligibleUnit> eligible_units(const Corpus& corpus, Level level,
                                         std::string_view scope_code, const FilterConfig& cfg) {
  const auto& fields = corpus.fields();
  const bool known = level == Level::kSds   ? fields.sds.contains(std::string(scope_code))
                     : level == Level::kUda ? fields.uda_names.contains(std::string(scope_code))
                                            : scope_code == kOverallScope;
  if (!known) {
    throw Error(ErrorCode::kUnknownScope,
                fmt::format("unknown {} scope '{}'", to_string(level), scope_code));
  }
  std::map<std::string, int> counts;
  for (const auto& p : corpus.professors()) {
    if (corpus.in_scope(p, level, scope_code)) ++counts[p.university_id];
  }
  std::vector<EligibleUnit> out;
  const int threshold = cfg.min_professors(level);
  for (const auto& [uni, n] : counts) {
    if (n >= threshold) out.push_back(EligibleUnit{uni, std::string(scope_code), n});
  }
  return out;
}

bool is_rankable(std::size_t unit_count, Level level, const FilterConfig& cfg) {
  if (unit_count == 0) return false;
  if (level == Level::kSds) return unit_count >= static_cast<std::size_t>(cfg.min_units_to_rank);
  return true;
}

std::vector<std::string> scopes_at(const Corpus& corpus, Level level) {
  if (level == Level::kOverall) return {std::string(kOverallScope)};
  std::set<std::string> codes;
  for (const auto& p : corpus.professors()) {
    codes.insert(level == Level::kSds ? p.sds_code : corpus.uda_of(p));
  }
  return {codes.begin(), codes.end()};
}

}  // namespace rankdiff
