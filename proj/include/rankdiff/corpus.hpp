#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rankdiff/error.hpp"

namespace rankdiff {

struct ObservationWindow {
  int start_year = 0;
  int end_year = 0;  // inclusive
  std::string citation_snapshot_label;

  int length() const { return end_year - start_year + 1; }
  bool contains(int year) const { return year >= start_year && year <= end_year; }
};

struct Publication {
  std::string pub_id;
  int year = 0;
  std::string doc_type;
  std::vector<std::string> subject_categories;
  std::int64_t citations = 0;
  int n_authors_total = 1;
};

struct Authorship {
  std::string pub_id;
  std::string professor_id;
};

struct Professor {
  std::string professor_id;
  std::string university_id;
  std::string sds_code;
  std::string academic_rank;
  double years_on_staff = 0.0;
};

struct SdsInfo {
  std::string name;
  std::string uda_code;
};

struct FieldScheme {
  std::map<std::string, SdsInfo> sds;
  std::map<std::string, std::string> uda_names;

  const SdsInfo* find_sds(std::string_view code) const;
};

using SalaryTable = std::map<std::string, double>;

enum class Level : std::uint8_t { kSds, kUda, kOverall };

std::string_view to_string(Level level);
Level parse_level(std::string_view text);

// Scope code used for the single OVERALL scope.
inline constexpr std::string_view kOverallScope = "ALL";

struct FilterConfig {
  double min_years_on_staff = 3.0;
  std::set<std::string> excluded_doc_types{"editorial material", "meeting abstract",
                                           "reply to letter", "correction", "news item"};
  int min_professors_sds = 2;
  int min_professors_uda = 10;
  int min_professors_overall = 30;
  int min_units_to_rank = 5;
  // Keep excluded document types in the baseline population.
  bool baseline_include_all_doctypes = false;

  int min_professors(Level level) const;
};

// Raw records as read from disk or produced by the generator.
struct CorpusData {
  ObservationWindow window;
  std::vector<Publication> publications;
  std::vector<Authorship> authorships;
  std::vector<Professor> professors;
  FieldScheme fields;
  SalaryTable salaries;
};

// Where each record came from; lets validation name file and line.
struct SourceMap {
  std::string publications_file, authorships_file, professors_file, fields_file, salaries_file;
  std::vector<std::size_t> publication_lines, authorship_lines, professor_lines;
};

std::vector<Violation> validate(const CorpusData& data, const SourceMap* sources = nullptr);

struct LoadReport {
  std::size_t universities = 0;
  std::size_t professors = 0;
  std::size_t publications = 0;
  std::size_t authorships = 0;
  std::size_t sds = 0;
  std::size_t udas = 0;
  std::size_t ranks = 0;
};

struct FilterReport {
  std::size_t professors_removed = 0;
  std::size_t publications_removed_doc_type = 0;
  std::size_t publications_removed_window = 0;
  std::size_t publications_baseline_only = 0;
  std::size_t authorships_removed = 0;
};

// Validated, indexed, immutable view of a corpus.
class Corpus {
 public:
  // Throws ValidationError listing every violation.
  static Corpus build(CorpusData data, const SourceMap* sources = nullptr);

  const CorpusData& data() const noexcept { return data_; }
  const ObservationWindow& window() const noexcept { return data_.window; }
  std::span<const Publication> publications() const noexcept { return data_.publications; }
  std::span<const Professor> professors() const noexcept { return data_.professors; }
  std::span<const Authorship> authorships() const noexcept { return data_.authorships; }
  const FieldScheme& fields() const noexcept { return data_.fields; }
  const SalaryTable& salaries() const noexcept { return data_.salaries; }

  std::optional<std::size_t> publication_index(std::string_view pub_id) const;
  std::optional<std::size_t> professor_index(std::string_view professor_id) const;

  // Publication indices authored by a professor, in authorship-file order.
  std::span<const std::size_t> publications_of(std::size_t professor) const {
    return pubs_by_professor_[professor];
  }
  // Professor indices among a publication's authorships.
  std::span<const std::size_t> authors_of(std::size_t publication) const {
    return professors_by_pub_[publication];
  }

  // Sorted, unique university ids.
  const std::vector<std::string>& universities() const noexcept { return universities_; }

  const std::string& uda_of(const Professor& prof) const;
  bool in_scope(const Professor& prof, Level level, std::string_view scope_code) const;

  LoadReport report() const;

  // Canonical CSV serialization digest (SHA-256, hex).
  std::string digest() const;

 private:
  explicit Corpus(CorpusData data);

  CorpusData data_;
  std::unordered_map<std::string, std::size_t> pub_index_;
  std::unordered_map<std::string, std::size_t> prof_index_;
  std::vector<std::vector<std::size_t>> pubs_by_professor_;
  std::vector<std::vector<std::size_t>> professors_by_pub_;
  std::vector<std::string> universities_;
};

struct CorpusPaths {
  std::filesystem::path publications;
  std::filesystem::path authorships;
  std::filesystem::path professors;
  std::filesystem::path fields;
  std::filesystem::path salaries;

  // The five standard file names inside one directory.
  static CorpusPaths in_directory(const std::filesystem::path& dir);
  std::vector<std::filesystem::path> all() const;
};

// Throws LoadError on malformed rows and ValidationError on broken references.
Corpus load_corpus(const CorpusPaths& paths, const ObservationWindow& window);

// Reads and parses without validating; used by `validate` to list every problem.
CorpusData read_corpus_data(const CorpusPaths& paths, const ObservationWindow& window,
                            SourceMap* sources);

void write_corpus(const CorpusData& data, const CorpusPaths& paths);

struct FilteredCorpus {
  Corpus corpus;
  FilterReport report;
};

FilteredCorpus apply_filters(const Corpus& corpus, const FilterConfig& cfg);

struct EligibleUnit {
  std::string university_id;
  std::string scope_code;
  int professor_count = 0;
};

// Universities meeting the headcount threshold for a scope.  Throws on unknown scope.
std::vector<EligibleUnit> eligible_units(const Corpus& corpus, Level level,
                                         std::string_view scope_code, const FilterConfig& cfg);

// SDS scopes need at least min_units_to_rank units; other levels need one.
bool is_rankable(std::size_t unit_count, Level level, const FilterConfig& cfg);

// Every scope code present at a level, sorted.
std::vector<std::string> scopes_at(const Corpus& corpus, Level level);

}  // namespace rankdiff
