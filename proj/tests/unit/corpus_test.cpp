#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "rankdiff/corpus.hpp"

using namespace rankdiff;
using namespace fixtures;
namespace fs = std::filesystem;

namespace {

// 1 university, 2 professors, 3 publications.
CorpusData minimal() {
  auto d = empty_data();
  add_prof(d, "P1", "UNIV_1", "A", "full");
  add_prof(d, "P2", "UNIV_1", "B");
  add_pub(d, "W1", 3, 2, {"P1", "P2"});
  add_pub(d, "W2", 0, 1, {"P1"});
  add_pub(d, "W3", 5, 4, {"P2"}, {"CAT", "OTHER"}, 2011);
  return d;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "rankdiff_corpus_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

bool mentions(const std::vector<Violation>& vs, const std::string& field) {
  for (const auto& v : vs) {
    if (v.field == field) return true;
  }
  return false;
}

}  // namespace

TEST(LoadCorpus, MinimalFixtureCounts) {
  const auto dir = scratch("minimal");
  write_corpus(minimal(), CorpusPaths::in_directory(dir));
  const auto corpus = load_corpus(CorpusPaths::in_directory(dir), ObservationWindow{2008, 2012, ""});
  const auto r = corpus.report();
  EXPECT_EQ(r.universities, 1u);
  EXPECT_EQ(r.professors, 2u);
  EXPECT_EQ(r.publications, 3u);
  EXPECT_EQ(r.authorships, 4u);
  ASSERT_EQ(corpus.publications()[2].subject_categories.size(), 2u);
  EXPECT_EQ(corpus.publications()[2].subject_categories[1], "OTHER");
}

TEST(LoadCorpus, RoundTripPreservesDigest) {
  const auto dir = scratch("roundtrip");
  std::mt19937_64 rng(3);
  const auto data = random_corpus(rng);
  const auto before = Corpus::build(data);
  write_corpus(data, CorpusPaths::in_directory(dir));
  const auto after = load_corpus(CorpusPaths::in_directory(dir), data.window);
  EXPECT_EQ(before.digest(), after.digest());
}

TEST(LoadCorpus, DanglingAuthorshipNamesTheRow) {
  const auto dir = scratch("dangling");
  auto d = minimal();
  d.authorships.push_back(Authorship{"W3", "P404"});
  write_corpus(d, CorpusPaths::in_directory(dir));
  try {
    (void)load_corpus(CorpusPaths::in_directory(dir), d.window);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.violations().size(), 1u);
    const auto& v = e.violations()[0];
    EXPECT_NE(v.file.find("authorships.csv"), std::string::npos);
    EXPECT_EQ(v.line, 6u);  // header + 5 rows
    EXPECT_EQ(v.field, "professor_id");
    EXPECT_NE(v.message.find("P404"), std::string::npos);
  }
}

TEST(LoadCorpus, MalformedRowNamesFileLineField) {
  const auto dir = scratch("malformed");
  write_corpus(minimal(), CorpusPaths::in_directory(dir));
  std::ofstream(dir / "publications.csv", std::ios::app) << "W9,20x0,article,CAT,1,1\n";
  try {
    (void)load_corpus(CorpusPaths::in_directory(dir), ObservationWindow{2008, 2012, ""});
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 5u);
    EXPECT_EQ(e.field(), "year");
  }
}

TEST(Validate, MoreAuthorshipsThanAuthors) {
  auto d = minimal();
  add_prof(d, "P3", "UNIV_1");
  add_prof(d, "P4", "UNIV_1");
  add_pub(d, "W4", 1, 3, {"P1", "P2", "P3", "P4"});
  const auto vs = validate(d);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].field, "n_authors_total");
  EXPECT_THROW(Corpus::build(d), ValidationError);
}

TEST(Validate, ReportsEveryViolation) {
  auto d = minimal();
  d.publications.push_back(d.publications[0]);                   // duplicate key
  d.professors.push_back(Professor{"P9", "UNIV_1", "ZZZ", "full", 4});  // unknown SDS
  d.professors.push_back(Professor{"P8", "UNIV_1", "A", "dean", 4});    // rank without salary
  d.professors.push_back(Professor{"P7", "UNIV_1", "A", "full", 0});    // t must be positive
  d.authorships.push_back(d.authorships[0]);                     // duplicate pair
  d.authorships.push_back(Authorship{"W404", "P1"});             // dangling pub
  d.publications.push_back(Publication{"W5", 2010, "article", {}, -1, 0});
  const auto vs = validate(d);
  EXPECT_GE(vs.size(), 8u);
  EXPECT_TRUE(mentions(vs, "pub_id"));
  EXPECT_TRUE(mentions(vs, "sds_code"));
  EXPECT_TRUE(mentions(vs, "academic_rank"));
  EXPECT_TRUE(mentions(vs, "years_on_staff"));
  EXPECT_TRUE(mentions(vs, "citations"));
  EXPECT_TRUE(mentions(vs, "subject_categories"));
  EXPECT_TRUE(mentions(vs, "n_authors_total"));
}

TEST(Validate, TenureBeyondWindowRejected) {
  auto d = minimal();
  d.professors[0].years_on_staff = 5.5;
  EXPECT_TRUE(mentions(validate(d), "years_on_staff"));
  d.professors[0].years_on_staff = 5.0;
  EXPECT_TRUE(validate(d).empty());
}

TEST(ApplyFilters, ShortTenureProfessorRemoved) {
  auto d = minimal();
  d.professors[1].years_on_staff = 2.5;
  const auto f = apply_filters(Corpus::build(d), FilterConfig{});
  EXPECT_EQ(f.corpus.professors().size(), 1u);
  EXPECT_EQ(f.report.professors_removed, 1u);
  for (const auto& a : f.corpus.authorships()) EXPECT_NE(a.professor_id, "P2");
  // The publication stays in the national corpus for baselines.
  EXPECT_EQ(f.corpus.publications().size(), 3u);
}

TEST(ApplyFilters, MeetingAbstractExcluded) {
  auto d = minimal();
  add_pub(d, "W4", 9, 1, {"P1"}, {"CAT"}, 2010, "Meeting Abstract");
  const auto c = Corpus::build(d);
  const auto f = apply_filters(c, FilterConfig{});
  EXPECT_FALSE(f.corpus.publication_index("W4"));
  EXPECT_EQ(f.report.publications_removed_doc_type, 1u);

  FilterConfig keep;
  keep.baseline_include_all_doctypes = true;
  const auto g = apply_filters(c, keep);
  const auto idx = g.corpus.publication_index("W4");
  ASSERT_TRUE(idx);
  EXPECT_TRUE(g.corpus.authors_of(*idx).empty());  // baseline only
  EXPECT_EQ(g.report.publications_baseline_only, 1u);
}

TEST(ApplyFilters, OutOfWindowPublicationRemoved) {
  auto d = minimal();
  add_pub(d, "W4", 9, 1, {"P1"}, {"CAT"}, 2013);
  const auto f = apply_filters(Corpus::build(d), FilterConfig{});
  EXPECT_FALSE(f.corpus.publication_index("W4"));
  EXPECT_EQ(f.report.publications_removed_window, 1u);
}

TEST(ApplyFilters, ZeroThresholdsLeaveCorpusUnchanged) {
  std::mt19937_64 rng(5);
  auto d = random_corpus(rng);
  d.professors[0].years_on_staff = 0.5;
  FilterConfig none;
  none.min_years_on_staff = 0;
  none.excluded_doc_types.clear();
  const auto c = Corpus::build(d);
  EXPECT_EQ(apply_filters(c, none).corpus.digest(), c.digest());
}

TEST(ApplyFilters, IdempotentOnRandomCorpora) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    auto d = random_corpus(rng);
    for (auto& p : d.professors) p.years_on_staff = std::uniform_real_distribution<>(0.5, 5)(rng);
    for (auto& p : d.publications) {
      if (std::bernoulli_distribution(0.1)(rng)) p.doc_type = "editorial material";
      if (std::bernoulli_distribution(0.05)(rng)) p.year = 2014;
    }
    const auto once = apply_filters(Corpus::build(d), FilterConfig{});
    const auto twice = apply_filters(once.corpus, FilterConfig{});
    EXPECT_EQ(once.corpus.digest(), twice.corpus.digest());
    for (const auto& a : once.corpus.authorships()) {
      EXPECT_TRUE(once.corpus.professor_index(a.professor_id));
      EXPECT_TRUE(once.corpus.publication_index(a.pub_id));
    }
  }
}

TEST(EligibleUnits, ThresholdOnHeadcounts) {
  auto d = empty_data();
  for (int i = 0; i < 3; ++i) add_prof(d, "X" + std::to_string(i), "UNIV_X");
  add_prof(d, "Y0", "UNIV_Y");
  for (int i = 0; i < 2; ++i) add_prof(d, "Z" + std::to_string(i), "UNIV_Z");
  const auto c = Corpus::build(d);
  FilterConfig cfg;
  cfg.min_professors_sds = 2;
  const auto units = eligible_units(c, Level::kSds, "A", cfg);
  ASSERT_EQ(units.size(), 2u);
  EXPECT_EQ(units[0].university_id, "UNIV_X");
  EXPECT_EQ(units[0].professor_count, 3);
  EXPECT_EQ(units[1].university_id, "UNIV_Z");
  EXPECT_THROW(eligible_units(c, Level::kSds, "NOPE", cfg), Error);
  EXPECT_THROW(eligible_units(c, Level::kOverall, "A", cfg), Error);
}

TEST(EligibleUnits, OverallNeedsThirtyProfessors) {
  auto d = empty_data();
  for (int i = 0; i < 29; ++i) add_prof(d, "S" + std::to_string(i), "SMALL", i % 2 ? "A" : "C");
  for (int i = 0; i < 30; ++i) add_prof(d, "L" + std::to_string(i), "LARGE", i % 2 ? "B" : "C");
  const auto units = eligible_units(Corpus::build(d), Level::kOverall, kOverallScope, FilterConfig{});
  ASSERT_EQ(units.size(), 1u);
  EXPECT_EQ(units[0].university_id, "LARGE");
  EXPECT_EQ(units[0].professor_count, 30);
}

TEST(EligibleUnits, UdaCountsAllItsSds) {
  auto d = empty_data();
  for (int i = 0; i < 5; ++i) add_prof(d, "A" + std::to_string(i), "UNIV_1", "A");
  for (int i = 0; i < 5; ++i) add_prof(d, "B" + std::to_string(i), "UNIV_1", "B");
  const auto c = Corpus::build(d);
  const auto units = eligible_units(c, Level::kUda, "U1", FilterConfig{});
  ASSERT_EQ(units.size(), 1u);
  EXPECT_EQ(units[0].professor_count, 10);
  EXPECT_TRUE(eligible_units(c, Level::kUda, "U2", FilterConfig{}).empty());
}

TEST(EligibleUnits, MonotoneInThreshold) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    const auto c = Corpus::build(random_corpus(rng));
    for (const auto level : {Level::kSds, Level::kUda, Level::kOverall}) {
      for (const auto& scope : scopes_at(c, level)) {
        std::size_t prev = SIZE_MAX;
        for (int t = 0; t <= 12; ++t) {
          FilterConfig cfg;
          cfg.min_professors_sds = cfg.min_professors_uda = cfg.min_professors_overall = t;
          const auto n = eligible_units(c, level, scope, cfg).size();
          EXPECT_LE(n, prev);
          prev = n;
        }
      }
    }
  }
}

TEST(Rankable, SdsNeedsFiveUnits) {
  FilterConfig cfg;
  EXPECT_FALSE(is_rankable(4, Level::kSds, cfg));
  EXPECT_TRUE(is_rankable(5, Level::kSds, cfg));
  EXPECT_FALSE(is_rankable(0, Level::kUda, cfg));
  EXPECT_TRUE(is_rankable(1, Level::kOverall, cfg));
}

TEST(Scopes, ListedPerLevel) {
  const auto c = Corpus::build(minimal());
  // Only fields with professors are scopes.
  EXPECT_EQ(scopes_at(c, Level::kSds), (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(scopes_at(c, Level::kUda), (std::vector<std::string>{"U1"}));
  EXPECT_EQ(scopes_at(c, Level::kOverall), (std::vector<std::string>{"ALL"}));
  EXPECT_EQ(parse_level("Overall"), Level::kOverall);
  EXPECT_THROW(parse_level("campus"), Error);
}
