// Corpus builders, a random corpus generator for property tests, and readers for the
// published tables under tests/data.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rankdiff/corpus.hpp"
#include "rankdiff/csv.hpp"
#include "rankdiff/indicators.hpp"
#include "rankdiff/ranking.hpp"

namespace fixtures {

using namespace rankdiff;

inline std::filesystem::path data_dir() { return RANKDIFF_TEST_DATA; }

// Window 2008-2012, ranks "full" (2.0) and "assistant" (1.0); SDS A and B in U1, C in U2.
inline CorpusData empty_data() {
  CorpusData d;
  d.window = ObservationWindow{2008, 2012, "test"};
  d.fields.uda_names = {{"U1", "Area one"}, {"U2", "Area two"}};
  d.fields.sds = {{"A", SdsInfo{"Sector A", "U1"}},
                  {"B", SdsInfo{"Sector B", "U1"}},
                  {"C", SdsInfo{"Sector C", "U2"}}};
  d.salaries = {{"full", 2.0}, {"assistant", 1.0}};
  return d;
}

inline void add_prof(CorpusData& d, std::string id, std::string univ, std::string sds = "A",
                     std::string rank = "assistant", double years = 5.0) {
  d.professors.push_back(Professor{std::move(id), std::move(univ), std::move(sds),
                                   std::move(rank), years});
}

inline void add_pub(CorpusData& d, std::string id, std::int64_t citations, int n_authors,
                    const std::vector<std::string>& authors,
                    std::vector<std::string> categories = {"CAT"}, int year = 2010,
                    std::string doc_type = "article") {
  d.publications.push_back(
      Publication{id, year, std::move(doc_type), std::move(categories), citations, n_authors});
  for (const auto& a : authors) d.authorships.push_back(Authorship{id, a});
}

// Random closed-world corpus for property tests.  Every (year, category) cell gets an
// orphan cited publication so baselines always exist.
struct RandomCorpusSpec {
  int min_universities = 2, max_universities = 7;
  int max_profs_per_sds = 5;
  int max_pubs_per_prof = 6;
  bool single_category_only = false;
};

inline CorpusData random_corpus(std::mt19937_64& rng, const RandomCorpusSpec& spec = {}) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  CorpusData d = empty_data();
  const std::vector<std::string> sds = {"A", "B", "C"};
  const std::vector<std::string> cats = {"K1", "K2", "K3"};
  const std::vector<std::string> ranks = {"full", "assistant"};
  const int n_univ = uni(spec.min_universities, spec.max_universities);
  int prof_seq = 0, pub_seq = 0;
  for (int u = 0; u < n_univ; ++u) {
    const auto univ = "U" + std::to_string(u + 1);
    for (const auto& s : sds) {
      const int k = uni(1, spec.max_profs_per_sds);
      for (int j = 0; j < k; ++j) {
        add_prof(d, "P" + std::to_string(++prof_seq), univ, s, ranks[uni(0, 1)],
                 std::uniform_real_distribution<double>(3.0, 5.0)(rng));
      }
    }
  }
  std::geometric_distribution<int> cites(0.15);
  for (const auto& p : std::vector<Professor>(d.professors)) {
    const int n = uni(0, spec.max_pubs_per_prof);
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> authors{p.professor_id};
      while (coin(0.3)) {
        const auto& other = d.professors[uni(0, static_cast<int>(d.professors.size()) - 1)];
        if (std::find(authors.begin(), authors.end(), other.professor_id) == authors.end()) {
          authors.push_back(other.professor_id);
        }
      }
      const int n_authors = static_cast<int>(authors.size()) + uni(0, 3);
      std::vector<std::string> c{cats[uni(0, 2)]};
      if (!spec.single_category_only && coin(0.25)) {
        const auto extra = cats[uni(0, 2)];
        if (extra != c[0]) c.push_back(extra);
      }
      const auto cit = coin(0.3) ? 0 : cites(rng);
      add_pub(d, "W" + std::to_string(++pub_seq), cit, n_authors, authors, c, uni(2008, 2012));
    }
  }
  for (int y = 2008; y <= 2012; ++y) {
    for (const auto& c : cats) {
      add_pub(d, "W" + std::to_string(++pub_seq), 1 + cites(rng), 3, {}, {c}, y);
    }
  }
  return d;
}

// Doubles a university: every professor of `univ` gets a clone in the same university, and
// every publication they author gets a copy with a fresh id authored by the clones of its
// `univ` authors (same year, categories, citations and n_authors_total).
inline CorpusData clone_university(const CorpusData& d, const std::string& univ) {
  CorpusData out = d;
  std::set<std::string> members;
  for (const auto& p : d.professors) {
    if (p.university_id != univ) continue;
    members.insert(p.professor_id);
    auto c = p;
    c.professor_id += "#clone";
    out.professors.push_back(c);
  }
  std::map<std::string, std::vector<std::string>> authors;
  for (const auto& a : d.authorships) {
    if (members.contains(a.professor_id)) authors[a.pub_id].push_back(a.professor_id);
  }
  for (const auto& p : d.publications) {
    auto it = authors.find(p.pub_id);
    if (it == authors.end()) continue;
    auto c = p;
    c.pub_id += "#clone";
    out.publications.push_back(c);
    for (const auto& a : it->second) out.authorships.push_back(Authorship{c.pub_id, a + "#clone"});
  }
  return out;
}

// Units U0..U(n-1) placed at the given ranks under each indicator.
inline ComparisonTable comparison_from_ranks(const std::vector<int>& fss_rank,
                                             const std::vector<int>& mncs_rank) {
  std::vector<UnitScore> f, m;
  for (std::size_t i = 0; i < fss_rank.size(); ++i) {
    UnitScore u;
    u.university_id = "U" + std::to_string(i);
    u.score = 1000.0 - fss_rank[i];
    f.push_back(u);
    u.score = 1000.0 - mncs_rank[i];
    u.indicator = Indicator::kMncs;
    m.push_back(u);
  }
  return compare(rank(f), rank(m));
}

// Shift and quartile statistics enumerated straight from two rank vectors.
struct EnumeratedStats {
  double pct_shifting = 0, mean_abs = 0, median_abs = 0;
  int max_abs = 0;
  double pct_q_shifting = 0, mean_q = 0, pct_leaving_q1 = 0;
  int max_q = 0;
};

inline EnumeratedStats enumerate_stats(const std::vector<int>& fss, const std::vector<int>& mncs) {
  const int n = static_cast<int>(fss.size());
  auto q_of = [n](int r) {
    return r == 1 ? 1 : static_cast<int>(std::ceil(4.0 * r / n));
  };
  std::vector<int> abs_shift;
  int shifting = 0, q_shifting = 0, q_sum = 0, q1 = 0, q1_left = 0;
  EnumeratedStats s;
  for (int i = 0; i < n; ++i) {
    abs_shift.push_back(std::abs(fss[i] - mncs[i]));
    shifting += fss[i] != mncs[i];
    const int qf = q_of(fss[i]), qm = q_of(mncs[i]);
    q_shifting += qf != qm;
    q_sum += std::abs(qf - qm);
    s.max_q = std::max(s.max_q, std::abs(qf - qm));
    if (qf == 1) {
      ++q1;
      q1_left += qm != 1;
    }
  }
  std::sort(abs_shift.begin(), abs_shift.end());
  s.pct_shifting = 100.0 * shifting / n;
  s.mean_abs = std::accumulate(abs_shift.begin(), abs_shift.end(), 0.0) / n;
  s.median_abs = n % 2 ? abs_shift[n / 2] : (abs_shift[n / 2 - 1] + abs_shift[n / 2]) / 2.0;
  s.max_abs = abs_shift.back();
  s.pct_q_shifting = 100.0 * q_shifting / n;
  s.mean_q = static_cast<double>(q_sum) / n;
  s.pct_leaving_q1 = 100.0 * q1_left / q1;
  return s;
}

// One row of a published comparison table.
struct ReferenceRow {
  std::string unit;
  int staff = 0;
  double fss_score = 0, fss_pct = 0, mncs_score = 0, mncs_pct = 0, pct_shift = 0;
  int fss_rank = 0, mncs_rank = 0, rank_shift = 0;
  int fss_pct_decimals = 1, mncs_pct_decimals = 1;  // as printed
};

inline int decimals_of(const std::string& text) {
  const auto dot = text.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
}

inline std::vector<ReferenceRow> read_reference_table(const std::string& name) {
  const auto t = csv::Table::read(data_dir() / name);
  std::vector<ReferenceRow> out;
  for (const auto& r : t.rows()) {
    ReferenceRow p;
    p.unit = t.text(r, t.column("unit"));
    p.staff = static_cast<int>(t.integer(r, t.column("staff")));
    p.fss_score = t.real(r, t.column("fss_score"));
    p.fss_rank = static_cast<int>(t.integer(r, t.column("fss_rank")));
    p.fss_pct = t.real(r, t.column("fss_pct"));
    p.fss_pct_decimals = decimals_of(t.text(r, t.column("fss_pct")));
    p.mncs_score = t.real(r, t.column("mncs_score"));
    p.mncs_rank = static_cast<int>(t.integer(r, t.column("mncs_rank")));
    p.mncs_pct = t.real(r, t.column("mncs_pct"));
    p.mncs_pct_decimals = decimals_of(t.text(r, t.column("mncs_pct")));
    p.rank_shift = static_cast<int>(t.integer(r, t.column("rank_shift")));
    p.pct_shift = t.real(r, t.column("pct_shift"));
    out.push_back(p);
  }
  return out;
}

}  // namespace fixtures
