#include "rankdiff/baselines.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include "rankdiff/csv.hpp"
#include "rankdiff/digest.hpp"

namespace rankdiff {

namespace {

struct Accumulator {
  double cited_sum = 0.0;
  std::size_t cited = 0;
  std::size_t total = 0;
};

void write_table(std::ostream& out, const ScalingFactorTable& table) {
  csv::Writer w(out);
  w.row({"year", "category", "mean", "cited_count", "total_count"});
  for (const auto& [key, cell] : table.cells()) {
    w.row({std::to_string(key.first), key.second, csv::format_real(cell.mean_citations),
           std::to_string(cell.cited_count), std::to_string(cell.total_count)});
  }
}

}  // namespace

const BaselineCell* ScalingFactorTable::find(int year, const std::string& category) const {
  auto it = cells_.find(Key{year, category});
  return it == cells_.end() ? nullptr : &it->second;
}

void ScalingFactorTable::set(int year, const std::string& category, const BaselineCell& cell) {
  if (!(cell.mean_citations > 0) || cell.cited_count < 1) {
    throw Error(ErrorCode::kConfig,
                fmt::format("baseline cell ({}, {}) must have a positive mean and a cited "
                            "publication",
                            year, category));
  }
  cells_[Key{year, category}] = cell;
}

void ScalingFactorTable::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write_table(out, *this);
}

ScalingFactorTable ScalingFactorTable::read_csv(const std::filesystem::path& path) {
  const auto t = csv::Table::read(path);
  const auto c_year = t.column("year"), c_cat = t.column("category"), c_mean = t.column("mean");
  const auto c_cited = t.column("cited_count"), c_total = t.column("total_count");
  ScalingFactorTable table;
  for (const auto& row : t.rows()) {
    BaselineCell cell;
    cell.mean_citations = t.real(row, c_mean);
    const auto cited = t.integer(row, c_cited);
    const auto total = t.integer(row, c_total);
    if (!(cell.mean_citations > 0) || cited < 1 || total < cited) {
      throw LoadError(t.source(), row.line, "mean", "invalid baseline cell");
    }
    cell.cited_count = static_cast<std::size_t>(cited);
    cell.total_count = static_cast<std::size_t>(total);
    const int year = static_cast<int>(t.integer(row, c_year));
    if (table.find(year, t.text(row, c_cat))) {
      throw LoadError(t.source(), row.line, "category", "duplicate baseline cell");
    }
    table.set(year, t.text(row, c_cat), cell);
  }
  return table;
}

std::string ScalingFactorTable::digest() const {
  std::ostringstream out;
  write_table(out, *this);
  return sha256_hex(out.str());
}

ScalingFactorTable compute_scaling_factors(const Corpus& corpus) {
  std::map<ScalingFactorTable::Key, Accumulator> acc;
  for (const auto& pub : corpus.publications()) {
    for (const auto& cat : pub.subject_categories) {
      auto& a = acc[{pub.year, cat}];
      ++a.total;
      if (pub.citations > 0) {
        ++a.cited;
        a.cited_sum += static_cast<double>(pub.citations);
      }
    }
  }
  ScalingFactorTable table;
  for (const auto& [key, a] : acc) {
    if (a.cited == 0) continue;
    table.set(key.first, key.second,
              BaselineCell{a.cited_sum / static_cast<double>(a.cited), a.cited, a.total});
  }
  return table;
}

namespace {

std::optional<double> try_scaling_factor(const Publication& pub, const ScalingFactorTable& table,
                                         std::string* missing) {
  double sum = 0.0;
  for (const auto& cat : pub.subject_categories) {
    const auto* cell = table.find(pub.year, cat);
    if (!cell) {
      if (missing) *missing = cat;
      return std::nullopt;
    }
    sum += cell->mean_citations;
  }
  if (pub.subject_categories.empty()) return std::nullopt;
  return sum / static_cast<double>(pub.subject_categories.size());
}

}  // namespace

double scaling_factor(const Publication& pub, const ScalingFactorTable& table) {
  std::string missing;
  auto v = try_scaling_factor(pub, table, &missing);
  if (!v) {
    throw Error(ErrorCode::kMissingBaseline,
                fmt::format("publication '{}' has no baseline for ({}, {})", pub.pub_id, pub.year,
                            missing));
  }
  return *v;
}

double normalized_impact(const Publication& pub, const ScalingFactorTable& table) {
  const double c_bar = scaling_factor(pub, table);
  if (pub.citations == 0) return 0.0;
  return static_cast<double>(pub.citations) / c_bar;
}

std::optional<double> try_normalized_impact(const Publication& pub,
                                            const ScalingFactorTable& table) {
  auto c_bar = try_scaling_factor(pub, table, nullptr);
  if (!c_bar) return std::nullopt;
  if (pub.citations == 0) return 0.0;
  return static_cast<double>(pub.citations) / *c_bar;
}

}  // namespace rankdiff
