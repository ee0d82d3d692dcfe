#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "rankdiff/corpus.hpp"

namespace rankdiff {

// Citation statistics of one (year, subject category) cell.
struct BaselineCell {
  double mean_citations = 0.0;  // over cited publications only
  std::size_t cited_count = 0;
  std::size_t total_count = 0;
};

// Mean citations of cited national publications per (year, subject category).
class ScalingFactorTable {
 public:
  using Key = std::pair<int, std::string>;

  const BaselineCell* find(int year, const std::string& category) const;
  void set(int year, const std::string& category, const BaselineCell& cell);

  const std::map<Key, BaselineCell>& cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }

  void write_csv(const std::filesystem::path& path) const;
  static ScalingFactorTable read_csv(const std::filesystem::path& path);
  std::string digest() const;

 private:
  std::map<Key, BaselineCell> cells_;
};

// Every publication in the corpus enters the baseline, whether or not a professor authored it.
ScalingFactorTable compute_scaling_factors(const Corpus& corpus);

// Arithmetic mean of the publication's per-category cell means.  Throws MissingBaseline.
double scaling_factor(const Publication& pub, const ScalingFactorTable& table);

// citations / scaling_factor.  Throws MissingBaseline.
double normalized_impact(const Publication& pub, const ScalingFactorTable& table);

// Non-throwing variant; nullopt when a cell is missing.
std::optional<double> try_normalized_impact(const Publication& pub,
                                            const ScalingFactorTable& table);

}  // namespace rankdiff
