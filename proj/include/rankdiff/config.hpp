#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "rankdiff/corpus.hpp"

namespace rankdiff {

// Settings shared by validate/score/compare.
struct AnalysisConfig {
  ObservationWindow window{2008, 2012, "citations observed October 2015"};
  FilterConfig filters;

  // Canonical key=value rendering; recorded in manifests and provenance.
  std::string describe() const;
};

// key = value file, '#' comments.  Throws Error(kConfig) on unknown keys or bad values.
AnalysisConfig read_analysis_config(const std::filesystem::path& path);

// All key/value pairs of an INI-style file in file order; section headers prefix keys
// ("[salary]" then "full = 1" yields "salary.full").
std::vector<std::pair<std::string, std::string>> read_key_values(const std::filesystem::path& path);

}  // namespace rankdiff
