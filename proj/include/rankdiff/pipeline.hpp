#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rankdiff/config.hpp"
#include "rankdiff/corpus.hpp"
#include "rankdiff/indicators.hpp"

namespace rankdiff {

// Exit statuses shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitConfigError = 2;

// Maps an error code to kExitDataError or kExitConfigError.
int exit_code_for(ErrorCode code);

struct InputDigest {
  std::string path;
  std::string sha256;
};

// One per run, written to <out>/manifest/manifest.json.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> arguments;
  std::string config;
  std::vector<InputDigest> inputs;
  std::vector<std::string> outputs;  // relative to the output directory
  std::vector<std::string> warnings;
  std::string corpus_digest;
  std::string baseline_digest;
  std::string timestamp;  // UTC, ISO 8601; the only non-deterministic field

  std::string to_json() const;
};

struct CorpusInputs {
  std::optional<std::filesystem::path> dir;
  std::optional<std::filesystem::path> publications, authorships, professors, fields, salaries;

  // Throws Error(kConfig) unless every file is named directly or through `dir`.
  CorpusPaths resolve() const;
};

struct ValidateOptions {
  CorpusInputs corpus;
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;  // manifest only
  bool force = false;
};

enum class IndicatorChoice : std::uint8_t { kFss, kMncs, kBoth };

struct ScoreOptions {
  CorpusInputs corpus;
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> baselines;  // import instead of computing
  IndicatorChoice indicator = IndicatorChoice::kBoth;
  Level level = Level::kSds;
  std::optional<std::string> scope;  // restrict to one scope
  std::filesystem::path out;
  bool force = false;
};

struct CompareOptions {
  std::optional<CorpusInputs> corpus;
  std::optional<std::filesystem::path> from_scores;
  std::string scope_label = "replay";  // scope name for --from-scores
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> baselines;
  Level level = Level::kSds;
  std::optional<std::string> scope;
  std::filesystem::path out;
  bool force = false;
};

struct SynthOptions {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out;
  bool force = false;
};

// Each command prints a short report to `out`, problems to `err`, and returns an exit status.
int run_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err);
int run_score(const ScoreOptions& opts, std::ostream& out, std::ostream& err);
int run_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err);
int run_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);

// "CHIM/08" -> "CHIM_08"; anything outside [A-Za-z0-9._-] becomes '_'.
std::string file_safe(std::string_view scope_code);

}  // namespace rankdiff
