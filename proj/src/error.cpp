#include "rankdiff/error.hpp"

#include <fmt/format.h>

namespace rankdiff {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLoad: return "LoadError";
    case ErrorCode::kValidation: return "ValidationError";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kUnknownScope: return "UnknownScope";
    case ErrorCode::kMissingBaseline: return "MissingBaseline";
    case ErrorCode::kMissingSalary: return "MissingSalary";
    case ErrorCode::kNonPositiveTenure: return "NonPositiveTenure";
    case ErrorCode::kNoProductiveProfessors: return "NoProductiveProfessors";
    case ErrorCode::kNoPublications: return "NoPublications";
    case ErrorCode::kScopeNotRankable: return "ScopeNotRankable";
    case ErrorCode::kEmptyBoard: return "EmptyBoard";
    case ErrorCode::kDegeneratePopulation: return "DegeneratePopulation";
    case ErrorCode::kUnitSetMismatch: return "UnitSetMismatch";
    case ErrorCode::kDegenerateVariance: return "DegenerateVariance";
    case ErrorCode::kZeroMean: return "ZeroMean";
    case ErrorCode::kNoRankableSds: return "NoRankableSds";
    case ErrorCode::kInvalidSynthConfig: return "InvalidSynthConfig";
    case ErrorCode::kIo: return "IoError";
  }
  return "Error";
}

namespace {

std::string location(const std::string& file, std::size_t line, const std::string& field) {
  std::string out = file.empty() ? std::string("<memory>") : file;
  if (line) out += fmt::format(":{}", line);
  if (!field.empty()) out += fmt::format(" [{}]", field);
  return out;
}

std::string summarize(const std::vector<Violation>& violations) {
  if (violations.empty()) return "corpus validation failed";
  auto msg = fmt::format("corpus validation failed with {} violation(s); first: {}",
                         violations.size(), violations.front().describe());
  return msg;
}

}  // namespace

LoadError::LoadError(std::string file, std::size_t line, std::string field,
                     const std::string& message)
    : Error(ErrorCode::kLoad, location(file, line, field) + ": " + message),
      file_(std::move(file)),
      line_(line),
      field_(std::move(field)),
      message_(message) {}

std::string Violation::describe() const { return location(file, line, field) + ": " + message; }

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(ErrorCode::kValidation, summarize(violations)), violations_(std::move(violations)) {}

}  // namespace rankdiff
