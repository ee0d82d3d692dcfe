#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rankdiff {

enum class ErrorCode : std::uint8_t {
  kLoad,
  kValidation,
  kConfig,
  kUnknownScope,
  kMissingBaseline,
  kMissingSalary,
  kNonPositiveTenure,
  kNoProductiveProfessors,
  kNoPublications,
  kScopeNotRankable,
  kEmptyBoard,
  kDegeneratePopulation,
  kUnitSetMismatch,
  kDegenerateVariance,
  kZeroMean,
  kNoRankableSds,
  kInvalidSynthConfig,
  kIo,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// A malformed or unresolvable input row.
class LoadError : public Error {
 public:
  LoadError(std::string file, std::size_t line, std::string field, const std::string& message);

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string file_;
  std::size_t line_;
  std::string field_;
  std::string message_;
};

struct Violation {
  std::string file;  // empty when the record did not come from a file
  std::size_t line = 0;
  std::string field;
  std::string message;

  std::string describe() const;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace rankdiff
