#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rankdiff::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number in the source file
  std::vector<std::string> cells;
};

// Header-indexed CSV table.  Supports RFC 4180 quoting; rejects ragged rows.
class Table {
 public:
  static Table read(const std::filesystem::path& path);
  static Table parse(std::string_view text, std::string source_name);

  const std::string& source() const noexcept { return source_; }
  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }

  bool has_column(std::string_view name) const;
  // Throws LoadError when the column is missing.
  std::size_t column(std::string_view name) const;

  // Typed cell accessors; malformed values throw LoadError naming file, line and field.
  const std::string& text(const Row& row, std::size_t col) const;
  std::int64_t integer(const Row& row, std::size_t col) const;
  double real(const Row& row, std::size_t col) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

std::vector<std::string> split_line(std::string_view line);

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

// Shortest text that round-trips the double exactly.
std::string format_real(double value);

}  // namespace rankdiff::csv
