#include "rankdiff/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "rankdiff/error.hpp"

namespace rankdiff::csv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool needs_quoting(std::string_view cell) {
  return cell.find_first_of(",\"\n\r") != std::string_view::npos;
}

}  // namespace

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      cells.emplace_back(was_quoted ? cur : std::string(trim(cur)));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  cells.emplace_back(was_quoted ? cur : std::string(trim(cur)));
  return cells;
}

Table Table::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path.string(), 0, "", "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

Table Table::parse(std::string_view text, std::string source_name) {
  Table t;
  t.source_ = std::move(source_name);
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::size_t line_no = 0;
  bool have_header = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_line(line);
    if (!have_header) {
      t.header_ = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header_.size()) {
      throw LoadError(t.source_, line_no, "",
                      "expected " + std::to_string(t.header_.size()) + " fields, found " +
                          std::to_string(cells.size()));
    }
    t.rows_.push_back(Row{line_no, std::move(cells)});
  }
  if (!have_header) throw LoadError(t.source_, 0, "", "missing header row");
  return t;
}

bool Table::has_column(std::string_view name) const {
  for (const auto& h : header_) {
    if (h == name) return true;
  }
  return false;
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  throw LoadError(source_, 1, std::string(name), "missing column");
}

const std::string& Table::text(const Row& row, std::size_t col) const { return row.cells.at(col); }

std::int64_t Table::integer(const Row& row, std::size_t col) const {
  const auto& s = row.cells.at(col);
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw LoadError(source_, row.line, header_[col], "not an integer: '" + s + "'");
  }
  return v;
}

double Table::real(const Row& row, std::size_t col) const {
  const auto& s = row.cells.at(col);
  double v = 0;
  const auto* begin = s.data();
  if (!s.empty() && s.front() == '+') ++begin;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw LoadError(source_, row.line, header_[col], "not a number: '" + s + "'");
  }
  return v;
}

void Writer::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    if (needs_quoting(cells[i])) {
      out_ << '"';
      for (char c : cells[i]) {
        if (c == '"') out_ << '"';
        out_ << c;
      }
      out_ << '"';
    } else {
      out_ << cells[i];
    }
  }
  out_ << '\n';
}

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace rankdiff::csv
