#include "rankdiff/config.hpp"

#include <fmt/format.h>

#include <boost/program_options/options_description.hpp>
#include <boost/program_options/parsers.hpp>
#include <charconv>
#include <fstream>
#include <sstream>

#include "rankdiff/csv.hpp"

namespace po = boost::program_options;

namespace rankdiff {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::kConfig, fmt::format("config key '{}': bad value '{}'", key, text));
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error(ErrorCode::kConfig, fmt::format("config key '{}': expected a boolean, got '{}'", key, text));
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open config " + path.string());
  po::options_description none;
  po::parsed_options parsed(&none);
  try {
    parsed = po::parse_config_file(in, none, /*allow_unregistered=*/true);
  } catch (const po::error& e) {
    throw Error(ErrorCode::kConfig, fmt::format("{}: {}", path.string(), e.what()));
  }
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& opt : parsed.options) {
    out.emplace_back(opt.string_key, opt.value.empty() ? std::string{} : trim(opt.value.front()));
  }
  return out;
}

AnalysisConfig read_analysis_config(const std::filesystem::path& path) {
  AnalysisConfig cfg;
  bool doc_types_seen = false;
  for (const auto& [key, value] : read_key_values(path)) {
    auto& f = cfg.filters;
    if (key == "window_start") {
      cfg.window.start_year = parse_number<int>(key, value);
    } else if (key == "window_end") {
      cfg.window.end_year = parse_number<int>(key, value);
    } else if (key == "citation_snapshot") {
      cfg.window.citation_snapshot_label = value;
    } else if (key == "min_years_on_staff") {
      f.min_years_on_staff = parse_number<double>(key, value);
    } else if (key == "excluded_doc_types") {
      if (!doc_types_seen) f.excluded_doc_types.clear();
      doc_types_seen = true;
      for (auto& t : csv::split_line(value)) {
        if (!t.empty()) f.excluded_doc_types.insert(t);
      }
    } else if (key == "min_professors_sds") {
      f.min_professors_sds = parse_number<int>(key, value);
    } else if (key == "min_professors_uda") {
      f.min_professors_uda = parse_number<int>(key, value);
    } else if (key == "min_professors_overall") {
      f.min_professors_overall = parse_number<int>(key, value);
    } else if (key == "min_units_to_rank") {
      f.min_units_to_rank = parse_number<int>(key, value);
    } else if (key == "baseline_include_all_doctypes") {
      f.baseline_include_all_doctypes = parse_bool(key, value);
    } else {
      throw Error(ErrorCode::kConfig, fmt::format("{}: unknown key '{}'", path.string(), key));
    }
  }
  const auto& f = cfg.filters;
  if (f.min_years_on_staff < 0 || f.min_professors_sds < 0 || f.min_professors_uda < 0 ||
      f.min_professors_overall < 0 || f.min_units_to_rank < 0) {
    throw Error(ErrorCode::kConfig, "thresholds must be non-negative");
  }
  if (cfg.window.start_year > cfg.window.end_year) {
    throw Error(ErrorCode::kConfig, "window_start after window_end");
  }
  return cfg;
}

std::string AnalysisConfig::describe() const {
  std::ostringstream out;
  out << "window_start=" << window.start_year << '\n'
      << "window_end=" << window.end_year << '\n'
      << "citation_snapshot=" << window.citation_snapshot_label << '\n'
      << "min_years_on_staff=" << csv::format_real(filters.min_years_on_staff) << '\n'
      << "excluded_doc_types=";
  bool first = true;
  for (const auto& t : filters.excluded_doc_types) {
    out << (first ? "" : ",") << t;
    first = false;
  }
  out << '\n'
      << "min_professors_sds=" << filters.min_professors_sds << '\n'
      << "min_professors_uda=" << filters.min_professors_uda << '\n'
      << "min_professors_overall=" << filters.min_professors_overall << '\n'
      << "min_units_to_rank=" << filters.min_units_to_rank << '\n'
      << "baseline_include_all_doctypes=" << (filters.baseline_include_all_doctypes ? "true" : "false")
      << '\n';
  return out.str();
}

}  // namespace rankdiff
