#pragma once

#include <fmt/format.h>

#include <string>
#include <string_view>

// Thin logging facade; threshold comes from RANKDIFF_LOG={error|warn|info|debug}.
namespace rankdiff::log {

enum class Severity { kError, kWarn, kInfo, kDebug };

void write(Severity severity, const std::string& message);
bool enabled(Severity severity);
// Re-reads RANKDIFF_LOG.
void configure_from_env();

template <typename... Args>
void error(fmt::format_string<Args...> f, Args&&... args) {
  if (enabled(Severity::kError)) write(Severity::kError, fmt::format(f, std::forward<Args>(args)...));
}
template <typename... Args>
void warn(fmt::format_string<Args...> f, Args&&... args) {
  if (enabled(Severity::kWarn)) write(Severity::kWarn, fmt::format(f, std::forward<Args>(args)...));
}
template <typename... Args>
void info(fmt::format_string<Args...> f, Args&&... args) {
  if (enabled(Severity::kInfo)) write(Severity::kInfo, fmt::format(f, std::forward<Args>(args)...));
}
template <typename... Args>
void debug(fmt::format_string<Args...> f, Args&&... args) {
  if (enabled(Severity::kDebug)) write(Severity::kDebug, fmt::format(f, std::forward<Args>(args)...));
}

}  // namespace rankdiff::log
