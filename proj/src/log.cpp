#include "rankdiff/log.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <memory>

namespace rankdiff::log {

namespace {

spdlog::level::level_enum to_spd(Severity s) {
  switch (s) {
    case Severity::kError: return spdlog::level::err;
    case Severity::kWarn: return spdlog::level::warn;
    case Severity::kInfo: return spdlog::level::info;
    case Severity::kDebug: return spdlog::level::debug;
  }
  return spdlog::level::info;
}

spdlog::level::level_enum level_from_env() {
  const char* env = std::getenv("RANKDIFF_LOG");
  if (!env) return spdlog::level::warn;
  const std::string_view v(env);
  if (v == "error") return spdlog::level::err;
  if (v == "info") return spdlog::level::info;
  if (v == "debug") return spdlog::level::debug;
  return spdlog::level::warn;
}

spdlog::logger& logger() {
  static auto instance = [] {
    auto l = std::make_shared<spdlog::logger>("rankdiff",
                                              std::make_shared<spdlog::sinks::stderr_sink_mt>());
    l->set_pattern("[%l] %v");
    l->set_level(level_from_env());
    return l;
  }();
  return *instance;
}

}  // namespace

void write(Severity severity, const std::string& message) { logger().log(to_spd(severity), message); }

bool enabled(Severity severity) { return logger().should_log(to_spd(severity)); }

void configure_from_env() { logger().set_level(level_from_env()); }

}  // namespace rankdiff::log
