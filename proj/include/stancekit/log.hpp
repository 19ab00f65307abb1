#pragma once

#include <cstdlib>
#include <iostream>
#include <string>
#include <string_view>

namespace stancekit {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

// Verbosity comes from the STANCEKIT_LOG environment variable
// (error|warn|info|debug); default is warn.
inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("STANCEKIT_LOG");
    if (env == nullptr) return LogLevel::warn;
    std::string v(env);
    if (v == "error") return LogLevel::error;
    if (v == "info") return LogLevel::info;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::warn;
  }();
  return level;
}

inline void log_msg(LogLevel lvl, std::string_view tag, std::string_view msg) {
  if (static_cast<int>(lvl) > static_cast<int>(log_level())) return;
  std::cerr << "[" << tag << "] " << msg << "\n";
}

inline void log_error(std::string_view msg) { log_msg(LogLevel::error, "error", msg); }
inline void log_warn(std::string_view msg) { log_msg(LogLevel::warn, "warn", msg); }
inline void log_info(std::string_view msg) { log_msg(LogLevel::info, "info", msg); }
inline void log_debug(std::string_view msg) { log_msg(LogLevel::debug, "debug", msg); }

}  // namespace stancekit
