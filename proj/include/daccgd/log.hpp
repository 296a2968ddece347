#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace daccgd {

// DACCGD_LOG=quiet|info|debug (default info). Messages go to stderr so they
// never mix with artifact output.
enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

inline LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("DACCGD_LOG");
    if (env == nullptr) return LogLevel::Info;
    if (std::strcmp(env, "quiet") == 0) return LogLevel::Quiet;
    if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
    return LogLevel::Info;
  }();
  return level;
}

inline void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::fprintf(stderr, "[daccgd] %s\n", msg.c_str());
}

inline void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::Debug) std::fprintf(stderr, "[daccgd:debug] %s\n", msg.c_str());
}

}  // namespace daccgd
