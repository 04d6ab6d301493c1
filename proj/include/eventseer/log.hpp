#pragma once

#include <string>

namespace eventseer::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

// Verbosity comes from EVENTSEER_LOG in {error, warn, info, debug}; default warn.
Level level();
void set_level(Level lvl);

void emit(Level lvl, const std::string& msg);

inline void error(const std::string& msg) { emit(Level::error, msg); }
inline void warn(const std::string& msg) { emit(Level::warn, msg); }
inline void info(const std::string& msg) { emit(Level::info, msg); }
inline void debug(const std::string& msg) { emit(Level::debug, msg); }

}  // namespace eventseer::log
