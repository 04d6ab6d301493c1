#include "eventseer/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <mutex>

namespace eventseer::log {

namespace {

Level parse_env() {
    const char* env = std::getenv("EVENTSEER_LOG");
    if (!env) return Level::warn;
    const std::string s(env);
    if (s == "error") return Level::error;
    if (s == "warn") return Level::warn;
    if (s == "info") return Level::info;
    if (s == "debug") return Level::debug;
    return Level::warn;
}

Level g_level = parse_env();
std::mutex g_mutex;

const char* tag(Level lvl) {
    switch (lvl) {
        case Level::error: return "error";
        case Level::warn: return "warn";
        case Level::info: return "info";
        case Level::debug: return "debug";
    }
    return "?";
}

}  // namespace

Level level() { return g_level; }

void set_level(Level lvl) { g_level = lvl; }

void emit(Level lvl, const std::string& msg) {
    if (static_cast<int>(lvl) > static_cast<int>(g_level)) return;
    std::lock_guard<std::mutex> lock(g_mutex);
    std::fprintf(stderr, "eventseer [%s] %s\n", tag(lvl), msg.c_str());
}

}  // namespace eventseer::log
