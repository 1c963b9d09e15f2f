#include "ccas/log.hpp"

#include <cstdlib>
#include <string>

namespace ccas::log {

Level threshold() {
  static const Level lvl = [] {
    const char* env = std::getenv("CCAS_LOG_LEVEL");
    if (!env) return Level::Warn;
    const std::string s(env);
    if (s == "error") return Level::Error;
    if (s == "warn") return Level::Warn;
    if (s == "info") return Level::Info;
    if (s == "debug") return Level::Debug;
    return Level::Warn;
  }();
  return lvl;
}

bool enabled(Level lvl) { return static_cast<int>(lvl) <= static_cast<int>(threshold()); }

void write(Level lvl, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::cerr << "[ccas:" << names[static_cast<int>(lvl)] << "] " << msg << "\n";
}

} // namespace ccas::log
