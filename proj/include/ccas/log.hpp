#pragma once

#include <iostream>
#include <sstream>

namespace ccas::log {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Threshold from CCAS_LOG_LEVEL in {error, warn, info, debug}; default warn.
Level threshold();

bool enabled(Level lvl);

void write(Level lvl, const std::string& msg);

template <typename... Args>
void emit(Level lvl, Args&&... args) {
  if (!enabled(lvl)) return;
  std::ostringstream os;
  (os << ... << args);
  write(lvl, os.str());
}

template <typename... Args> void error(Args&&... args) { emit(Level::Error, args...); }
template <typename... Args> void warn(Args&&... args) { emit(Level::Warn, args...); }
template <typename... Args> void info(Args&&... args) { emit(Level::Info, args...); }
template <typename... Args> void debug(Args&&... args) { emit(Level::Debug, args...); }

} // namespace ccas::log
