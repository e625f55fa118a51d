#include "partisan/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace partisan::log {

namespace {

Level parse_level() {
  const char* env = std::getenv("PARTISAN_LOG");
  if (!env) return Level::Warn;
  if (std::strcmp(env, "quiet") == 0) return Level::Quiet;
  if (std::strcmp(env, "warn") == 0) return Level::Warn;
  if (std::strcmp(env, "info") == 0) return Level::Info;
  if (std::strcmp(env, "debug") == 0) return Level::Debug;
  return Level::Warn;
}

void emit(const char* tag, std::string_view msg) {
  std::fprintf(stderr, "%s %.*s\n", tag, static_cast<int>(msg.size()), msg.data());
}

}  // namespace

Level level() {
  static const Level lvl = parse_level();
  return lvl;
}

void warn(std::string_view msg) {
  if (level() >= Level::Warn) emit("[warn]", msg);
}

void info(std::string_view msg) {
  if (level() >= Level::Info) emit("[info]", msg);
}

void debug(std::string_view msg) {
  if (level() >= Level::Debug) emit("[debug]", msg);
}

}  // namespace partisan::log
