#pragma once

#include <string_view>

namespace partisan::log {

// Verbosity comes from the PARTISAN_LOG env var: quiet, warn, info, debug.
enum class Level { Quiet = 0, Warn = 1, Info = 2, Debug = 3 };

Level level();
void warn(std::string_view msg);
void info(std::string_view msg);
void debug(std::string_view msg);

}  // namespace partisan::log
