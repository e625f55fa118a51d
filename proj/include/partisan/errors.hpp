#pragma once

#include <stdexcept>
#include <string>

namespace partisan {

// Unreadable or invalid input (missing file, bad config). CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A pipeline stage failed part-way through a run. CLI exit code 2.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& msg)
      : std::runtime_error("[" + stage + "] " + msg), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace partisan
