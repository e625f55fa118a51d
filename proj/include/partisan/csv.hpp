#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "partisan/util.hpp"

namespace partisan {

// Minimal RFC-4180 writer. Fields containing a comma, quote, or newline are
// quoted; doubles are formatted with fmt_double so outputs are byte-stable.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void row(const std::vector<std::string>& fields);

  // Convenience for mixed rows.
  class Row {
   public:
    explicit Row(CsvWriter& w) : w_(w) {}
    Row& operator<<(std::string_view field);
    Row& operator<<(const char* field) { return *this << std::string_view(field); }
    Row& operator<<(const std::string& field) { return *this << std::string_view(field); }
    Row& operator<<(double v);
    Row& operator<<(uint64_t v);
    Row& operator<<(uint32_t v) { return *this << uint64_t(v); }
    Row& operator<<(int v);
    // Emits the row; allowed to throw so write failures are not swallowed.
    ~Row() noexcept(false);

   private:
    CsvWriter& w_;
    std::vector<std::string> fields_;
  };

  Row row() { return Row(*this); }

 private:
  std::ofstream out_;
  std::string path_;
};

std::string csv_escape(std::string_view field);

}  // namespace partisan
