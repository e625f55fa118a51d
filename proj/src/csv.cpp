#include "partisan/csv.hpp"

#include "partisan/errors.hpp"

namespace partisan {

std::string csv_escape(std::string_view field) {
  bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary), path_(path) {
  if (!out_) throw InputError("cannot open for writing: " + path);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_escape(fields[i]);
  }
  out_ << '\n';
  if (!out_) throw InputError("write failed: " + path_);
}

CsvWriter::Row& CsvWriter::Row::operator<<(std::string_view field) {
  fields_.emplace_back(field);
  return *this;
}

CsvWriter::Row& CsvWriter::Row::operator<<(double v) {
  fields_.push_back(fmt_double(v));
  return *this;
}

CsvWriter::Row& CsvWriter::Row::operator<<(uint64_t v) {
  fields_.push_back(std::to_string(v));
  return *this;
}

CsvWriter::Row& CsvWriter::Row::operator<<(int v) {
  fields_.push_back(std::to_string(v));
  return *this;
}

CsvWriter::Row::~Row() noexcept(false) { w_.row(fields_); }

}  // namespace partisan
