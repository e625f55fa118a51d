#pragma once

#include <iosfwd>
#include <string>

#include "partisan/corpus.hpp"
#include "partisan/execution.hpp"

namespace partisan {

// Drop tallies, in the order the filters run: parse, dedup, language,
// exclusion terms.
struct IngestReport {
  uint64_t lines_read = 0;
  uint64_t kept = 0;
  uint64_t dropped_malformed = 0;
  uint64_t dropped_duplicate = 0;
  uint64_t dropped_language = 0;
  uint64_t dropped_excluded = 0;

  uint64_t dropped_total() const {
    return dropped_malformed + dropped_duplicate + dropped_language + dropped_excluded;
  }
};

// Reads line-delimited JSON records. Malformed lines are tallied, not fatal.
// Duplicate tweet ids keep the first occurrence in input order; dedup runs
// before the content filters so that growing the exclusion list can only
// shrink the output. Lines are parsed in parallel per chunk; the merge is
// sequential in input order, so the result is identical to a serial run.
Corpus ingest(std::istream& in, const FilterConfig& config,
              IngestReport* report = nullptr,
              Execution exec = Execution::Parallel);

// Throws InputError when the file cannot be opened.
Corpus ingest_file(const std::string& path, const FilterConfig& config,
                   IngestReport* report = nullptr,
                   Execution exec = Execution::Parallel);

// One exclusion term per line, lowercased; blank lines skipped.
std::vector<std::string> load_exclusion_terms(const std::string& path);

void write_ingest_report(const IngestReport& report, const std::string& path);

}  // namespace partisan
