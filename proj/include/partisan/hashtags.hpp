#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "partisan/corpus.hpp"
#include "partisan/groups.hpp"

namespace partisan {

// Broad campaign tags excluded from the rankings by default.
const std::vector<std::string>& default_exclusion_hashtags();

// One tag per line, case-folded, leading '#' stripped; blank lines skipped.
StringSet load_hashtag_exclusions(const std::string& path);

struct HashtagCount {
  std::string tag;
  uint64_t count = 0;

  bool operator==(const HashtagCount&) const = default;
};

// Most frequent hashtags among records authored by `group` members, counted
// once per record, exclusions removed; frequency descending, lexicographic
// tie-break.
std::vector<HashtagCount> top_hashtags(const Corpus& corpus, const GroupMap& groups,
                                       Group group, size_t k,
                                       const StringSet& exclusions);

// Tags in the bot ranking that the human ranking lacks.
StringSet divergence(const std::vector<HashtagCount>& bot_top,
                     const std::vector<HashtagCount>& human_top);

struct HashtagReport {
  size_t bot_top_n = 20;
  size_t human_top_n = 50;
  std::array<std::vector<HashtagCount>, kGroupCount> per_group;
  // For bot groups: tags in their ranking absent from the counterpart human
  // group's list. Empty for human groups.
  std::array<StringSet, kGroupCount> flagged;
};

HashtagReport hashtag_report(const Corpus& corpus, const GroupMap& groups,
                             const StringSet& exclusions, size_t bot_top_n = 20,
                             size_t human_top_n = 50);

// One CSV per group under `dir`: rank,hashtag,count,flagged.
void write_hashtag_report(const HashtagReport& report, const std::string& dir);

}  // namespace partisan
