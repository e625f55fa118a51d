#include "partisan/hashtags.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "partisan/csv.hpp"
#include "partisan/errors.hpp"

namespace partisan {

const std::vector<std::string>& default_exclusion_hashtags() {
  static const std::vector<std::string> tags = {
      "elections",  "midterms",  "democrats",          "liberals",
      "voteredtosaveamerica",    "votebluetosaveamerica", "trump",
  };
  return tags;
}

StringSet load_hashtag_exclusions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open: " + path);
  StringSet out;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view t = trim(line);
    if (t.empty() || t.front() == ';') continue;
    if (t.front() == '#') t.remove_prefix(1);
    if (!t.empty()) out.insert(to_lower(t));
  }
  return out;
}

std::vector<HashtagCount> top_hashtags(const Corpus& corpus, const GroupMap& groups,
                                       Group group, size_t k,
                                       const StringSet& exclusions) {
  StringMap<uint64_t> counts;
  for (const auto& [author, indices] : corpus.author_index()) {
    if (group_of(groups, author) != group) continue;
    for (uint32_t idx : indices) {
      const TweetRecord& r = corpus.records()[idx];
      // Once per record: a tag repeated inside one tweet counts a single time.
      for (size_t i = 0; i < r.hashtags.size(); ++i) {
        const std::string& tag = r.hashtags[i];
        bool repeat = false;
        for (size_t j = 0; j < i; ++j) repeat = repeat || r.hashtags[j] == tag;
        if (repeat || exclusions.contains(tag)) continue;
        ++counts[tag];
      }
    }
  }
  std::vector<HashtagCount> ranked;
  ranked.reserve(counts.size());
  for (const auto& [tag, c] : counts) ranked.push_back({tag, c});
  std::sort(ranked.begin(), ranked.end(), [](const HashtagCount& a, const HashtagCount& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.tag < b.tag;
  });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

StringSet divergence(const std::vector<HashtagCount>& bot_top,
                     const std::vector<HashtagCount>& human_top) {
  StringSet human_tags;
  human_tags.reserve(human_top.size());
  for (const HashtagCount& h : human_top) human_tags.insert(h.tag);
  StringSet flags;
  for (const HashtagCount& b : bot_top) {
    if (!human_tags.contains(b.tag)) flags.insert(b.tag);
  }
  return flags;
}

HashtagReport hashtag_report(const Corpus& corpus, const GroupMap& groups,
                             const StringSet& exclusions, size_t bot_top_n,
                             size_t human_top_n) {
  HashtagReport rep;
  rep.bot_top_n = bot_top_n;
  rep.human_top_n = human_top_n;
  for (size_t g = 0; g < kGroupCount; ++g) {
    Group group = static_cast<Group>(g);
    size_t k = is_bot(group) ? bot_top_n : human_top_n;
    rep.per_group[g] = top_hashtags(corpus, groups, group, k, exclusions);
  }
  for (Group bot : {Group::LiberalBot, Group::ConservativeBot}) {
    size_t b = static_cast<size_t>(bot);
    size_t h = static_cast<size_t>(counterpart_human(bot));
    rep.flagged[b] = divergence(rep.per_group[b], rep.per_group[h]);
  }
  return rep;
}

void write_hashtag_report(const HashtagReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (size_t g = 0; g < kGroupCount; ++g) {
    Group group = static_cast<Group>(g);
    std::string path = dir + "/hashtags_" + to_string(group) + ".csv";
    CsvWriter csv(path);
    csv.row({"rank", "hashtag", "count", "flagged"});
    const auto& ranked = report.per_group[g];
    for (size_t i = 0; i < ranked.size(); ++i) {
      bool flagged = report.flagged[g].contains(ranked[i].tag);
      csv.row() << uint64_t(i + 1) << ranked[i].tag << ranked[i].count
                << (flagged ? 1 : 0);
    }
  }
}

}  // namespace partisan
