#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "partisan/execution.hpp"
#include "partisan/util.hpp"

namespace partisan {

enum class TweetKind : uint8_t { Original = 0, Retweet = 1, Reply = 2 };

const char* to_string(TweetKind k);

// One post. Retweets carry both referenced fields, replies carry at least the
// referenced author, originals carry neither. Hashtags are stored case-folded
// without the leading '#'.
struct TweetRecord {
  std::string tweet_id;
  std::string author_id;
  TweetKind kind = TweetKind::Original;
  std::optional<std::string> referenced_tweet_id;
  std::optional<std::string> referenced_author_id;
  std::string language;
  std::string text;
  std::vector<std::string> hashtags;
  std::vector<std::string> urls;
  std::string created_at;  // ISO-8601, stored verbatim

  bool operator==(const TweetRecord&) const = default;
};

struct FilterConfig {
  StringSet keep_languages{"en"};
  // Lowercased terms. Each is matched as a substring of the lowercased text
  // and, with any leading '#' stripped, as an exact hashtag.
  std::vector<std::string> exclusion_terms;
  bool dedup = true;
};

struct CorpusStats {
  uint64_t n_tweets = 0;  // originals
  uint64_t n_retweets = 0;
  uint64_t n_replies = 0;
  uint64_t n_users = 0;  // distinct authors plus accounts seen only as targets

  bool operator==(const CorpusStats&) const = default;
};

// Immutable record store with by-author and by-kind indices. Safe for
// concurrent reads once built.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<TweetRecord> records);

  const std::vector<TweetRecord>& records() const { return records_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  std::span<const uint32_t> by_kind(TweetKind k) const {
    return by_kind_[static_cast<size_t>(k)];
  }
  // nullptr when the account authored nothing.
  const std::vector<uint32_t>* by_author(std::string_view author) const;
  const StringMap<std::vector<uint32_t>>& author_index() const { return by_author_; }

  // Every account id appearing as author or referenced author, in first
  // appearance order. This is the node set of the retweet graph.
  std::vector<std::string> account_ids() const;

 private:
  std::vector<TweetRecord> records_;
  std::array<std::vector<uint32_t>, 3> by_kind_;
  StringMap<std::vector<uint32_t>> by_author_;
};

CorpusStats stats(const Corpus& corpus);

// Compact binary snapshot, magic-tagged; load rebuilds the indices.
void save_corpus(const Corpus& corpus, const std::string& path);
Corpus load_corpus(const std::string& path);
bool is_corpus_file(const std::string& path);  // checks the magic bytes

}  // namespace partisan
