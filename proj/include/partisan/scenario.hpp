#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "partisan/corpus.hpp"
#include "partisan/groups.hpp"
#include "partisan/util.hpp"

namespace partisan {

// Synthetic-corpus generator. Every quantity of interest (group membership,
// interaction matrix, effectiveness metrics) is either fixed by construction
// or has a closed-form expectation, which makes generated corpora usable as
// test fixtures with known answers.

struct KindMix {
  double originals = 1.0;
  double retweets = 0.0;
  double replies = 0.0;
};

struct GroupSpec {
  uint32_t accounts = 0;
  double tweets_per_user = 0.0;
  KindMix mix;
  // Target-group distribution for this group's retweets and replies.
  std::array<double, kGroupCount> propensity{};
  // Fraction of originals carrying a URL from the group's own side's outlets.
  double url_rate = 0.0;
  double hashtag_rate = 0.0;
  std::vector<std::string> hashtag_pool;
};

// Accounts with no score row and no outlet URLs; they retweet uniformly.
struct ResidualSpec {
  uint32_t accounts = 0;
  double tweets_per_user = 0.0;
  KindMix mix{0.6, 0.4, 0.0};
};

struct ScoreSpec {
  double bot_lo = 0.65, bot_hi = 0.95;
  double human_lo = 0.02, human_hi = 0.22;
  double missing_rate = 0.0;  // accounts silently dropped from the score file
};

// Placeholder outlet domains a spec starts out with.
const std::vector<std::string>& default_liberal_domains();
const std::vector<std::string>& default_conservative_domains();

struct ScenarioSpec {
  uint64_t rng_seed = 1;
  std::array<GroupSpec, kGroupCount> groups;
  ResidualSpec residual;
  std::vector<std::string> liberal_domains = default_liberal_domains();
  std::vector<std::string> conservative_domains = default_conservative_domains();
  std::string shortener_host = "sh.rt";
  double shortener_rate = 0.5;  // fraction of embedded URLs passed through it
  ScoreSpec scores;

  static ScenarioSpec load(const std::string& path);  // JSON, throws InputError
  // Throws InputError on rates outside [0,1], kind mixes or propensity rows
  // not summing to 1, or an all-zero propensity row with positive activity.
  void validate() const;
};

// Small-scenario form: everything in memory.
struct ScenarioData {
  std::vector<TweetRecord> records;
  GroupMap groups;             // ground truth, residual accounts included
  StringMap<double> scores;    // accounts present in the score table
  std::vector<std::pair<std::string, std::string>> url_cache;  // short -> long
};

ScenarioData generate_scenario_data(const ScenarioSpec& spec);

struct ScenarioFiles {
  std::string corpus_path;
  std::string scores_path;
  std::string groups_path;  // ground-truth account,group table
  std::string url_cache_path;
  std::string liberal_outlets_path;
  std::string conservative_outlets_path;
  std::string expected_path;  // closed-form expectations, JSON
};

// Streams the corpus to disk (constant memory in the record count), so it
// also serves the large performance scenarios.
ScenarioFiles generate_scenario(const ScenarioSpec& spec, const std::string& out_dir);

}  // namespace partisan
