#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "partisan/util.hpp"

namespace partisan {

enum class MissingReason : uint8_t { Suspended, Protected, NotQueried };
enum class AccountClass : uint8_t { Human = 0, Bot = 1, Unknown = 2 };

const char* to_string(MissingReason r);
const char* to_string(AccountClass c);
std::optional<MissingReason> parse_missing_reason(std::string_view s);

// Scores in [0,1] keyed by account; accounts the scorer could not rate sit in
// `missing` with a reason. The two key sets are disjoint (a score row and a
// missing row for the same account: last one wins).
struct BotScoreTable {
  StringMap<double> scores;
  StringMap<MissingReason> missing;
};

struct ScoreLoadReport {
  uint64_t rows = 0;
  uint64_t rejected_range = 0;   // score outside [0,1]
  uint64_t rejected_malformed = 0;
  uint64_t duplicates = 0;       // same account seen again; last wins
};

// CSV rows: `account_id,score` or `account_id,MISSING,reason`. A header line
// starting with "account_id" is skipped.
BotScoreTable load_scores(const std::string& path, ScoreLoadReport* report = nullptr);
BotScoreTable parse_scores(std::istream& in, ScoreLoadReport* report = nullptr);

// Strictly-above threshold: score > t is a Bot, score <= t is a Human,
// no score means Unknown.
StringMap<AccountClass> classify(const BotScoreTable& table, double threshold,
                                 const std::vector<std::string>& account_ids);

// Fixed-width score histogram over [0,1]; scores equal to 1 land in the last
// bin. Default 0.05 steps give 20 bins.
std::vector<uint64_t> score_histogram(const BotScoreTable& table, double bin_width = 0.05);

}  // namespace partisan
