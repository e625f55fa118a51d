#include "partisan/bot_scores.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>

#include "partisan/errors.hpp"
#include "partisan/log.hpp"

namespace partisan {

const char* to_string(MissingReason r) {
  switch (r) {
    case MissingReason::Suspended: return "suspended";
    case MissingReason::Protected: return "protected";
    case MissingReason::NotQueried: return "not_queried";
  }
  return "?";
}

const char* to_string(AccountClass c) {
  switch (c) {
    case AccountClass::Human: return "human";
    case AccountClass::Bot: return "bot";
    case AccountClass::Unknown: return "unknown";
  }
  return "?";
}

std::optional<MissingReason> parse_missing_reason(std::string_view s) {
  std::string l = to_lower(s);
  if (l == "suspended") return MissingReason::Suspended;
  if (l == "protected") return MissingReason::Protected;
  if (l == "not_queried" || l == "notqueried") return MissingReason::NotQueried;
  return std::nullopt;
}

namespace {

bool parse_score(std::string_view s, double& out) {
  std::string buf(trim(s));
  if (buf.empty()) return false;
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(buf.c_str(), &end);
  if (errno != 0 || end != buf.c_str() + buf.size()) return false;
  out = v;
  return true;
}

}  // namespace

BotScoreTable parse_scores(std::istream& in, ScoreLoadReport* report) {
  ScoreLoadReport local;
  ScoreLoadReport& rep = report ? *report : local;
  rep = ScoreLoadReport{};

  BotScoreTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    if (first) {
      first = false;
      if (sv.starts_with("account_id")) continue;  // header
    }
    ++rep.rows;
    std::vector<std::string> fields = split(sv, ',');
    if (fields.size() < 2 || fields[0].empty()) {
      ++rep.rejected_malformed;
      continue;
    }
    std::string account(trim(fields[0]));
    std::string_view second = trim(fields[1]);
    if (second == "MISSING" || second == "missing") {
      MissingReason reason = MissingReason::NotQueried;
      if (fields.size() >= 3) {
        auto parsed = parse_missing_reason(trim(fields[2]));
        if (!parsed) {
          ++rep.rejected_malformed;
          continue;
        }
        reason = *parsed;
      }
      if (table.scores.erase(account) || table.missing.contains(account)) {
        ++rep.duplicates;
        log::warn("duplicate score row for " + account + "; last wins");
      }
      table.missing[std::move(account)] = reason;
      continue;
    }
    double score = 0;
    if (!parse_score(second, score)) {
      ++rep.rejected_malformed;
      continue;
    }
    if (score < 0.0 || score > 1.0) {
      ++rep.rejected_range;
      log::warn("score out of range for " + account + "; row rejected");
      continue;
    }
    if (table.missing.erase(account) || table.scores.contains(account)) {
      ++rep.duplicates;
      log::warn("duplicate score row for " + account + "; last wins");
    }
    table.scores[std::move(account)] = score;
  }
  return table;
}

BotScoreTable load_scores(const std::string& path, ScoreLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open: " + path);
  return parse_scores(in, report);
}

StringMap<AccountClass> classify(const BotScoreTable& table, double threshold,
                                 const std::vector<std::string>& account_ids) {
  if (threshold < 0.0 || threshold > 1.0)
    throw InputError("threshold must be in [0,1]");
  StringMap<AccountClass> out;
  out.reserve(account_ids.size());
  for (const std::string& id : account_ids) {
    auto it = table.scores.find(id);
    if (it == table.scores.end()) {
      out[id] = AccountClass::Unknown;
    } else {
      // "above the threshold" is strict: a score of exactly 0.3 stays Human.
      out[id] = it->second > threshold ? AccountClass::Bot : AccountClass::Human;
    }
  }
  return out;
}

std::vector<uint64_t> score_histogram(const BotScoreTable& table, double bin_width) {
  if (bin_width <= 0.0 || bin_width > 1.0)
    throw InputError("bin width must be in (0,1]");
  size_t bins = static_cast<size_t>(1.0 / bin_width + 0.5);
  if (bins == 0) bins = 1;
  std::vector<uint64_t> hist(bins, 0);
  for (const auto& [id, score] : table.scores) {
    size_t b = static_cast<size_t>(score / bin_width);
    if (b >= bins) b = bins - 1;  // score == 1.0
    ++hist[b];
  }
  return hist;
}

}  // namespace partisan
