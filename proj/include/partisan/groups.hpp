#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "partisan/bot_scores.hpp"
#include "partisan/util.hpp"

namespace partisan {

enum class Leaning : uint8_t { Liberal = 0, Conservative = 1, Unlabeled = 2 };
enum class Side : uint8_t { Liberal = 0, Conservative = 1 };

// Bot class x leaning. Residual covers anything Unknown or Unlabeled; those
// accounts stay in the graph topology but are excluded from group aggregates.
enum class Group : uint8_t {
  LiberalHuman = 0,
  ConservativeHuman = 1,
  LiberalBot = 2,
  ConservativeBot = 3,
  Residual = 4,
};

constexpr size_t kGroupCount = 4;  // non-residual groups

const char* to_string(Leaning l);
const char* to_string(Side s);
const char* to_string(Group g);
std::optional<Side> parse_side(std::string_view s);
// Accepts "liberal_bot", "liberal-bots", "conservative_human", ... and the
// residual group.
std::optional<Group> parse_group(std::string_view s);

inline Group make_group(AccountClass c, Leaning l) {
  if (c == AccountClass::Unknown || l == Leaning::Unlabeled) return Group::Residual;
  if (c == AccountClass::Bot)
    return l == Leaning::Liberal ? Group::LiberalBot : Group::ConservativeBot;
  return l == Leaning::Liberal ? Group::LiberalHuman : Group::ConservativeHuman;
}

inline bool is_bot(Group g) { return g == Group::LiberalBot || g == Group::ConservativeBot; }
inline bool is_human(Group g) { return g == Group::LiberalHuman || g == Group::ConservativeHuman; }
inline Group human_group(Side s) {
  return s == Side::Liberal ? Group::LiberalHuman : Group::ConservativeHuman;
}
inline Group bot_group(Side s) {
  return s == Side::Liberal ? Group::LiberalBot : Group::ConservativeBot;
}
// The human group a bot group is compared against in the hashtag analysis.
inline Group counterpart_human(Group bot) {
  return bot == Group::LiberalBot ? Group::LiberalHuman : Group::ConservativeHuman;
}

using GroupMap = StringMap<Group>;

// Crosses bot classes with leanings over the class map's account universe.
// Accounts missing a leaning entry are Residual.
GroupMap assign_groups(const StringMap<AccountClass>& classes,
                       const StringMap<Leaning>& leanings);

Group group_of(const GroupMap& groups, std::string_view account);  // Residual if absent

void save_groups(const GroupMap& groups, const std::string& path);
GroupMap load_groups(const std::string& path);

}  // namespace partisan
