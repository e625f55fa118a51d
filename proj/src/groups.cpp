#include "partisan/groups.hpp"

#include <algorithm>
#include <fstream>

#include "partisan/csv.hpp"
#include "partisan/errors.hpp"

namespace partisan {

const char* to_string(Leaning l) {
  switch (l) {
    case Leaning::Liberal: return "liberal";
    case Leaning::Conservative: return "conservative";
    case Leaning::Unlabeled: return "unlabeled";
  }
  return "?";
}

const char* to_string(Side s) {
  return s == Side::Liberal ? "liberal" : "conservative";
}

const char* to_string(Group g) {
  switch (g) {
    case Group::LiberalHuman: return "liberal_human";
    case Group::ConservativeHuman: return "conservative_human";
    case Group::LiberalBot: return "liberal_bot";
    case Group::ConservativeBot: return "conservative_bot";
    case Group::Residual: return "residual";
  }
  return "?";
}

std::optional<Side> parse_side(std::string_view s) {
  std::string l = to_lower(s);
  if (l == "liberal" || l == "lib" || l == "l") return Side::Liberal;
  if (l == "conservative" || l == "con" || l == "c") return Side::Conservative;
  return std::nullopt;
}

std::optional<Group> parse_group(std::string_view s) {
  std::string l = to_lower(s);
  std::replace(l.begin(), l.end(), '-', '_');
  if (!l.empty() && l.back() == 's') l.pop_back();  // accept plurals
  if (l == "liberal_human") return Group::LiberalHuman;
  if (l == "conservative_human") return Group::ConservativeHuman;
  if (l == "liberal_bot") return Group::LiberalBot;
  if (l == "conservative_bot") return Group::ConservativeBot;
  if (l == "residual") return Group::Residual;
  return std::nullopt;
}

GroupMap assign_groups(const StringMap<AccountClass>& classes,
                       const StringMap<Leaning>& leanings) {
  GroupMap out;
  out.reserve(classes.size());
  for (const auto& [account, cls] : classes) {
    Leaning leaning = Leaning::Unlabeled;
    if (auto it = leanings.find(account); it != leanings.end()) leaning = it->second;
    out[account] = make_group(cls, leaning);
  }
  return out;
}

Group group_of(const GroupMap& groups, std::string_view account) {
  auto it = groups.find(account);
  return it == groups.end() ? Group::Residual : it->second;
}

void save_groups(const GroupMap& groups, const std::string& path) {
  std::vector<std::pair<std::string_view, Group>> rows(groups.begin(), groups.end());
  std::sort(rows.begin(), rows.end());
  CsvWriter csv(path);
  csv.row({"account_id", "group"});
  for (const auto& [account, group] : rows) csv.row() << account << to_string(group);
}

GroupMap load_groups(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open: " + path);
  GroupMap out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    if (first) {
      first = false;
      if (sv.starts_with("account_id")) continue;
    }
    std::vector<std::string> fields = split(sv, ',');
    if (fields.size() != 2 || fields[0].empty())
      throw InputError("bad group row in " + path + ": " + std::string(sv));
    auto group = parse_group(fields[1]);
    if (!group) throw InputError("unknown group in " + path + ": " + fields[1]);
    out[fields[0]] = *group;
  }
  return out;
}

}  // namespace partisan
