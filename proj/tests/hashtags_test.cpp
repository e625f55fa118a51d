#include <doctest.h>

#include "partisan/hashtags.hpp"
#include "support/tmpdir.hpp"

using namespace partisan;
using testsupport::TempDir;

namespace {

TweetRecord with_tags(const std::string& id, const std::string& author,
                      std::vector<std::string> tags) {
  TweetRecord r;
  r.tweet_id = id;
  r.author_id = author;
  r.language = "en";
  r.hashtags = std::move(tags);
  return r;
}

}  // namespace

TEST_SUITE_BEGIN("hashtags");

TEST_CASE("ranking counts a tag once per record") {
  std::vector<TweetRecord> records;
  records.push_back(with_tags("t1", "a", {"maga", "maga", "kag"}));
  records.push_back(with_tags("t2", "a", {"maga"}));
  GroupMap groups;
  groups["a"] = Group::ConservativeBot;

  auto top = top_hashtags(Corpus(std::move(records)), groups,
                          Group::ConservativeBot, 10, {});
  REQUIRE(top.size() == 2);
  CHECK(top[0] == HashtagCount{"maga", 2});  // not 3: repeats within t1 collapse
  CHECK(top[1] == HashtagCount{"kag", 1});
}

TEST_CASE("ranking is restricted to the requested group") {
  std::vector<TweetRecord> records;
  records.push_back(with_tags("t1", "bot", {"oneandonly"}));
  records.push_back(with_tags("t2", "human", {"other"}));
  GroupMap groups;
  groups["bot"] = Group::LiberalBot;
  groups["human"] = Group::LiberalHuman;
  Corpus corpus(std::move(records));

  auto bot_top = top_hashtags(corpus, groups, Group::LiberalBot, 10, {});
  REQUIRE(bot_top.size() == 1);
  CHECK(bot_top[0].tag == "oneandonly");
}

TEST_CASE("ties break lexicographically, k truncates") {
  std::vector<TweetRecord> records;
  records.push_back(with_tags("t1", "a", {"zebra"}));
  records.push_back(with_tags("t2", "a", {"apple"}));
  records.push_back(with_tags("t3", "a", {"apple", "zebra", "mid"}));
  GroupMap groups;
  groups["a"] = Group::LiberalHuman;
  Corpus corpus(std::move(records));

  auto top = top_hashtags(corpus, groups, Group::LiberalHuman, 2, {});
  REQUIRE(top.size() == 2);
  CHECK(top[0].tag == "apple");
  CHECK(top[1].tag == "zebra");
}

TEST_CASE("exclusions are dropped before ranking") {
  std::vector<TweetRecord> records;
  records.push_back(with_tags("t1", "a", {"midterms", "rare"}));
  records.push_back(with_tags("t2", "a", {"midterms"}));
  GroupMap groups;
  groups["a"] = Group::LiberalBot;
  StringSet exclusions{"midterms"};

  auto top = top_hashtags(Corpus(std::move(records)), groups, Group::LiberalBot, 10,
                          exclusions);
  REQUIRE(top.size() == 1);
  CHECK(top[0].tag == "rare");
}

TEST_CASE("divergence flags bot tags missing from the human list") {
  std::vector<HashtagCount> bot = {{"shared", 9}, {"botonly", 5}};
  std::vector<HashtagCount> human = {{"shared", 20}, {"humanonly", 3}};
  StringSet flags = divergence(bot, human);
  CHECK(flags.size() == 1);
  CHECK(flags.contains("botonly"));
}

TEST_CASE("report flags divergent bot tags against the counterpart humans") {
  std::vector<TweetRecord> records;
  records.push_back(with_tags("t1", "lb", {"fringe", "mainstream"}));
  records.push_back(with_tags("t2", "lh", {"mainstream"}));
  records.push_back(with_tags("t3", "cb", {"ownnarrative"}));
  records.push_back(with_tags("t4", "ch", {"different"}));
  GroupMap groups;
  groups["lb"] = Group::LiberalBot;
  groups["lh"] = Group::LiberalHuman;
  groups["cb"] = Group::ConservativeBot;
  groups["ch"] = Group::ConservativeHuman;

  HashtagReport rep = hashtag_report(Corpus(std::move(records)), groups, {}, 20, 50);
  auto lb = static_cast<size_t>(Group::LiberalBot);
  auto cb = static_cast<size_t>(Group::ConservativeBot);
  auto lh = static_cast<size_t>(Group::LiberalHuman);
  CHECK(rep.flagged[lb].contains("fringe"));
  CHECK_FALSE(rep.flagged[lb].contains("mainstream"));
  CHECK(rep.flagged[cb].contains("ownnarrative"));
  CHECK(rep.flagged[lh].empty());  // humans are never flagged
}

TEST_CASE("report truncates bot and human lists to their own lengths") {
  std::vector<TweetRecord> records;
  for (int i = 0; i < 30; ++i) {
    records.push_back(with_tags("bt" + std::to_string(i), "bot",
                                {"bot" + std::to_string(i)}));
    records.push_back(with_tags("ht" + std::to_string(i), "human",
                                {"hum" + std::to_string(i)}));
  }
  GroupMap groups;
  groups["bot"] = Group::LiberalBot;
  groups["human"] = Group::LiberalHuman;
  HashtagReport rep = hashtag_report(Corpus(std::move(records)), groups, {}, 20, 25);
  CHECK(rep.per_group[static_cast<size_t>(Group::LiberalBot)].size() == 20);
  CHECK(rep.per_group[static_cast<size_t>(Group::LiberalHuman)].size() == 25);
}

TEST_CASE("default exclusion list ships the broad campaign tags") {
  const auto& tags = default_exclusion_hashtags();
  CHECK(tags.size() == 7);
  StringSet set(tags.begin(), tags.end());
  CHECK(set.contains("midterms"));
  CHECK(set.contains("elections"));
  CHECK(set.contains("trump"));
}

TEST_CASE("exclusion file parsing folds case and strips '#'") {
  TempDir tmp("htexcl");
  std::string path = tmp.write("x.txt", "#MAGA\nresist\n\n; a comment\nBlueWave\n");
  StringSet s = load_hashtag_exclusions(path);
  CHECK(s.size() == 3);
  CHECK(s.contains("maga"));
  CHECK(s.contains("resist"));
  CHECK(s.contains("bluewave"));
}

TEST_CASE("report files are written per group") {
  TempDir tmp("htreport");
  std::vector<TweetRecord> records;
  records.push_back(with_tags("t1", "lb", {"tag1"}));
  GroupMap groups;
  groups["lb"] = Group::LiberalBot;
  HashtagReport rep = hashtag_report(Corpus(std::move(records)), groups, {}, 20, 50);
  write_hashtag_report(rep, tmp.path().string());
  CHECK(std::filesystem::exists(tmp.file("hashtags_liberal_bot.csv")));
  CHECK(std::filesystem::exists(tmp.file("hashtags_conservative_human.csv")));
  std::string content = testsupport::slurp(tmp.file("hashtags_liberal_bot.csv"));
  CHECK(content.find("tag1") != std::string::npos);
}

TEST_SUITE_END();
