#include "partisan/effectiveness.hpp"

#include "partisan/csv.hpp"

namespace partisan {

EffectivenessReport effectiveness(const Corpus& corpus, const GroupMap& groups,
                                  std::optional<Side> side) {
  EffectivenessReport rep;
  rep.both_sides = !side.has_value();
  if (side) rep.side = *side;

  auto is_side_human = [&](Group g) {
    return rep.both_sides ? is_human(g) : g == human_group(rep.side);
  };
  auto is_side_bot = [&](Group g) {
    return rep.both_sides ? is_bot(g) : g == bot_group(rep.side);
  };

  // Tweets authored by the side's bots, by id: the TSR universe.
  StringSet bot_tweets;
  for (const TweetRecord& r : corpus.records()) {
    if (is_side_bot(group_of(groups, r.author_id))) bot_tweets.insert(r.tweet_id);
  }
  rep.tsr.denominator = bot_tweets.size();

  StringSet bot_tweets_hit;  // bot tweets with >= 1 side-human retweet
  for (const TweetRecord& r : corpus.records()) {
    Group ag = group_of(groups, r.author_id);
    if (!is_side_human(ag)) continue;
    ++rep.h2br.denominator;  // every record the side's humans produce

    if (r.kind != TweetKind::Retweet && r.kind != TweetKind::Reply) continue;
    bool target_is_bot =
        r.referenced_author_id &&
        is_side_bot(group_of(groups, *r.referenced_author_id));
    if (r.kind == TweetKind::Retweet) {
      ++rep.rtp.denominator;
      if (target_is_bot) {
        ++rep.rtp.numerator;
        ++rep.h2br.numerator;
      }
      // TSR credits the concrete tweet, which must exist in the corpus and be
      // bot-authored; attribution via the id keeps the ratio within [0,1].
      if (r.referenced_tweet_id && bot_tweets.contains(*r.referenced_tweet_id)) {
        bot_tweets_hit.insert(*r.referenced_tweet_id);
      }
    } else {  // Reply
      ++rep.rr.denominator;
      if (target_is_bot) {
        ++rep.rr.numerator;
        ++rep.h2br.numerator;
      }
    }
  }
  rep.tsr.numerator = bot_tweets_hit.size();
  return rep;
}

namespace {

void write_metric(CsvWriter& csv, std::string_view side, const char* name,
                  const MetricRatio& m) {
  auto r = csv.row();
  r << side << name << m.numerator << m.denominator;
  if (m.defined()) {
    r << m.value();
  } else {
    r << "undefined";
  }
}

}  // namespace

void write_effectiveness(const std::vector<EffectivenessReport>& reports,
                         const std::string& path) {
  CsvWriter csv(path);
  csv.row({"side", "metric", "numerator", "denominator", "value"});
  for (const EffectivenessReport& rep : reports) {
    std::string side = rep.both_sides ? "both" : to_string(rep.side);
    write_metric(csv, side, "rtp", rep.rtp);
    write_metric(csv, side, "rr", rep.rr);
    write_metric(csv, side, "h2br", rep.h2br);
    write_metric(csv, side, "tsr", rep.tsr);
  }
}

}  // namespace partisan
