#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "partisan/corpus.hpp"
#include "partisan/groups.hpp"

namespace partisan {

struct MetricRatio {
  uint64_t numerator = 0;
  uint64_t denominator = 0;

  bool defined() const { return denominator != 0; }
  double value() const { return defined() ? double(numerator) / double(denominator) : 0.0; }
};

// The four bot-effectiveness metrics for one partisan side. "Side humans" and
// "side bots" are the human/bot groups of that side; the rival side plays no
// part except under the both-sides variant, where humans and bots of both
// sides are pooled.
//
//   RTP  = side-human retweets of side-bot tweets / all side-human retweets
//   RR   = side-human replies to side-bot tweets / all side-human replies
//   H2BR = side-human interactions with side-bot tweets / all side-human records
//   TSR  = distinct side-bot corpus tweets retweeted by a side-human
//          / all records authored by side-bots
struct EffectivenessReport {
  Side side = Side::Liberal;
  bool both_sides = false;  // pooled variant: humans = LH+CH, bots = LB+CB
  MetricRatio rtp;
  MetricRatio rr;
  MetricRatio h2br;
  MetricRatio tsr;
};

// side == nullopt computes the pooled both-sides variant.
EffectivenessReport effectiveness(const Corpus& corpus, const GroupMap& groups,
                                  std::optional<Side> side);

void write_effectiveness(const std::vector<EffectivenessReport>& reports,
                         const std::string& path);

}  // namespace partisan
