#include "partisan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "partisan/csv.hpp"
#include "partisan/errors.hpp"
#include "partisan/rng.hpp"
#include "partisan/url.hpp"

namespace partisan {

const std::vector<std::string>& default_liberal_domains() {
  static const std::vector<std::string> v = {
      "blueherald.example", "dailyprogress.example", "leftledger.example",
      "civicmirror.example"};
  return v;
}

const std::vector<std::string>& default_conservative_domains() {
  static const std::vector<std::string> v = {
      "redstatewire.example", "libertybeacon.example", "eaglepost.example",
      "heartlandtimes.example"};
  return v;
}

namespace {

constexpr size_t kResidualBlock = kGroupCount;  // block 4
constexpr const char* kBlockPrefix[5] = {"lh", "ch", "lb", "cb", "rs"};

std::string account_id(size_t block, uint32_t i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%s%06u", kBlockPrefix[block], i + 1);
  return buf;
}

std::string tweet_id(uint64_t ordinal) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "t%09llu", static_cast<unsigned long long>(ordinal + 1));
  return buf;
}

std::string base36(uint64_t v) {
  static const char digits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string out;
  do {
    out.push_back(digits[v % 36]);
    v /= 36;
  } while (v > 0);
  std::reverse(out.begin(), out.end());
  return out;
}

void check_rate(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw InputError(std::string("scenario: ") + name + " must be in [0,1]");
}

void check_mix(const KindMix& mix, const char* who, bool active) {
  for (double v : {mix.originals, mix.retweets, mix.replies}) {
    if (!(v >= 0.0))
      throw InputError(std::string("scenario: negative kind mix for ") + who);
  }
  if (!active) return;
  double sum = mix.originals + mix.retweets + mix.replies;
  if (std::abs(sum - 1.0) > 1e-9)
    throw InputError(std::string("scenario: kind mix for ") + who +
                     " must sum to 1");
}

// Everything phase B needs to know about one account.
struct AccountPlan {
  uint32_t n_orig = 0;
  uint32_t n_rt = 0;
  uint32_t n_reply = 0;
  uint64_t first_orig = 0;  // global ordinal of this account's first original
};

struct Layout {
  std::array<uint32_t, 5> block_size{};
  std::array<uint32_t, 5> block_start{};  // global account ordinal of block base
  std::vector<AccountPlan> plans;         // indexed by global account ordinal
  uint64_t total_originals = 0;
  std::vector<std::vector<uint32_t>> eligible;  // per block: accounts with originals
  std::vector<uint32_t> eligible_all;
};

size_t block_of(const Layout& lay, uint32_t account) {
  for (size_t b = 0; b < 5; ++b) {
    if (account < lay.block_start[b] + lay.block_size[b]) return b;
  }
  return kResidualBlock;
}

// Deterministic integer layout: group totals are rounded once, then spread so
// the first (total % accounts) accounts carry one extra record.
Layout plan_layout(const ScenarioSpec& spec) {
  Layout lay;
  for (size_t b = 0; b < kGroupCount; ++b) lay.block_size[b] = spec.groups[b].accounts;
  lay.block_size[kResidualBlock] = spec.residual.accounts;
  uint32_t start = 0;
  for (size_t b = 0; b < 5; ++b) {
    lay.block_start[b] = start;
    start += lay.block_size[b];
  }
  lay.plans.resize(start);

  for (size_t b = 0; b < 5; ++b) {
    const uint32_t n = lay.block_size[b];
    if (n == 0) continue;
    double per_user =
        b == kResidualBlock ? spec.residual.tweets_per_user : spec.groups[b].tweets_per_user;
    const KindMix& mix =
        b == kResidualBlock ? spec.residual.mix : spec.groups[b].mix;
    auto total = static_cast<uint64_t>(std::llround(per_user * n));
    uint64_t base = total / n, extra = total % n;
    for (uint32_t i = 0; i < n; ++i) {
      AccountPlan& p = lay.plans[lay.block_start[b] + i];
      auto count = static_cast<uint32_t>(base + (i < extra ? 1 : 0));
      auto n_orig = static_cast<uint32_t>(std::llround(count * mix.originals));
      auto n_reply = static_cast<uint32_t>(std::llround(count * mix.replies));
      if (n_orig > count) n_orig = count;
      if (n_orig + n_reply > count) n_reply = count - n_orig;
      p.n_orig = n_orig;
      p.n_reply = n_reply;
      p.n_rt = count - n_orig - n_reply;
    }
  }

  uint64_t orig_ordinal = 0;
  for (AccountPlan& p : lay.plans) {
    p.first_orig = orig_ordinal;
    orig_ordinal += p.n_orig;
  }
  lay.total_originals = orig_ordinal;

  lay.eligible.resize(5);
  for (uint32_t a = 0; a < lay.plans.size(); ++a) {
    if (lay.plans[a].n_orig == 0) continue;
    lay.eligible[block_of(lay, a)].push_back(a);
    lay.eligible_all.push_back(a);
  }
  return lay;
}

// Uniform pick from a sorted pool, never returning `self`. Empty pools (after
// exclusion) return nullopt and the caller falls back to an original.
std::optional<uint32_t> pick_target(const std::vector<uint32_t>& pool, uint32_t self,
                                    DetRng& rng) {
  if (pool.empty()) return std::nullopt;
  auto it = std::lower_bound(pool.begin(), pool.end(), self);
  bool contains_self = it != pool.end() && *it == self;
  if (!contains_self) return pool[rng.index(pool.size())];
  if (pool.size() == 1) return std::nullopt;
  size_t self_pos = static_cast<size_t>(it - pool.begin());
  size_t k = rng.index(pool.size() - 1);
  return pool[k < self_pos ? k : k + 1];
}

struct SideTally {
  uint64_t rtp_num = 0, rtp_den = 0;
  uint64_t rr_num = 0, rr_den = 0;
  uint64_t h2br_den = 0;
  uint64_t bot_records = 0;
  std::unordered_set<uint64_t> hit_originals;  // bot originals retweeted by side humans
};

struct GenResult {
  GroupMap groups;
  StringMap<double> scores;
  std::vector<std::pair<std::string, std::string>> url_cache;
  std::array<SideTally, 2> sides;
};

constexpr const char* kCreatedAt = "2018-11-06T12:00:00Z";

template <typename Sink>
GenResult generate(const ScenarioSpec& spec, Sink&& sink) {
  spec.validate();
  Layout lay = plan_layout(spec);

  // A group that wants to retweet needs something to retweet.
  for (size_t b = 0; b < kGroupCount; ++b) {
    const GroupSpec& g = spec.groups[b];
    bool interacts = g.accounts > 0 && (g.mix.retweets > 0 || g.mix.replies > 0) &&
                     g.tweets_per_user > 0;
    if (!interacts) continue;
    for (size_t t = 0; t < kGroupCount; ++t) {
      if (g.propensity[t] > 0 && lay.eligible[t].empty()) {
        throw InputError(std::string("scenario: group ") +
                         to_string(static_cast<Group>(b)) + " targets " +
                         to_string(static_cast<Group>(t)) +
                         " but that group has no originals");
      }
    }
  }

  GenResult res;

  // Account tables: ground-truth groups and scores.
  {
    DetRng score_rng(derive_seed(spec.rng_seed, "scenario-scores"));
    for (size_t b = 0; b < 5; ++b) {
      for (uint32_t i = 0; i < lay.block_size[b]; ++i) {
        std::string id = account_id(b, i);
        if (b == kResidualBlock) {
          res.groups[id] = Group::Residual;
          continue;
        }
        res.groups[id] = static_cast<Group>(b);
        bool bot = is_bot(static_cast<Group>(b));
        double lo = bot ? spec.scores.bot_lo : spec.scores.human_lo;
        double hi = bot ? spec.scores.bot_hi : spec.scores.human_hi;
        double score = score_rng.real(lo, hi);
        if (!score_rng.chance(spec.scores.missing_rate)) res.scores[id] = score;
      }
    }
  }

  DetRng rng(derive_seed(spec.rng_seed, "scenario-records"));
  uint64_t next_interaction_id = lay.total_originals;
  uint64_t story_counter = 0, short_counter = 0;

  auto side_of_block = [](size_t b) -> std::optional<Side> {
    if (b == 0 || b == 2) return Side::Liberal;
    if (b == 1 || b == 3) return Side::Conservative;
    return std::nullopt;
  };

  auto make_original = [&](size_t b, uint32_t account, uint64_t ordinal) {
    TweetRecord r;
    r.tweet_id = tweet_id(ordinal);
    r.author_id = account_id(b, account - lay.block_start[b]);
    r.kind = TweetKind::Original;
    r.language = "en";
    r.text = "post " + std::to_string(ordinal + 1);
    r.created_at = kCreatedAt;
    if (b != kResidualBlock) {
      const GroupSpec& g = spec.groups[b];
      if (g.url_rate > 0 && rng.chance(g.url_rate)) {
        auto side = side_of_block(b);
        const auto& domains = *side == Side::Liberal ? spec.liberal_domains
                                                     : spec.conservative_domains;
        std::string url = "https://www." + domains[rng.index(domains.size())] +
                          "/story/" + std::to_string(++story_counter);
        if (rng.chance(spec.shortener_rate)) {
          std::string short_url =
              "https://" + spec.shortener_host + "/" + base36(short_counter++);
          res.url_cache.emplace_back(short_url, url);
          r.urls.push_back(short_url);
        } else {
          r.urls.push_back(url);
        }
        r.text += " " + r.urls.back();
      }
      if (!g.hashtag_pool.empty() && g.hashtag_rate > 0 && rng.chance(g.hashtag_rate)) {
        const std::string& tag = g.hashtag_pool[rng.index(g.hashtag_pool.size())];
        r.hashtags.push_back(to_lower(tag));
        r.text += " #" + tag;
      }
    }
    return r;
  };

  // Phase A: originals, account-major, so every original's id is known before
  // any interaction references it.
  for (uint32_t a = 0; a < lay.plans.size(); ++a) {
    size_t b = block_of(lay, a);
    const AccountPlan& p = lay.plans[a];
    for (uint32_t j = 0; j < p.n_orig; ++j) {
      sink(make_original(b, a, p.first_orig + j));
    }
  }

  // Phase B: retweets then replies per account, targets drawn per propensity.
  for (uint32_t a = 0; a < lay.plans.size(); ++a) {
    size_t b = block_of(lay, a);
    const AccountPlan& p = lay.plans[a];
    auto draw_target = [&]() -> std::optional<uint32_t> {
      if (b == kResidualBlock) return pick_target(lay.eligible_all, a, rng);
      const auto& row = spec.groups[b].propensity;
      double x = rng.real();
      size_t t = 0;
      double acc = 0;
      for (; t + 1 < kGroupCount; ++t) {
        acc += row[t];
        if (x < acc) break;
      }
      return pick_target(lay.eligible[t], a, rng);
    };

    for (uint32_t j = 0; j < p.n_rt + p.n_reply; ++j) {
      bool is_rt = j < p.n_rt;
      auto target = draw_target();
      uint64_t ordinal = next_interaction_id++;
      if (!target) {
        sink(make_original(b, a, ordinal));
        continue;
      }
      const AccountPlan& tp = lay.plans[*target];
      uint64_t target_orig = tp.first_orig + rng.index(tp.n_orig);
      size_t tb = block_of(lay, *target);

      TweetRecord r;
      r.tweet_id = tweet_id(ordinal);
      r.author_id = account_id(b, a - lay.block_start[b]);
      r.kind = is_rt ? TweetKind::Retweet : TweetKind::Reply;
      r.referenced_tweet_id = tweet_id(target_orig);
      r.referenced_author_id = account_id(tb, *target - lay.block_start[tb]);
      r.language = "en";
      r.text = (is_rt ? "RT " : "re ") + *r.referenced_tweet_id;
      r.created_at = kCreatedAt;
      sink(std::move(r));

      // Realized effectiveness tallies for the ground-truth file.
      auto side = side_of_block(b);
      if (side && b < 2) {  // a side human
        auto& tal = res.sides[static_cast<size_t>(*side)];
        bool target_is_side_bot =
            tb < kGroupCount && side_of_block(tb) == side &&
            is_bot(static_cast<Group>(tb));
        if (is_rt) {
          ++tal.rtp_den;
          if (target_is_side_bot) {
            ++tal.rtp_num;
            tal.hit_originals.insert(target_orig);
          }
        } else {
          ++tal.rr_den;
          if (target_is_side_bot) ++tal.rr_num;
        }
      }
    }
  }

  // Denominator tallies straight from the layout.
  for (int s = 0; s < 2; ++s) {
    size_t hb = s == 0 ? 0 : 1;  // human block
    size_t bb = s == 0 ? 2 : 3;  // bot block
    SideTally& tal = res.sides[s];
    for (uint32_t i = 0; i < lay.block_size[hb]; ++i) {
      const AccountPlan& p = lay.plans[lay.block_start[hb] + i];
      tal.h2br_den += p.n_orig + p.n_rt + p.n_reply;
    }
    for (uint32_t i = 0; i < lay.block_size[bb]; ++i) {
      const AccountPlan& p = lay.plans[lay.block_start[bb] + i];
      tal.bot_records += p.n_orig + p.n_rt + p.n_reply;
    }
  }

  std::sort(res.url_cache.begin(), res.url_cache.end());
  return res;
}

}  // namespace

void ScenarioSpec::validate() const {
  for (size_t b = 0; b < kGroupCount; ++b) {
    const GroupSpec& g = groups[b];
    const char* name = to_string(static_cast<Group>(b));
    if (g.tweets_per_user < 0)
      throw InputError(std::string("scenario: negative activity for ") + name);
    check_rate(g.url_rate, "url_rate");
    check_rate(g.hashtag_rate, "hashtag_rate");
    bool active = g.accounts > 0 && g.tweets_per_user > 0;
    check_mix(g.mix, name, active);
    double row = 0;
    for (double p : g.propensity) {
      if (p < 0) throw InputError(std::string("scenario: negative propensity for ") + name);
      row += p;
    }
    bool interacts = active && (g.mix.retweets > 0 || g.mix.replies > 0);
    if (interacts && row == 0.0) {
      throw InputError(std::string("scenario: propensity row all-zero for ") + name +
                       " despite positive interaction activity");
    }
    if (interacts && std::abs(row - 1.0) > 1e-9) {
      throw InputError(std::string("scenario: propensity row for ") + name +
                       " must sum to 1");
    }
    if (g.hashtag_rate > 0 && g.hashtag_pool.empty()) {
      throw InputError(std::string("scenario: hashtag_rate set for ") + name +
                       " but the pool is empty");
    }
    if (g.url_rate > 0) {
      const auto& domains =
          (b == 0 || b == 2) ? liberal_domains : conservative_domains;
      if (domains.empty())
        throw InputError(std::string("scenario: url_rate set for ") + name +
                         " but the outlet list is empty");
    }
  }
  if (residual.tweets_per_user < 0)
    throw InputError("scenario: negative activity for residual");
  check_mix(residual.mix, "residual", residual.accounts > 0 && residual.tweets_per_user > 0);
  check_rate(shortener_rate, "shortener rate");
  check_rate(scores.missing_rate, "missing_rate");
  for (auto [lo, hi] : {std::pair{scores.bot_lo, scores.bot_hi},
                        std::pair{scores.human_lo, scores.human_hi}}) {
    if (!(lo >= 0 && hi <= 1 && lo <= hi))
      throw InputError("scenario: score ranges must satisfy 0 <= lo <= hi <= 1");
  }
}

namespace {

KindMix parse_mix(const nlohmann::json& j) {
  KindMix mix{};
  mix.originals = j.value("originals", 0.0);
  mix.retweets = j.value("retweets", 0.0);
  mix.replies = j.value("replies", 0.0);
  return mix;
}

}  // namespace

ScenarioSpec ScenarioSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw InputError("not a JSON scenario spec: " + path);

  ScenarioSpec spec;
  spec.rng_seed = j.value("rng_seed", uint64_t{1});

  if (auto groups = j.find("groups"); groups != j.end()) {
    for (const auto& [key, val] : groups->items()) {
      auto group = parse_group(key);
      if (!group || *group == Group::Residual)
        throw InputError("scenario: unknown group key: " + key);
      GroupSpec& g = spec.groups[static_cast<size_t>(*group)];
      g.accounts = val.value("accounts", 0u);
      g.tweets_per_user = val.value("tweets_per_user", 0.0);
      if (auto mix = val.find("mix"); mix != val.end()) g.mix = parse_mix(*mix);
      if (auto prop = val.find("propensity"); prop != val.end()) {
        for (const auto& [tkey, tval] : prop->items()) {
          auto tgt = parse_group(tkey);
          if (!tgt || *tgt == Group::Residual)
            throw InputError("scenario: unknown propensity target: " + tkey);
          g.propensity[static_cast<size_t>(*tgt)] = tval.get<double>();
        }
      }
      g.url_rate = val.value("url_rate", 0.0);
      g.hashtag_rate = val.value("hashtag_rate", 0.0);
      if (auto tags = val.find("hashtags"); tags != val.end()) {
        g.hashtag_pool = tags->get<std::vector<std::string>>();
      }
    }
  }
  if (auto r = j.find("residual"); r != j.end()) {
    spec.residual.accounts = r->value("accounts", 0u);
    spec.residual.tweets_per_user = r->value("tweets_per_user", 0.0);
    if (auto mix = r->find("mix"); mix != r->end()) spec.residual.mix = parse_mix(*mix);
  }
  if (auto o = j.find("outlets"); o != j.end()) {
    if (auto l = o->find("liberal"); l != o->end())
      spec.liberal_domains = l->get<std::vector<std::string>>();
    if (auto c = o->find("conservative"); c != o->end())
      spec.conservative_domains = c->get<std::vector<std::string>>();
  }
  if (auto s = j.find("shortener"); s != j.end()) {
    spec.shortener_host = s->value("host", std::string("sh.rt"));
    spec.shortener_rate = s->value("rate", 0.5);
  }
  if (auto s = j.find("scores"); s != j.end()) {
    if (auto b = s->find("bot"); b != s->end()) {
      spec.scores.bot_lo = b->at(0).get<double>();
      spec.scores.bot_hi = b->at(1).get<double>();
    }
    if (auto h = s->find("human"); h != s->end()) {
      spec.scores.human_lo = h->at(0).get<double>();
      spec.scores.human_hi = h->at(1).get<double>();
    }
    spec.scores.missing_rate = s->value("missing_rate", 0.0);
  }
  spec.validate();
  return spec;
}

ScenarioData generate_scenario_data(const ScenarioSpec& spec) {
  ScenarioData data;
  GenResult res = generate(spec, [&](TweetRecord&& r) { data.records.push_back(std::move(r)); });
  data.groups = std::move(res.groups);
  data.scores = std::move(res.scores);
  data.url_cache = std::move(res.url_cache);
  return data;
}

namespace {

void write_record_jsonl(std::ostream& out, const TweetRecord& r) {
  nlohmann::json j;
  j["id"] = r.tweet_id;
  j["author_id"] = r.author_id;
  j["kind"] = to_string(r.kind);
  if (r.referenced_tweet_id) j["ref_tweet_id"] = *r.referenced_tweet_id;
  if (r.referenced_author_id) j["ref_author_id"] = *r.referenced_author_id;
  j["lang"] = r.language;
  j["text"] = r.text;
  if (!r.hashtags.empty()) j["hashtags"] = r.hashtags;
  if (!r.urls.empty()) j["urls"] = r.urls;
  j["created_at"] = r.created_at;
  out << j.dump() << '\n';
}

nlohmann::json metric_json(uint64_t num, uint64_t den) {
  return nlohmann::json{{"numerator", num}, {"denominator", den}};
}

}  // namespace

ScenarioFiles generate_scenario(const ScenarioSpec& spec, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  ScenarioFiles files;
  files.corpus_path = out_dir + "/corpus.jsonl";
  files.scores_path = out_dir + "/scores.csv";
  files.groups_path = out_dir + "/groups_truth.csv";
  files.url_cache_path = out_dir + "/url_cache.tsv";
  files.liberal_outlets_path = out_dir + "/outlets_liberal.txt";
  files.conservative_outlets_path = out_dir + "/outlets_conservative.txt";
  files.expected_path = out_dir + "/expected.json";

  std::ofstream corpus(files.corpus_path, std::ios::binary);
  if (!corpus) throw InputError("cannot open for writing: " + files.corpus_path);
  GenResult res = generate(spec, [&](TweetRecord&& r) { write_record_jsonl(corpus, r); });
  corpus.close();
  if (!corpus) throw InputError("write failed: " + files.corpus_path);

  {
    std::vector<std::pair<std::string_view, double>> rows(res.scores.begin(),
                                                          res.scores.end());
    std::sort(rows.begin(), rows.end());
    CsvWriter csv(files.scores_path);
    csv.row({"account_id", "score"});
    for (const auto& [id, score] : rows) csv.row() << id << score;
  }
  save_groups(res.groups, files.groups_path);
  {
    UrlResolutionCache cache;
    for (auto& [s, l] : res.url_cache) cache.insert(s, l);
    cache.save_tsv(files.url_cache_path);
  }
  for (int side = 0; side < 2; ++side) {
    const std::string& path =
        side == 0 ? files.liberal_outlets_path : files.conservative_outlets_path;
    const auto& domains = side == 0 ? spec.liberal_domains : spec.conservative_domains;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open for writing: " + path);
    for (const std::string& d : domains) out << d << '\n';
  }

  // Ground truth: the designed row-normalized matrix is the propensity table;
  // the realized effectiveness counts come from the generation tallies.
  nlohmann::json expected;
  for (size_t b = 0; b < kGroupCount; ++b) {
    expected["row_normalized"][to_string(static_cast<Group>(b))] = spec.groups[b].propensity;
  }
  for (int s = 0; s < 2; ++s) {
    const SideTally& tal = res.sides[s];
    const char* side = s == 0 ? "liberal" : "conservative";
    expected["realized"][side]["rtp"] = metric_json(tal.rtp_num, tal.rtp_den);
    expected["realized"][side]["rr"] = metric_json(tal.rr_num, tal.rr_den);
    expected["realized"][side]["h2br"] =
        metric_json(tal.rtp_num + tal.rr_num, tal.h2br_den);
    expected["realized"][side]["tsr"] =
        metric_json(tal.hit_originals.size(), tal.bot_records);
    size_t hb = s == 0 ? 0 : 1, bb = s == 0 ? 2 : 3;
    const GroupSpec& human = spec.groups[hb];
    expected["designed"][side]["rtp"] = human.propensity[bb];
    expected["designed"][side]["rr"] = human.propensity[bb];
    expected["designed"][side]["h2br"] =
        human.propensity[bb] * (human.mix.retweets + human.mix.replies);
  }
  std::ofstream exp(files.expected_path, std::ios::binary);
  if (!exp) throw InputError("cannot open for writing: " + files.expected_path);
  exp << expected.dump(2) << '\n';
  if (!exp) throw InputError("write failed: " + files.expected_path);

  return files;
}

}  // namespace partisan
