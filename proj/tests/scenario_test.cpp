#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "partisan/analytics.hpp"
#include "partisan/effectiveness.hpp"
#include "partisan/errors.hpp"
#include "partisan/graph.hpp"
#include "partisan/ingest.hpp"
#include "partisan/scenario.hpp"
#include "support/oracles.hpp"
#include "support/tmpdir.hpp"

using namespace partisan;
using testsupport::TempDir;

namespace {

ScenarioSpec basic_spec() {
  ScenarioSpec spec;
  spec.rng_seed = 5;
  const std::array<std::array<double, kGroupCount>, kGroupCount> propensity = {{
      {0.60, 0.05, 0.30, 0.05},
      {0.05, 0.60, 0.05, 0.30},
      {0.71, 0.02, 0.22, 0.05},
      {0.05, 0.52, 0.00, 0.43},
  }};
  for (size_t g = 0; g < kGroupCount; ++g) {
    spec.groups[g].accounts = 30;
    spec.groups[g].tweets_per_user = 10;
    spec.groups[g].mix = {0.5, 0.4, 0.1};
    spec.groups[g].propensity = propensity[g];
    spec.groups[g].url_rate = 0.5;
    spec.groups[g].hashtag_rate = 0.3;
    spec.groups[g].hashtag_pool = {"alpha", "beta"};
  }
  spec.residual.accounts = 10;
  spec.residual.tweets_per_user = 4;
  return spec;
}

}  // namespace

TEST_SUITE_BEGIN("scenario");

TEST_CASE("generated data is deterministic and sized by the spec") {
  ScenarioSpec spec = basic_spec();
  ScenarioData a = generate_scenario_data(spec);
  ScenarioData b = generate_scenario_data(spec);
  CHECK(a.records == b.records);
  CHECK(a.scores.size() == b.scores.size());

  // 4 groups x 30 accounts + 10 residual.
  CHECK(a.groups.size() == 130);
  // Residual accounts never get a score row.
  for (const auto& [account, group] : a.groups) {
    if (group == Group::Residual) CHECK_FALSE(a.scores.contains(account));
  }
  // Totals: 4 x 30 x 10 + 10 x 4.
  CHECK(a.records.size() == 1240);
}

TEST_CASE("scores respect the class bands") {
  ScenarioData d = generate_scenario_data(basic_spec());
  for (const auto& [account, score] : d.scores) {
    Group g = d.groups.at(account);
    if (is_bot(g)) {
      CHECK(score >= 0.65);
      CHECK(score <= 0.95);
    } else {
      CHECK(score >= 0.02);
      CHECK(score <= 0.22);
    }
  }
}

TEST_CASE("kind mix is honored per account") {
  ScenarioData d = generate_scenario_data(basic_spec());
  StringMap<std::array<uint64_t, 3>> per_account;
  for (const TweetRecord& r : d.records) {
    ++per_account[r.author_id][static_cast<size_t>(r.kind)];
  }
  for (const auto& [account, counts] : per_account) {
    if (d.groups.at(account) != Group::Residual) {
      // 10 records at 0.5/0.4/0.1.
      CHECK(counts[0] == 5);
      CHECK(counts[1] == 4);
      CHECK(counts[2] == 1);
    }
  }
}

TEST_CASE("interactions never target the author's own tweets") {
  ScenarioData d = generate_scenario_data(basic_spec());
  StringMap<std::string> author_of;
  for (const TweetRecord& r : d.records) author_of[r.tweet_id] = r.author_id;
  for (const TweetRecord& r : d.records) {
    if (r.kind == TweetKind::Original) continue;
    REQUIRE(r.referenced_author_id.has_value());
    CHECK(*r.referenced_author_id != r.author_id);
    REQUIRE(r.referenced_tweet_id.has_value());
    auto it = author_of.find(*r.referenced_tweet_id);
    REQUIRE(it != author_of.end());  // targets exist in the corpus
    CHECK(it->second == *r.referenced_author_id);
  }
}

TEST_CASE("realized effectiveness tallies match a measurement on the output") {
  ScenarioSpec spec = basic_spec();
  TempDir tmp("scenario");
  ScenarioFiles files = generate_scenario(spec, tmp.path().string());
  Corpus corpus = ingest_file(files.corpus_path, {});
  GroupMap truth = load_groups(files.groups_path);

  nlohmann::json expected;
  {
    std::ifstream in(files.expected_path);
    in >> expected;
  }
  for (const char* side_name : {"liberal", "conservative"}) {
    std::optional<Side> side = parse_side(side_name);
    EffectivenessReport got = effectiveness(corpus, truth, side);
    EffectivenessReport oracle = testsupport::oracle_effectiveness(corpus, truth, side);
    const auto& want = expected["realized"][side_name];
    CAPTURE(side_name);
    CHECK(got.rtp.numerator == want["rtp"]["numerator"].get<uint64_t>());
    CHECK(got.rtp.denominator == want["rtp"]["denominator"].get<uint64_t>());
    CHECK(got.rr.numerator == want["rr"]["numerator"].get<uint64_t>());
    CHECK(got.rr.denominator == want["rr"]["denominator"].get<uint64_t>());
    CHECK(got.h2br.numerator == want["h2br"]["numerator"].get<uint64_t>());
    CHECK(got.h2br.denominator == want["h2br"]["denominator"].get<uint64_t>());
    CHECK(got.tsr.numerator == want["tsr"]["numerator"].get<uint64_t>());
    CHECK(got.tsr.denominator == want["tsr"]["denominator"].get<uint64_t>());
    // And the independent oracle agrees with both.
    CHECK(oracle.rtp.numerator == got.rtp.numerator);
    CHECK(oracle.tsr.numerator == got.tsr.numerator);
  }
}

TEST_CASE("streamed files and in-memory generation agree") {
  ScenarioSpec spec = basic_spec();
  TempDir tmp("scenario_stream");
  ScenarioFiles files = generate_scenario(spec, tmp.path().string());
  ScenarioData data = generate_scenario_data(spec);
  Corpus from_file = ingest_file(files.corpus_path, {});
  CHECK(from_file.records() == data.records);
  CHECK(load_groups(files.groups_path).size() == data.groups.size());
}

TEST_CASE("row-normalized interaction matrix tracks the propensities") {
  // The acceptance-scale version of this runs in the acceptance suite; this
  // one uses ~4,800 interactions per row to keep ctest snappy.
  ScenarioSpec spec;
  spec.rng_seed = 2018;
  const std::array<std::array<double, kGroupCount>, kGroupCount> propensity = {{
      {0.74, 0.16, 0.07, 0.03},
      {0.07, 0.03, 0.62, 0.28},
      {0.71, 0.02, 0.22, 0.05},
      {0.05, 0.52, 0.00, 0.43},
  }};
  for (size_t g = 0; g < kGroupCount; ++g) {
    spec.groups[g].accounts = 40;
    spec.groups[g].tweets_per_user = 150;
    spec.groups[g].mix = {0.2, 0.8, 0.0};
    spec.groups[g].propensity = propensity[g];
  }
  ScenarioData d = generate_scenario_data(spec);
  RetweetGraph graph = build_graph(Corpus(d.records), Execution::Serial);
  InteractionMatrix m = interaction_matrix(graph, d.groups, Execution::Serial);
  auto row = m.row_normalized();
  for (size_t s = 0; s < kGroupCount; ++s) {
    for (size_t t = 0; t < kGroupCount; ++t) {
      CAPTURE(s);
      CAPTURE(t);
      CHECK(std::abs(row[s][t] - propensity[s][t]) <= 0.02);
    }
  }
}

TEST_CASE("spec validation") {
  ScenarioSpec spec = basic_spec();
  spec.groups[0].mix = {0.5, 0.4, 0.2};  // sums to 1.1
  CHECK_THROWS_AS(spec.validate(), InputError);

  spec = basic_spec();
  spec.groups[2].propensity = {0, 0, 0, 0};  // bots retweet but target nobody
  CHECK_THROWS_AS(spec.validate(), InputError);

  spec = basic_spec();
  spec.groups[1].url_rate = 1.5;
  CHECK_THROWS_AS(spec.validate(), InputError);

  spec = basic_spec();
  spec.groups[3].hashtag_rate = 0.5;
  spec.groups[3].hashtag_pool.clear();
  CHECK_THROWS_AS(spec.validate(), InputError);

  spec = basic_spec();
  spec.scores.bot_lo = 0.9;
  spec.scores.bot_hi = 0.2;  // inverted band
  CHECK_THROWS_AS(spec.validate(), InputError);

  // Retweets with no possible targets: the residual-only corpus of originals
  // is fine, but a group that retweets into a group with no originals is not.
  spec = basic_spec();
  for (size_t g = 0; g < kGroupCount; ++g) {
    spec.groups[g].accounts = 0;
    spec.groups[g].tweets_per_user = 0;
  }
  spec.groups[0].accounts = 10;
  spec.groups[0].tweets_per_user = 5;
  spec.groups[0].mix = {0.0, 1.0, 0.0};
  spec.groups[0].propensity = {0.0, 1.0, 0.0, 0.0};  // targets an empty group
  spec.residual.accounts = 0;
  CHECK_THROWS_AS(generate_scenario_data(spec), InputError);
}

TEST_CASE("spec with only originals produces no interactions") {
  ScenarioSpec spec;
  spec.rng_seed = 3;
  spec.groups[0].accounts = 5;
  spec.groups[0].tweets_per_user = 4;
  spec.groups[0].mix = {1.0, 0.0, 0.0};
  ScenarioData d = generate_scenario_data(spec);
  CHECK(d.records.size() == 20);
  for (const TweetRecord& r : d.records) CHECK(r.kind == TweetKind::Original);
  EffectivenessReport rep =
      effectiveness(Corpus(d.records), d.groups, Side::Liberal);
  CHECK(rep.rtp.denominator == 0);
  CHECK_FALSE(rep.tsr.defined());
}

TEST_CASE("spec JSON loader") {
  TempDir tmp("spec_json");
  std::string path = tmp.write("spec.json", R"({
    "rng_seed": 9,
    "groups": {
      "liberal_human": {"accounts": 3, "tweets_per_user": 2,
                         "mix": {"originals": 1.0},
                         "url_rate": 0.5},
      "conservative_bot": {"accounts": 2, "tweets_per_user": 3,
                            "mix": {"originals": 0.5, "retweets": 0.5},
                            "propensity": {"liberal_human": 1.0}}
    },
    "residual": {"accounts": 1, "tweets_per_user": 2},
    "shortener": {"host": "sho.rt", "rate": 1.0},
    "scores": {"bot": [0.7, 0.8], "human": [0.1, 0.2], "missing_rate": 0.0}
  })");
  ScenarioSpec spec = ScenarioSpec::load(path);
  CHECK(spec.rng_seed == 9);
  CHECK(spec.groups[0].accounts == 3);
  CHECK(spec.groups[3].accounts == 2);
  CHECK(spec.groups[3].mix.retweets == doctest::Approx(0.5));
  CHECK(spec.groups[3].propensity[0] == doctest::Approx(1.0));
  CHECK(spec.shortener_host == "sho.rt");
  CHECK(spec.scores.bot_lo == doctest::Approx(0.7));
  ScenarioData d = generate_scenario_data(spec);
  CHECK(d.records.size() == 3 * 2 + 2 * 3 + 2);

  CHECK_THROWS_AS(ScenarioSpec::load(tmp.write("bad.json", "{")), InputError);
  CHECK_THROWS_AS(
      ScenarioSpec::load(tmp.write("badgroup.json",
                                   R"({"groups": {"martian": {"accounts": 1}}})")),
      InputError);
}

TEST_SUITE_END();
