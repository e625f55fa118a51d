#include <doctest.h>

#include "partisan/analytics.hpp"
#include "partisan/errors.hpp"
#include "partisan/rng.hpp"
#include "support/oracles.hpp"

using namespace partisan;

namespace {

GroupMap random_groups(const RetweetGraph& g, uint64_t seed) {
  DetRng rng(seed);
  GroupMap groups;
  for (const std::string& id : g.node_ids()) {
    size_t roll = rng.index(6);
    if (roll < 4) {
      groups[id] = static_cast<Group>(roll);
    } else if (roll == 4) {
      groups[id] = Group::Residual;
    }  // roll 5: absent, same as residual
  }
  return groups;
}

}  // namespace

TEST_SUITE_BEGIN("analytics");

TEST_CASE("core series on a bot clique with periphery") {
  // 5 conservative bots in a clique; 3 human pendants.
  std::vector<std::string> ids;
  std::vector<GraphEdge> edges;
  for (uint32_t i = 0; i < 5; ++i) ids.push_back("bot" + std::to_string(i));
  for (uint32_t i = 0; i < 5; ++i)
    for (uint32_t j = i + 1; j < 5; ++j) edges.push_back({i, j, 1});
  for (uint32_t i = 0; i < 3; ++i) {
    ids.push_back("human" + std::to_string(i));
    edges.push_back({5 + i, i, 1});  // pendant edge to one bot
  }
  RetweetGraph g = RetweetGraph::from_edges(std::move(ids), std::move(edges));
  GroupMap groups;
  for (uint32_t i = 0; i < 5; ++i) groups["bot" + std::to_string(i)] = Group::ConservativeBot;
  for (uint32_t i = 0; i < 3; ++i) groups["human" + std::to_string(i)] = Group::ConservativeHuman;

  CoreAssignment cores = core_numbers(g, Execution::Serial);
  auto rows = core_series(g, cores, groups, 6);
  REQUIRE(rows.size() == 7);  // k = 0..6

  CHECK(rows[0].accounts == 8);
  CHECK(rows[1].accounts == 8);  // pendants have core 1
  CHECK(rows[4].accounts == 5);  // only the clique survives at k=4
  CHECK(rows[4].group_fraction[static_cast<size_t>(Group::ConservativeBot)] ==
        doctest::Approx(1.0));
  CHECK(rows[4].group_counts[static_cast<size_t>(Group::ConservativeHuman)] == 0);
  CHECK(rows[5].accounts == 0);  // beyond the max core
  CHECK(rows[6].accounts == 0);
  CHECK(rows[6].k == 6);

  double frac_sum = 0;
  for (double f : rows[1].group_fraction) frac_sum += f;
  CHECK(frac_sum == doctest::Approx(1.0));  // no residual accounts here
}

TEST_CASE("core series counts residual members") {
  RetweetGraph g = RetweetGraph::from_edges({"a", "b"}, {{0, 1, 1}});
  GroupMap groups;
  groups["a"] = Group::LiberalHuman;  // b has no entry: residual
  CoreAssignment cores = core_numbers(g, Execution::Serial);
  auto rows = core_series(g, cores, groups, 1);
  CHECK(rows[1].accounts == 2);
  CHECK(rows[1].residual == 1);
  CHECK(rows[1].group_fraction[static_cast<size_t>(Group::LiberalHuman)] ==
        doctest::Approx(0.5));
}

TEST_CASE("centrality on a directed star is analytic") {
  // hub retweets three leaves: out-centrality 1 for the hub, in 1/3 per leaf.
  RetweetGraph g = RetweetGraph::from_edges(
      {"hub", "l1", "l2", "l3"}, {{0, 1, 4}, {0, 2, 1}, {0, 3, 2}});
  GroupMap groups;
  groups["hub"] = Group::LiberalBot;
  groups["l1"] = Group::LiberalHuman;
  groups["l2"] = Group::LiberalHuman;
  groups["l3"] = Group::LiberalHuman;
  for (Execution exec : {Execution::Serial, Execution::Parallel}) {
    CentralityResult r = degree_centrality(g, groups, exec);
    CHECK(r.out_centrality[*g.find_node("hub")] == doctest::Approx(1.0));
    CHECK(r.in_centrality[*g.find_node("hub")] == doctest::Approx(0.0));
    CHECK(r.out_centrality[*g.find_node("l1")] == doctest::Approx(0.0));
    CHECK(r.in_centrality[*g.find_node("l1")] == doctest::Approx(1.0 / 3.0));
    CHECK(r.mean_out[static_cast<size_t>(Group::LiberalBot)] == doctest::Approx(1.0));
    CHECK(r.mean_in[static_cast<size_t>(Group::LiberalHuman)] ==
          doctest::Approx(1.0 / 3.0));
  }
}

TEST_CASE("centrality matches the adjacency oracle on a 10-node fixture") {
  RetweetGraph g = testsupport::random_graph(1234, 10);
  GroupMap groups = random_groups(g, 77);
  auto oracle = testsupport::oracle_centrality(g, groups);
  CentralityResult r = degree_centrality(g, groups, Execution::Serial);
  REQUIRE(r.out_centrality.size() == oracle.out.size());
  for (uint32_t v = 0; v < g.node_count(); ++v) {
    CHECK(r.out_centrality[v] == oracle.out[v]);
    CHECK(r.in_centrality[v] == oracle.in[v]);
  }
  for (size_t i = 0; i < kGroupCount; ++i) {
    CHECK(r.mean_out[i] == doctest::Approx(oracle.mean_out[i]).epsilon(1e-12));
    CHECK(r.mean_in[i] == doctest::Approx(oracle.mean_in[i]).epsilon(1e-12));
  }
}

TEST_CASE("centrality serial and parallel agree bit-for-bit") {
  for (uint64_t seed : {10ull, 20ull, 30ull}) {
    RetweetGraph g = testsupport::random_graph(seed, 150);
    GroupMap groups = random_groups(g, seed + 1);
    CentralityResult s = degree_centrality(g, groups, Execution::Serial);
    CentralityResult p = degree_centrality(g, groups, Execution::Parallel);
    CHECK(s.out_centrality == p.out_centrality);
    CHECK(s.in_centrality == p.in_centrality);
    CHECK(s.mean_out == p.mean_out);  // exact: same accumulation order
    CHECK(s.mean_in == p.mean_in);
  }
}

TEST_CASE("centrality needs at least two nodes") {
  RetweetGraph tiny = RetweetGraph::from_edges({"only"}, {});
  CHECK_THROWS_AS(degree_centrality(tiny, {}, Execution::Serial), InputError);
  RetweetGraph empty;
  CHECK_THROWS_AS(degree_centrality(empty, {}, Execution::Serial), InputError);
}

TEST_CASE("interaction matrix counts weighted edges between groups") {
  RetweetGraph g = RetweetGraph::from_edges(
      {"lb", "lh", "ch", "res"},
      {{0, 1, 7}, {1, 0, 2}, {2, 1, 1}, {3, 0, 9}, {0, 3, 4}});
  GroupMap groups;
  groups["lb"] = Group::LiberalBot;
  groups["lh"] = Group::LiberalHuman;
  groups["ch"] = Group::ConservativeHuman;
  // "res" stays residual.
  InteractionMatrix m = interaction_matrix(g, groups, Execution::Serial);
  auto lb = static_cast<size_t>(Group::LiberalBot);
  auto lh = static_cast<size_t>(Group::LiberalHuman);
  auto ch = static_cast<size_t>(Group::ConservativeHuman);
  CHECK(m.counts[lb][lh] == 7);
  CHECK(m.counts[lh][lb] == 2);
  CHECK(m.counts[ch][lh] == 1);
  CHECK(m.total == 10);  // the 9 and 4 touch a residual endpoint
  CHECK(m.total + 13 == g.total_weight());

  auto overall = m.overall();
  CHECK(overall[lb][lh] == doctest::Approx(0.7));
  auto row = m.row_normalized();
  CHECK(row[lb][lh] == doctest::Approx(1.0));
  CHECK(row[lh][lb] == doctest::Approx(1.0));
  // Rows with no interactions stay zero.
  auto cb = static_cast<size_t>(Group::ConservativeBot);
  for (size_t t = 0; t < kGroupCount; ++t) CHECK(row[cb][t] == 0.0);
}

TEST_CASE("interaction matrix matches the per-edge oracle") {
  for (uint64_t seed : {3ull, 6ull, 9ull}) {
    RetweetGraph g = testsupport::random_graph(seed, 120);
    GroupMap groups = random_groups(g, seed * 31);
    auto expected = testsupport::oracle_interactions(g, groups);
    InteractionMatrix s = interaction_matrix(g, groups, Execution::Serial);
    InteractionMatrix p = interaction_matrix(g, groups, Execution::Parallel);
    CHECK(s.counts == expected);
    CHECK(p.counts == expected);
    CHECK(s.total == p.total);
  }
}

TEST_CASE("tweets per user averages") {
  std::vector<TweetRecord> records;
  auto post = [&](const std::string& id, const std::string& author) {
    TweetRecord r;
    r.tweet_id = id;
    r.author_id = author;
    r.language = "en";
    records.push_back(r);
  };
  post("t1", "h1");
  post("t2", "h1");
  post("t3", "h2");
  post("t4", "b1");
  post("t5", "res1");
  GroupMap groups;
  groups["h1"] = Group::LiberalHuman;
  groups["h2"] = Group::LiberalHuman;
  groups["b1"] = Group::LiberalBot;
  groups["idle"] = Group::ConservativeHuman;  // in a group, posted nothing

  TweetsPerUser t = tweets_per_user(Corpus(std::move(records)), groups);
  auto lh = static_cast<size_t>(Group::LiberalHuman);
  auto lb = static_cast<size_t>(Group::LiberalBot);
  auto chm = static_cast<size_t>(Group::ConservativeHuman);
  auto cb = static_cast<size_t>(Group::ConservativeBot);
  CHECK(t.tweets[lh] == 3);
  CHECK(t.users[lh] == 2);
  CHECK(t.average[lh] == doctest::Approx(1.5));
  CHECK(t.tweets[lb] == 1);
  CHECK(t.users[chm] == 1);
  CHECK(t.average[chm] == doctest::Approx(0.0));
  CHECK(t.defined[chm]);
  CHECK_FALSE(t.defined[cb]);  // empty group: average undefined
}

TEST_SUITE_END();
