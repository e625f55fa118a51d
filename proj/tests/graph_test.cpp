#include <doctest.h>

#include <sstream>

#include "partisan/errors.hpp"
#include "partisan/export.hpp"
#include "partisan/graph.hpp"
#include "partisan/ingest.hpp"
#include "support/oracles.hpp"
#include "support/tmpdir.hpp"

using namespace partisan;
using testsupport::TempDir;

namespace {

TweetRecord retweet(const std::string& id, const std::string& author,
                    const std::string& target_author,
                    const std::string& target_tweet = "x") {
  TweetRecord r;
  r.tweet_id = id;
  r.author_id = author;
  r.kind = TweetKind::Retweet;
  r.referenced_tweet_id = target_tweet;
  r.referenced_author_id = target_author;
  r.language = "en";
  return r;
}

TweetRecord original(const std::string& id, const std::string& author) {
  TweetRecord r;
  r.tweet_id = id;
  r.author_id = author;
  r.language = "en";
  return r;
}

}  // namespace

TEST_SUITE_BEGIN("graph");

TEST_CASE("build_graph aggregates retweet edges") {
  std::vector<TweetRecord> records = {
      original("t1", "alice"),
      retweet("t2", "bob", "alice", "t1"),
      retweet("t3", "bob", "alice", "t1"),
      retweet("t4", "carol", "alice", "t1"),
      retweet("t5", "alice", "alice", "t1"),  // self-retweet: dropped
  };
  TweetRecord reply;  // replies carry no edge
  reply.tweet_id = "t6";
  reply.author_id = "dave";
  reply.kind = TweetKind::Reply;
  reply.referenced_author_id = "alice";
  records.push_back(reply);

  RetweetGraph g = build_graph(Corpus(std::move(records)), Execution::Serial);
  CHECK(g.node_count() == 4);  // dave is a node despite having no edges
  REQUIRE(g.edge_count() == 2);
  CHECK(g.total_weight() == 3);

  auto bob = g.find_node("bob");
  auto alice = g.find_node("alice");
  auto dave = g.find_node("dave");
  REQUIRE(bob.has_value());
  REQUIRE(alice.has_value());
  REQUIRE(dave.has_value());
  CHECK(g.degree(*dave) == 0);

  uint32_t bob_alice_weight = 0;
  for (const GraphEdge& e : g.edges()) {
    if (e.src == *bob && e.tgt == *alice) bob_alice_weight = e.weight;
  }
  CHECK(bob_alice_weight == 2);
  CHECK(g.out_degree(*bob) == 1);
  CHECK(g.in_degree(*alice) == 2);
  CHECK(g.out_degree(*alice) == 0);
}

TEST_CASE("edges are sorted by (src, tgt)") {
  RetweetGraph g = testsupport::random_graph(99, 80);
  auto edges = g.edges();
  for (size_t i = 1; i < edges.size(); ++i) {
    bool ordered = edges[i - 1].src < edges[i].src ||
                   (edges[i - 1].src == edges[i].src && edges[i - 1].tgt < edges[i].tgt);
    CHECK(ordered);
  }
}

TEST_CASE("undirected view merges both directions") {
  // a->b weight 2 and b->a weight 3 collapse into one undirected neighbor of
  // weight 5 on each side.
  RetweetGraph g = RetweetGraph::from_edges({"a", "b", "c"},
                                            {{0, 1, 2}, {1, 0, 3}, {0, 2, 1}});
  auto a = *g.find_node("a");
  auto b = *g.find_node("b");
  CHECK(g.degree(a) == 2);
  CHECK(g.degree(b) == 1);
  auto nbrs = g.neighbors(a);
  auto wts = g.neighbor_weights(a);
  REQUIRE(nbrs.size() == 2);
  for (size_t i = 0; i < nbrs.size(); ++i) {
    if (nbrs[i] == b) CHECK(wts[i] == 5);
  }
}

TEST_CASE("from_edges validates its input") {
  CHECK_THROWS_AS(RetweetGraph::from_edges({"a", "b"}, {{0, 0, 1}}), InputError);
  CHECK_THROWS_AS(RetweetGraph::from_edges({"a", "b"}, {{0, 5, 1}}), InputError);
  CHECK_THROWS_AS(RetweetGraph::from_edges({"a", "b"}, {{0, 1, 0}}), InputError);
  CHECK_THROWS_AS(RetweetGraph::from_edges({"a", "b"}, {{0, 1, 1}, {0, 1, 2}}),
                  InputError);
  CHECK_THROWS_AS(RetweetGraph::from_edges({"a", "a"}, {}), InputError);
}

TEST_CASE("serial and parallel graph builds agree") {
  for (uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    auto [corpus, groups] = testsupport::random_corpus(seed, 2000);
    RetweetGraph gs = build_graph(corpus, Execution::Serial);
    RetweetGraph gp = build_graph(corpus, Execution::Parallel);
    REQUIRE(gs.node_count() == gp.node_count());
    CHECK(gs.node_ids() == gp.node_ids());
    REQUIRE(gs.edge_count() == gp.edge_count());
    CHECK(std::equal(gs.edges().begin(), gs.edges().end(), gp.edges().begin()));
    CHECK(gs.total_weight() == gp.total_weight());
  }
}

TEST_CASE("total weight equals counted retweet occurrences minus self-retweets") {
  auto [corpus, groups] = testsupport::random_corpus(17, 3000);
  uint64_t occurrences = 0;
  for (const TweetRecord& r : corpus.records()) {
    if (r.kind == TweetKind::Retweet && r.referenced_author_id &&
        *r.referenced_author_id != r.author_id) {
      ++occurrences;
    }
  }
  RetweetGraph g = build_graph(corpus, Execution::Serial);
  CHECK(g.total_weight() == occurrences);
}

TEST_CASE("empty corpus yields an empty graph") {
  RetweetGraph g = build_graph(Corpus{}, Execution::Parallel);
  CHECK(g.node_count() == 0);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("edge list round-trip") {
  TempDir tmp("edgelist");
  RetweetGraph g = testsupport::random_graph(5, 60);
  std::string path = tmp.file("graph.tsv");
  export_edge_list(g, path);
  RetweetGraph loaded = import_edge_list(path);
  // Node identity survives; indices may be renumbered.
  REQUIRE(loaded.node_count() == g.node_count());
  REQUIRE(loaded.edge_count() == g.edge_count());
  CHECK(loaded.total_weight() == g.total_weight());
  for (const GraphEdge& e : g.edges()) {
    auto src = loaded.find_node(g.node_id(e.src));
    auto tgt = loaded.find_node(g.node_id(e.tgt));
    REQUIRE(src.has_value());
    REQUIRE(tgt.has_value());
    bool found = false;
    for (const GraphEdge& le : loaded.edges()) {
      if (le.src == *src && le.tgt == *tgt) {
        CHECK(le.weight == e.weight);
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("import_edge_list rejects bad rows") {
  TempDir tmp("edgelist_bad");
  CHECK_THROWS_AS(import_edge_list(tmp.write("a.tsv", "a\tb\n")), InputError);
  CHECK_THROWS_AS(import_edge_list(tmp.write("b.tsv", "a\tb\t0\n")), InputError);
  CHECK_THROWS_AS(import_edge_list(tmp.write("c.tsv", "a\ta\t1\n")), InputError);
  CHECK_THROWS_AS(import_edge_list("/nonexistent.tsv"), InputError);
}

TEST_SUITE_END();
