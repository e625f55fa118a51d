// Compares the serial reference kernels against the parallel ones on a
// generated scenario and verifies both modes agree while at it.
//
//   bench_kernels [--accounts N] [--tweets T] [--dir PATH]
//
// Prints one row per kernel: serial seconds, parallel seconds, speedup.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "partisan/analytics.hpp"
#include "partisan/graph.hpp"
#include "partisan/ingest.hpp"
#include "partisan/kcore.hpp"
#include "partisan/scenario.hpp"

using namespace partisan;

namespace {

ScenarioSpec bench_spec(uint32_t accounts_per_group, double tweets_per_user) {
  ScenarioSpec spec;
  spec.rng_seed = 7;
  const std::array<std::array<double, kGroupCount>, kGroupCount> propensity = {{
      {0.60, 0.05, 0.30, 0.05},  // liberal humans
      {0.05, 0.60, 0.05, 0.30},  // conservative humans
      {0.71, 0.02, 0.22, 0.05},  // liberal bots
      {0.05, 0.52, 0.00, 0.43},  // conservative bots
  }};
  for (size_t g = 0; g < kGroupCount; ++g) {
    GroupSpec& gs = spec.groups[g];
    gs.accounts = accounts_per_group;
    gs.tweets_per_user = tweets_per_user;
    gs.mix = {0.5, 0.4, 0.1};
    gs.propensity = propensity[g];
    gs.url_rate = 0.3;
    gs.hashtag_rate = 0.4;
    gs.hashtag_pool = {"economy", "border", "healthcare", "jobs"};
  }
  spec.residual.accounts = accounts_per_group / 2;
  spec.residual.tweets_per_user = tweets_per_user / 2;
  return spec;
}

template <typename F>
double time_s(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* kernel, double serial_s, double parallel_s, bool equal) {
  std::printf("%-14s %9.3fs %9.3fs %6.2fx %s\n", kernel, serial_s, parallel_s,
              parallel_s > 0 ? serial_s / parallel_s : 0.0,
              equal ? "outputs-match" : "OUTPUTS-DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs parallel kernel benchmark"};
  uint32_t accounts = 20000;
  double tweets = 12.0;
  std::string dir = "bench_data";
  app.add_option("--accounts", accounts, "Accounts per group");
  app.add_option("--tweets", tweets, "Mean records per account");
  app.add_option("--dir", dir, "Scratch directory for the generated corpus");
  CLI11_PARSE(app, argc, argv);

  std::printf("generating scenario (%u accounts/group, %.1f records/account)...\n",
              accounts, tweets);
  ScenarioFiles files = generate_scenario(bench_spec(accounts, tweets), dir);

  Corpus serial_corpus, parallel_corpus;
  double s = time_s([&] { serial_corpus = ingest_file(files.corpus_path, {}, nullptr,
                                                      Execution::Serial); });
  double p = time_s([&] { parallel_corpus = ingest_file(files.corpus_path, {}, nullptr,
                                                        Execution::Parallel); });
  report("ingest", s, p, serial_corpus.records() == parallel_corpus.records());
  const Corpus& corpus = parallel_corpus;
  std::printf("  %zu records\n", corpus.size());

  RetweetGraph gs, gp;
  s = time_s([&] { gs = build_graph(corpus, Execution::Serial); });
  p = time_s([&] { gp = build_graph(corpus, Execution::Parallel); });
  bool same_graph = gs.node_count() == gp.node_count() &&
                    std::equal(gs.edges().begin(), gs.edges().end(),
                               gp.edges().begin(), gp.edges().end());
  report("graph-build", s, p, same_graph);
  std::printf("  %u nodes, %zu edges\n", gp.node_count(), gp.edges().size());

  CoreAssignment cs, cp;
  s = time_s([&] { cs = core_numbers(gp, Execution::Serial); });
  p = time_s([&] { cp = core_numbers(gp, Execution::Parallel); });
  report("kcore", s, p, cs == cp);

  GroupMap groups = load_groups(files.groups_path);
  CentralityResult ds, dp;
  s = time_s([&] { ds = degree_centrality(gp, groups, Execution::Serial); });
  p = time_s([&] { dp = degree_centrality(gp, groups, Execution::Parallel); });
  report("centrality", s, p,
         ds.out_centrality == dp.out_centrality && ds.in_centrality == dp.in_centrality &&
             ds.mean_out == dp.mean_out && ds.mean_in == dp.mean_in);

  InteractionMatrix ms, mp;
  s = time_s([&] { ms = interaction_matrix(gp, groups, Execution::Serial); });
  p = time_s([&] { mp = interaction_matrix(gp, groups, Execution::Parallel); });
  report("interactions", s, p, ms.counts == mp.counts && ms.total == mp.total);

  return 0;
}
