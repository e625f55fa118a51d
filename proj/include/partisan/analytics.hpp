#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "partisan/corpus.hpp"
#include "partisan/execution.hpp"
#include "partisan/graph.hpp"
#include "partisan/groups.hpp"
#include "partisan/kcore.hpp"

namespace partisan {

struct CoreSeriesRow {
  uint32_t k = 0;          // core threshold
  uint64_t accounts = 0;   // nodes with core number >= k, residual included
  std::array<uint64_t, kGroupCount> group_counts{};
  std::array<double, kGroupCount> group_fraction{};  // group_counts / accounts
  uint64_t residual = 0;   // members outside the four groups
};

// One row per k in 0..k_max; fractions are 0 for empty cores. The four group
// fractions sum to <= 1 (the residual share makes up the rest).
std::vector<CoreSeriesRow> core_series(const RetweetGraph& graph,
                                       const CoreAssignment& cores,
                                       const GroupMap& groups, uint32_t k_max);

void write_core_series(const std::vector<CoreSeriesRow>& rows, const std::string& path);

struct CentralityResult {
  // Normalized degree centrality: distinct in/out neighbors / (n - 1).
  std::vector<double> out_centrality;
  std::vector<double> in_centrality;
  std::array<double, kGroupCount> mean_out{};  // averages over group members
  std::array<double, kGroupCount> mean_in{};
};

// Throws InputError when the graph has fewer than 2 nodes (normalization by
// n - 1 is undefined).
CentralityResult degree_centrality(const RetweetGraph& graph, const GroupMap& groups,
                                   Execution exec = Execution::Parallel);

void write_centrality(const CentralityResult& result, const RetweetGraph& graph,
                      const GroupMap& groups, const std::string& path);

struct InteractionMatrix {
  // counts[src][tgt]: total retweet occurrences (edge weights summed) from
  // src-group accounts of tgt-group accounts. Residual endpoints excluded.
  std::array<std::array<uint64_t, kGroupCount>, kGroupCount> counts{};
  uint64_t total = 0;

  // Fraction of all counted interactions (sums to 1 when total > 0).
  std::array<std::array<double, kGroupCount>, kGroupCount> overall() const;
  // Each row normalized by its own sum (rows of zeros stay zero).
  std::array<std::array<double, kGroupCount>, kGroupCount> row_normalized() const;
};

InteractionMatrix interaction_matrix(const RetweetGraph& graph, const GroupMap& groups,
                                     Execution exec = Execution::Parallel);

void write_interaction_matrix(const InteractionMatrix& m, const std::string& counts_path,
                              const std::string& overall_path, const std::string& row_path);

struct TweetsPerUser {
  std::array<uint64_t, kGroupCount> tweets{};   // records authored, by group
  std::array<uint64_t, kGroupCount> users{};    // accounts in the group
  std::array<double, kGroupCount> average{};    // tweets / users
  std::array<bool, kGroupCount> defined{};      // false for empty groups
};

TweetsPerUser tweets_per_user(const Corpus& corpus, const GroupMap& groups);

void write_tweets_per_user(const TweetsPerUser& t, const std::string& path);

}  // namespace partisan
