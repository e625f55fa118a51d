#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "partisan/corpus.hpp"
#include "partisan/execution.hpp"

namespace partisan {

struct GraphEdge {
  uint32_t src = 0;  // the retweeter
  uint32_t tgt = 0;  // the original author
  uint32_t weight = 0;

  bool operator==(const GraphEdge&) const = default;
};

// Directed weighted retweet network. Nodes are every account in the corpus
// (authors and referenced authors, in first-appearance order); one edge per
// (retweeter, original author) pair with weight = retweet count. Self-retweets
// are dropped. Immutable once built.
class RetweetGraph {
 public:
  RetweetGraph() = default;
  // Node ids plus unique (src,tgt,weight) triples; self-loops rejected.
  static RetweetGraph from_edges(std::vector<std::string> node_ids,
                                 std::vector<GraphEdge> edges);

  uint32_t node_count() const { return static_cast<uint32_t>(node_ids_.size()); }
  uint64_t edge_count() const { return edges_.size(); }
  uint64_t total_weight() const { return total_weight_; }

  const std::string& node_id(uint32_t v) const { return node_ids_[v]; }
  const std::vector<std::string>& node_ids() const { return node_ids_; }
  std::optional<uint32_t> find_node(std::string_view id) const;

  // Sorted by (src, tgt).
  std::span<const GraphEdge> edges() const { return edges_; }

  uint32_t out_degree(uint32_t v) const {  // distinct targets retweeted by v
    return out_offsets_[v + 1] - out_offsets_[v];
  }
  uint32_t in_degree(uint32_t v) const {  // distinct retweeters of v
    return in_offsets_[v + 1] - in_offsets_[v];
  }

  // Undirected view: distinct neighbors regardless of direction, with edge
  // weights summed over both directions. Used by k-core and propagation.
  std::span<const uint32_t> neighbors(uint32_t v) const;
  std::span<const uint32_t> neighbor_weights(uint32_t v) const;
  uint32_t degree(uint32_t v) const { return und_offsets_[v + 1] - und_offsets_[v]; }

 private:
  friend RetweetGraph build_graph(const Corpus&, Execution);
  void finalize(std::vector<GraphEdge> edges);

  std::vector<std::string> node_ids_;
  StringMap<uint32_t> node_index_;
  std::vector<GraphEdge> edges_;
  uint64_t total_weight_ = 0;
  std::vector<uint32_t> out_offsets_, in_offsets_;
  std::vector<uint32_t> und_offsets_;
  std::vector<uint32_t> und_neighbors_;
  std::vector<uint32_t> und_weights_;
};

RetweetGraph build_graph(const Corpus& corpus, Execution exec = Execution::Parallel);

}  // namespace partisan
