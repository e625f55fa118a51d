#include "partisan/graph.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

#include "partisan/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace partisan {

std::optional<uint32_t> RetweetGraph::find_node(std::string_view id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::span<const uint32_t> RetweetGraph::neighbors(uint32_t v) const {
  return {und_neighbors_.data() + und_offsets_[v],
          und_neighbors_.data() + und_offsets_[v + 1]};
}

std::span<const uint32_t> RetweetGraph::neighbor_weights(uint32_t v) const {
  return {und_weights_.data() + und_offsets_[v],
          und_weights_.data() + und_offsets_[v + 1]};
}

RetweetGraph RetweetGraph::from_edges(std::vector<std::string> node_ids,
                                      std::vector<GraphEdge> edges) {
  RetweetGraph g;
  g.node_ids_ = std::move(node_ids);
  g.node_index_.reserve(g.node_ids_.size());
  for (uint32_t i = 0; i < g.node_ids_.size(); ++i) {
    if (!g.node_index_.emplace(g.node_ids_[i], i).second)
      throw InputError("duplicate node id: " + g.node_ids_[i]);
  }
  const uint32_t n = g.node_count();
  for (const GraphEdge& e : edges) {
    if (e.src >= n || e.tgt >= n) throw InputError("edge endpoint out of range");
    if (e.src == e.tgt) throw InputError("self-loop edge");
    if (e.weight == 0) throw InputError("zero-weight edge");
  }
  g.finalize(std::move(edges));
  return g;
}

void RetweetGraph::finalize(std::vector<GraphEdge> edges) {
  std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
    return std::tie(a.src, a.tgt) < std::tie(b.src, b.tgt);
  });
  for (size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].src == edges[i - 1].src && edges[i].tgt == edges[i - 1].tgt)
      throw InputError("duplicate edge");
  }
  edges_ = std::move(edges);

  const uint32_t n = node_count();
  total_weight_ = 0;
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const GraphEdge& e : edges_) {
    total_weight_ += e.weight;
    ++out_offsets_[e.src + 1];
    ++in_offsets_[e.tgt + 1];
  }
  for (uint32_t v = 0; v < n; ++v) {
    out_offsets_[v + 1] += out_offsets_[v];
    in_offsets_[v + 1] += in_offsets_[v];
  }

  // Undirected view: each directed edge contributes an incidence both ways;
  // antiparallel pairs collapse into one neighbor with summed weight.
  std::vector<std::tuple<uint32_t, uint32_t, uint32_t>> inc;
  inc.reserve(edges_.size() * 2);
  for (const GraphEdge& e : edges_) {
    inc.emplace_back(e.src, e.tgt, e.weight);
    inc.emplace_back(e.tgt, e.src, e.weight);
  }
  std::sort(inc.begin(), inc.end());

  und_offsets_.assign(n + 1, 0);
  und_neighbors_.clear();
  und_weights_.clear();
  und_neighbors_.reserve(inc.size());
  und_weights_.reserve(inc.size());
  size_t i = 0;
  while (i < inc.size()) {
    auto [a, b, w] = inc[i];
    uint64_t weight = w;
    size_t j = i + 1;
    while (j < inc.size() && std::get<0>(inc[j]) == a && std::get<1>(inc[j]) == b) {
      weight += std::get<2>(inc[j]);
      ++j;
    }
    und_neighbors_.push_back(b);
    und_weights_.push_back(static_cast<uint32_t>(
        weight > 0xffffffffull ? 0xffffffffull : weight));
    ++und_offsets_[a + 1];
    i = j;
  }
  for (uint32_t v = 0; v < n; ++v) und_offsets_[v + 1] += und_offsets_[v];
}

RetweetGraph build_graph(const Corpus& corpus, Execution exec) {
  RetweetGraph g;
  // Interning is a sequential pre-pass so node numbering never depends on the
  // thread schedule.
  g.node_ids_ = corpus.account_ids();
  g.node_index_.reserve(g.node_ids_.size());
  for (uint32_t i = 0; i < g.node_ids_.size(); ++i) g.node_index_[g.node_ids_[i]] = i;

  std::span<const uint32_t> rts = corpus.by_kind(TweetKind::Retweet);
  const auto& records = corpus.records();
  auto edge_key = [](uint32_t s, uint32_t t) {
    return (uint64_t(s) << 32) | uint64_t(t);
  };

  std::unordered_map<uint64_t, uint32_t> tally;
  if (exec == Execution::Parallel) {
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
#endif
    std::vector<std::unordered_map<uint64_t, uint32_t>> locals(max_threads);
    const int64_t m = static_cast<int64_t>(rts.size());
#pragma omp parallel
    {
#ifdef _OPENMP
      auto& local = locals[omp_get_thread_num()];
#else
      auto& local = locals[0];
#endif
#pragma omp for schedule(static)
      for (int64_t i = 0; i < m; ++i) {
        const TweetRecord& r = records[rts[static_cast<size_t>(i)]];
        uint32_t src = g.node_index_.find(r.author_id)->second;
        uint32_t tgt = g.node_index_.find(*r.referenced_author_id)->second;
        if (src != tgt) ++local[edge_key(src, tgt)];
      }
    }
    // Additive merge: the result is independent of thread partitioning.
    for (auto& local : locals) {
      for (const auto& [key, w] : local) tally[key] += w;
    }
  } else {
    for (uint32_t idx : rts) {
      const TweetRecord& r = records[idx];
      uint32_t src = g.node_index_.find(r.author_id)->second;
      uint32_t tgt = g.node_index_.find(*r.referenced_author_id)->second;
      if (src != tgt) ++tally[edge_key(src, tgt)];
    }
  }

  std::vector<GraphEdge> edges;
  edges.reserve(tally.size());
  for (const auto& [key, w] : tally) {
    edges.push_back(GraphEdge{static_cast<uint32_t>(key >> 32),
                              static_cast<uint32_t>(key & 0xffffffffu), w});
  }
  g.finalize(std::move(edges));
  return g;
}

}  // namespace partisan
