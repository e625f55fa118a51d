#include "partisan/kcore.hpp"

#include <algorithm>

namespace partisan {

namespace {

// Batagelj-Zaversnik bucket peeling, O(n + m).
CoreAssignment core_numbers_serial(const RetweetGraph& graph) {
  const uint32_t n = graph.node_count();
  CoreAssignment core(n, 0);
  if (n == 0) return core;

  std::vector<uint32_t> deg(n);
  uint32_t max_deg = 0;
  for (uint32_t v = 0; v < n; ++v) {
    deg[v] = graph.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }

  // vert holds nodes sorted by degree; bin[d] is the index of the first node
  // of degree d; pos[v] is v's slot in vert.
  std::vector<uint32_t> bin(max_deg + 2, 0);
  for (uint32_t v = 0; v < n; ++v) ++bin[deg[v] + 1];
  for (uint32_t d = 1; d <= max_deg + 1; ++d) bin[d] += bin[d - 1];
  std::vector<uint32_t> vert(n), pos(n);
  {
    std::vector<uint32_t> next = bin;
    for (uint32_t v = 0; v < n; ++v) {
      pos[v] = next[deg[v]]++;
      vert[pos[v]] = v;
    }
  }

  for (uint32_t i = 0; i < n; ++i) {
    uint32_t v = vert[i];
    core[v] = deg[v];
    for (uint32_t u : graph.neighbors(v)) {
      if (deg[u] > deg[v]) {
        // Swap u with the first node in its bucket, then shrink the bucket.
        uint32_t du = deg[u];
        uint32_t pu = pos[u];
        uint32_t pw = bin[du];
        uint32_t w = vert[pw];
        if (u != w) {
          std::swap(vert[pu], vert[pw]);
          pos[u] = pw;
          pos[w] = pu;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  return core;
}

// Level-synchronous peeling: at level k, repeatedly strip every live node
// whose remaining degree is <= k. A node's core number is the level at which
// it is stripped. Decrements are atomic; a node joins the next wave exactly
// when its degree first crosses the level boundary.
CoreAssignment core_numbers_parallel(const RetweetGraph& graph) {
  const uint32_t n = graph.node_count();
  CoreAssignment core(n, 0);
  if (n == 0) return core;

  std::vector<int64_t> deg(n);
  std::vector<uint8_t> alive(n, 1);
#pragma omp parallel for schedule(static)
  for (int64_t v = 0; v < static_cast<int64_t>(n); ++v) {
    deg[v] = graph.degree(static_cast<uint32_t>(v));
  }

  uint64_t removed = 0;
  std::vector<uint32_t> wave, next;
  for (uint32_t k = 0; removed < n; ++k) {
    wave.clear();
    for (uint32_t v = 0; v < n; ++v) {
      if (alive[v] && deg[v] <= static_cast<int64_t>(k)) wave.push_back(v);
    }
    while (!wave.empty()) {
      const int64_t wn = static_cast<int64_t>(wave.size());
      // Phase A: mark the wave dead so phase B never decrements into it.
#pragma omp parallel for schedule(static)
      for (int64_t i = 0; i < wn; ++i) {
        uint32_t v = wave[static_cast<size_t>(i)];
        alive[v] = 0;
        core[v] = k;
      }
      removed += wave.size();
      next.clear();
#pragma omp parallel
      {
        std::vector<uint32_t> local;
#pragma omp for schedule(dynamic, 64) nowait
        for (int64_t i = 0; i < wn; ++i) {
          for (uint32_t u : graph.neighbors(wave[static_cast<size_t>(i)])) {
            if (!alive[u]) continue;
            int64_t old;
#pragma omp atomic capture
            {
              old = deg[u];
              deg[u] -= 1;
            }
            if (old == static_cast<int64_t>(k) + 1) local.push_back(u);
          }
        }
#pragma omp critical(kcore_merge)
        next.insert(next.end(), local.begin(), local.end());
      }
      std::swap(wave, next);
    }
  }
  return core;
}

}  // namespace

CoreAssignment core_numbers(const RetweetGraph& graph, Execution exec) {
  return exec == Execution::Serial ? core_numbers_serial(graph)
                                   : core_numbers_parallel(graph);
}

}  // namespace partisan
