#include "support/fixtures.hpp"

#include <set>
#include <string>

#include "partisan/rng.hpp"

namespace testsupport {

using namespace partisan;

TwoCliqueFixture two_clique_fixture(uint32_t per_side, uint32_t intra_extra,
                                    uint32_t cross_edges, uint64_t rng_seed) {
  DetRng rng(rng_seed);
  TwoCliqueFixture out;

  std::vector<std::string> ids;
  ids.reserve(2ull * per_side);
  for (uint32_t i = 0; i < per_side; ++i) ids.push_back("lib" + std::to_string(i));
  for (uint32_t i = 0; i < per_side; ++i) ids.push_back("con" + std::to_string(i));

  std::set<std::pair<uint32_t, uint32_t>> seen;
  std::vector<GraphEdge> edges;
  auto add = [&](uint32_t src, uint32_t tgt, uint32_t weight) {
    if (src == tgt) return false;
    if (seen.count({src, tgt}) || seen.count({tgt, src})) return false;
    seen.insert({src, tgt});
    edges.push_back({src, tgt, weight});
    return true;
  };

  // Ring inside each side keeps the communities connected.
  for (uint32_t side = 0; side < 2; ++side) {
    uint32_t base = side * per_side;
    for (uint32_t i = 0; i < per_side; ++i) {
      add(base + i, base + (i + 1) % per_side, 1 + static_cast<uint32_t>(rng.index(3)));
    }
    for (uint32_t i = 0; i < per_side; ++i) {
      for (uint32_t e = 0; e < intra_extra; ++e) {
        uint32_t tgt = base + static_cast<uint32_t>(rng.index(per_side));
        add(base + i, tgt, 1 + static_cast<uint32_t>(rng.index(3)));
      }
    }
  }
  uint32_t placed = 0;
  while (placed < cross_edges) {
    uint32_t lib = static_cast<uint32_t>(rng.index(per_side));
    uint32_t con = per_side + static_cast<uint32_t>(rng.index(per_side));
    if (add(lib, con, 1)) ++placed;
  }

  out.graph = RetweetGraph::from_edges(std::move(ids), std::move(edges));
  for (uint32_t i = 0; i < per_side; ++i) {
    out.seeds["lib" + std::to_string(i)] = {Leaning::Liberal, 1, 0};
    out.seeds["con" + std::to_string(i)] = {Leaning::Conservative, 0, 1};
  }
  return out;
}

}  // namespace testsupport
