#pragma once

#include <cstdint>

#include "partisan/graph.hpp"
#include "partisan/ideology.hpp"

namespace testsupport {

struct TwoCliqueFixture {
  partisan::RetweetGraph graph;
  partisan::SeedLabels seeds;  // every node, with its true side
};

// Two homophilous communities ("lib0".."libN-1", "con0".."conN-1"): a ring
// plus `intra_extra` random same-side edges per node, and `cross_edges`
// random edges between the sides. The classic stress fixture for label
// propagation.
TwoCliqueFixture two_clique_fixture(uint32_t per_side, uint32_t intra_extra,
                                    uint32_t cross_edges, uint64_t rng_seed);

}  // namespace testsupport
