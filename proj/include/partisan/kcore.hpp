#pragma once

#include <cstdint>
#include <vector>

#include "partisan/execution.hpp"
#include "partisan/graph.hpp"

namespace partisan {

// core_number[v] = largest k such that v survives in the k-core of the
// undirected, distinct-neighbor view of the graph.
using CoreAssignment = std::vector<uint32_t>;

// Serial: Batagelj-Zaversnik bucket peeling, O(n + m).
// Parallel: level-synchronous peeling; each round removes every live node
// whose induced degree dropped below k. Both return the same assignment.
CoreAssignment core_numbers(const RetweetGraph& graph,
                            Execution exec = Execution::Parallel);

}  // namespace partisan
