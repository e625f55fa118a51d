#pragma once

#include <cstdint>
#include <string>

#include "partisan/analytics.hpp"
#include "partisan/graph.hpp"
#include "partisan/groups.hpp"
#include "partisan/kcore.hpp"

namespace partisan {

// Tab-separated src/tgt/weight edge list, sorted by (src, tgt) account id.
void export_edge_list(const RetweetGraph& graph, const std::string& path);

RetweetGraph import_edge_list(const std::string& path);

// GEXF 1.2draft with group, core number, and in/out degree centrality as node
// attributes. min_weight hides lighter edges but keeps every node.
void export_gexf(const RetweetGraph& graph, const GroupMap& groups,
                 const CoreAssignment& cores, const CentralityResult& centrality,
                 const std::string& path, uint32_t min_weight = 0);

}  // namespace partisan
