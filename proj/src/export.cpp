#include "partisan/export.hpp"

#include <algorithm>
#include <fstream>

#include "partisan/errors.hpp"

namespace partisan {

namespace {

struct NamedEdge {
  std::string_view src;
  std::string_view tgt;
  uint32_t weight;
  uint32_t src_idx;
  uint32_t tgt_idx;
};

std::vector<NamedEdge> named_edges(const RetweetGraph& graph, uint32_t min_weight) {
  std::vector<NamedEdge> out;
  out.reserve(graph.edge_count());
  for (const GraphEdge& e : graph.edges()) {
    if (e.weight < min_weight) continue;
    out.push_back({graph.node_id(e.src), graph.node_id(e.tgt), e.weight, e.src, e.tgt});
  }
  std::sort(out.begin(), out.end(), [](const NamedEdge& a, const NamedEdge& b) {
    if (a.src != b.src) return a.src < b.src;
    return a.tgt < b.tgt;
  });
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

void export_edge_list(const RetweetGraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open for writing: " + path);
  for (const NamedEdge& e : named_edges(graph, 0)) {
    out << e.src << '\t' << e.tgt << '\t' << e.weight << '\n';
  }
  if (!out) throw InputError("write failed: " + path);
}

RetweetGraph import_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open: " + path);
  std::vector<std::string> node_ids;
  StringMap<uint32_t> index;
  std::vector<GraphEdge> edges;
  auto intern = [&](std::string id) {
    auto it = index.find(id);
    if (it != index.end()) return it->second;
    auto v = static_cast<uint32_t>(node_ids.size());
    index.emplace(id, v);
    node_ids.push_back(std::move(id));
    return v;
  };
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
      throw InputError(path + ":" + std::to_string(lineno) + ": bad edge row");
    }
    uint64_t w = 0;
    try {
      w = std::stoull(fields[2]);
    } catch (const std::exception&) {
      throw InputError(path + ":" + std::to_string(lineno) + ": bad weight");
    }
    if (w == 0 || w > 0xffffffffull) {
      throw InputError(path + ":" + std::to_string(lineno) + ": bad weight");
    }
    GraphEdge e;
    e.src = intern(fields[0]);
    e.tgt = intern(fields[1]);
    e.weight = static_cast<uint32_t>(w);
    edges.push_back(e);
  }
  return RetweetGraph::from_edges(std::move(node_ids), std::move(edges));
}

void export_gexf(const RetweetGraph& graph, const GroupMap& groups,
                 const CoreAssignment& cores, const CentralityResult& centrality,
                 const std::string& path, uint32_t min_weight) {
  if (cores.size() != graph.node_count() ||
      centrality.out_centrality.size() != graph.node_count()) {
    throw InputError("gexf export: annotation sizes do not match the graph");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open for writing: " + path);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
      << "  <graph mode=\"static\" defaultedgetype=\"directed\">\n"
      << "    <attributes class=\"node\">\n"
      << "      <attribute id=\"0\" title=\"group\" type=\"string\"/>\n"
      << "      <attribute id=\"1\" title=\"core\" type=\"integer\"/>\n"
      << "      <attribute id=\"2\" title=\"out_centrality\" type=\"double\"/>\n"
      << "      <attribute id=\"3\" title=\"in_centrality\" type=\"double\"/>\n"
      << "    </attributes>\n"
      << "    <nodes>\n";

  std::vector<uint32_t> order(graph.node_count());
  for (uint32_t v = 0; v < graph.node_count(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    return graph.node_id(a) < graph.node_id(b);
  });
  for (uint32_t v : order) {
    std::string id = xml_escape(graph.node_id(v));
    out << "      <node id=\"" << id << "\" label=\"" << id << "\">\n"
        << "        <attvalues>\n"
        << "          <attvalue for=\"0\" value=\""
        << to_string(group_of(groups, graph.node_id(v))) << "\"/>\n"
        << "          <attvalue for=\"1\" value=\"" << cores[v] << "\"/>\n"
        << "          <attvalue for=\"2\" value=\""
        << fmt_double(centrality.out_centrality[v]) << "\"/>\n"
        << "          <attvalue for=\"3\" value=\""
        << fmt_double(centrality.in_centrality[v]) << "\"/>\n"
        << "        </attvalues>\n"
        << "      </node>\n";
  }

  out << "    </nodes>\n    <edges>\n";
  uint64_t eid = 0;
  for (const NamedEdge& e : named_edges(graph, min_weight)) {
    out << "      <edge id=\"" << eid++ << "\" source=\"" << xml_escape(e.src)
        << "\" target=\"" << xml_escape(e.tgt) << "\" weight=\"" << e.weight
        << "\"/>\n";
  }
  out << "    </edges>\n  </graph>\n</gexf>\n";
  if (!out) throw InputError("write failed: " + path);
}

}  // namespace partisan
