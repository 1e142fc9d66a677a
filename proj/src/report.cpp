#include "refnet/report.hpp"

#include <algorithm>
#include <tuple>

#include <json.hpp>

#include "refnet/errors.hpp"

namespace refnet {

namespace {

void check_coverage(const Graph& g, const Partition& p) {
  if (static_cast<std::int32_t>(p.community.size()) != g.node_count()) {
    throw PartitionMismatchError("partition covers " + std::to_string(p.community.size()) +
                                 " nodes, graph has " + std::to_string(g.node_count()));
  }
  for (std::int32_t c : p.community) {
    if (c < 0 || c >= p.num_communities) {
      throw PartitionMismatchError("community id " + std::to_string(c) + " out of range");
    }
  }
}

std::string dot_escape(std::string_view label) {
  std::string out;
  for (char c : label) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string to_dot(const Graph& g, const Partition* p) {
  const bool directed = g.directed();
  std::string out = directed ? "digraph refnet {\n" : "graph refnet {\n";
  for (std::int32_t i = 0; i < g.node_count(); ++i) {
    out += "  \"" + dot_escape(g.label(i)) + "\"";
    if (p) out += " [community=" + std::to_string(p->community[i]) + "]";
    out += ";\n";
  }
  const char* arrow = directed ? " -> " : " -- ";
  for (const Edge& e : g.edges()) {
    out += "  \"" + dot_escape(g.label(e.from)) + "\"" + arrow + "\"" +
           dot_escape(g.label(e.to)) + "\" [label=\"" + std::to_string(e.weight) + "\"];\n";
  }
  out += "}\n";
  return out;
}

std::string to_graphml(const Graph& g, const Partition* p) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
  if (p) {
    out += "  <key id=\"community\" for=\"node\" attr.name=\"community\" attr.type=\"int\"/>\n";
  }
  out += "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n";
  out += std::string("  <graph id=\"G\" edgedefault=\"") +
         (g.directed() ? "directed" : "undirected") + "\">\n";
  for (std::int32_t i = 0; i < g.node_count(); ++i) {
    out += "    <node id=\"n" + std::to_string(i) + "\"><data key=\"label\">" +
           xml_escape(g.label(i)) + "</data>";
    if (p) {
      out += "<data key=\"community\">" + std::to_string(p->community[i]) + "</data>";
    }
    out += "</node>\n";
  }
  for (const Edge& e : g.edges()) {
    out += "    <edge source=\"n" + std::to_string(e.from) + "\" target=\"n" +
           std::to_string(e.to) + "\"><data key=\"weight\">" + std::to_string(e.weight) +
           "</data></edge>\n";
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

std::string to_json(const Graph& g, const Partition* p) {
  nlohmann::ordered_json j;
  j["directed"] = g.directed();
  j["nodes"] = nlohmann::ordered_json::array();
  for (std::int32_t i = 0; i < g.node_count(); ++i) {
    nlohmann::ordered_json node;
    node["id"] = i;
    node["label"] = g.label(i);
    if (p) node["community"] = p->community[i];
    j["nodes"].push_back(std::move(node));
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) {
    j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"weight", e.weight}});
  }
  return j.dump(2) + "\n";
}

}  // namespace

std::vector<CommunityTableRow> community_table(const Graph& g, const Partition& p) {
  check_coverage(g, p);
  std::vector<std::int64_t> din = weighted_degrees(g, DegreeMode::In);
  std::vector<std::int64_t> dout = weighted_degrees(g, DegreeMode::Out);
  std::vector<std::int64_t> dtot = weighted_degrees(g, DegreeMode::Total);
  std::vector<CommunityTableRow> rows;
  rows.reserve(g.node_count());
  for (std::int32_t i = 0; i < g.node_count(); ++i) {
    rows.push_back({p.community[i], g.label(i), din[i], dout[i], dtot[i]});
  }
  std::sort(rows.begin(), rows.end(), [](const CommunityTableRow& a, const CommunityTableRow& b) {
    return std::tie(a.community_id, a.intervention) < std::tie(b.community_id, b.intervention);
  });
  return rows;
}

std::vector<DegreeDistributionRow> degree_distribution(const Graph& g) {
  std::vector<std::int64_t> din = weighted_degrees(g, DegreeMode::In);
  std::vector<std::int64_t> dout = weighted_degrees(g, DegreeMode::Out);
  std::vector<std::int64_t> dtot = weighted_degrees(g, DegreeMode::Total);
  std::vector<DegreeDistributionRow> rows;
  rows.reserve(g.node_count());
  for (std::int32_t i = 0; i < g.node_count(); ++i) {
    rows.push_back({g.label(i), din[i], dout[i], dtot[i], 0});
  }
  std::sort(rows.begin(), rows.end(),
            [](const DegreeDistributionRow& a, const DegreeDistributionRow& b) {
              return std::tie(a.total, a.intervention) < std::tie(b.total, b.intervention);
            });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].rank = static_cast<std::int32_t>(i + 1);
  }
  return rows;
}

ExportFormat parse_export_format(std::string_view name) {
  if (name == "dot") return ExportFormat::Dot;
  if (name == "graphml") return ExportFormat::GraphML;
  if (name == "json") return ExportFormat::Json;
  throw FormatError("unknown export format: " + std::string(name));
}

std::string export_graph(const Graph& g, const Partition* p, ExportFormat format) {
  if (p) check_coverage(g, *p);
  Graph s = simplify(g);
  switch (format) {
    case ExportFormat::Dot: return to_dot(s, p);
    case ExportFormat::GraphML: return to_graphml(s, p);
    case ExportFormat::Json: return to_json(s, p);
  }
  throw FormatError("unknown export format");
}

Graph import_graph_json(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid graph json: ") + e.what());
  }
  try {
    bool directed = j.at("directed").get<bool>();
    std::vector<std::string> labels;
    for (const auto& node : j.at("nodes")) {
      std::int32_t id = node.at("id").get<std::int32_t>();
      if (id != static_cast<std::int32_t>(labels.size())) {
        throw FormatError("node ids must be consecutive from 0");
      }
      labels.push_back(node.at("label").get<std::string>());
    }
    std::vector<Edge> edges;
    for (const auto& edge : j.at("edges")) {
      Edge e{edge.at("from").get<std::int32_t>(), edge.at("to").get<std::int32_t>(),
             edge.value("weight", std::int64_t{1})};
      if (e.from < 0 || e.from >= static_cast<std::int32_t>(labels.size()) || e.to < 0 ||
          e.to >= static_cast<std::int32_t>(labels.size())) {
        throw FormatError("edge endpoint out of range");
      }
      if (e.weight < 1) throw FormatError("edge weight must be a positive integer");
      edges.push_back(e);
    }
    return Graph(std::move(labels), std::move(edges), directed);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid graph json: ") + e.what());
  }
}

}  // namespace refnet
