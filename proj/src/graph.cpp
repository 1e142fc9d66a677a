#include "refnet/graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <utility>

#include "csv.hpp"

namespace refnet {

Graph::Graph(std::vector<std::string> node_labels, std::vector<Edge> edges, bool directed)
    : labels_(std::move(node_labels)), edges_(std::move(edges)), directed_(directed) {
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) {
      throw BadLabelError("node label must be non-empty");
    }
    auto [it, inserted] = index_.emplace(labels_[i], static_cast<std::int32_t>(i));
    if (!inserted) {
      throw BadLabelError("duplicate node label: " + labels_[i]);
    }
  }
  const auto n = static_cast<std::int32_t>(labels_.size());
  for (const Edge& e : edges_) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) {
      throw ContractError("edge endpoint out of range");
    }
    if (e.weight < 1) {
      throw ValidationError("edge weight must be a positive integer");
    }
    total_weight_ += e.weight;
  }
}

std::optional<std::int32_t> Graph::find_node(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::int32_t Graph::node_or_throw(std::string_view label) const {
  auto idx = find_node(label);
  if (!idx) throw NodeNotFoundError(std::string(label));
  return *idx;
}

Graph build_graph(std::span<const LabeledEdge> edges, bool directed) {
  return build_graph(edges, directed, {});
}

Graph build_graph(std::span<const LabeledEdge> edges, bool directed,
                  std::span<const std::string> isolated_nodes) {
  if (edges.empty() && isolated_nodes.empty()) {
    throw EmptyGraphError("cannot build a graph from an empty edge list");
  }
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::int32_t> index;
  auto intern = [&](const std::string& label) {
    if (label.empty()) throw BadLabelError("node label must be non-empty");
    auto it = index.find(label);
    if (it != index.end()) return it->second;
    auto id = static_cast<std::int32_t>(labels.size());
    labels.push_back(label);
    index.emplace(label, id);
    return id;
  };

  std::vector<Edge> resolved;
  resolved.reserve(edges.size());
  for (const LabeledEdge& e : edges) {
    std::int32_t from = intern(e.from);
    std::int32_t to = intern(e.to);
    resolved.push_back(Edge{from, to, e.weight});
  }
  for (const std::string& label : isolated_nodes) {
    intern(label);
  }
  return Graph(std::move(labels), std::move(resolved), directed);
}

Graph simplify(const Graph& g) {
  // Key = ordered (from,to) for directed graphs, unordered for undirected.
  std::map<std::pair<std::int32_t, std::int32_t>, std::size_t> slot;
  std::vector<Edge> merged;
  merged.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    auto key = std::pair{e.from, e.to};
    if (!g.directed() && key.first > key.second) std::swap(key.first, key.second);
    auto it = slot.find(key);
    if (it == slot.end()) {
      slot.emplace(key, merged.size());
      merged.push_back(e);
    } else {
      merged[it->second].weight += e.weight;
    }
  }
  return Graph(g.node_labels(), std::move(merged), g.directed());
}

Graph to_undirected(const Graph& g) {
  if (!g.directed()) {
    throw NoOpError("graph is already undirected");
  }
  std::map<std::pair<std::int32_t, std::int32_t>, std::size_t> slot;
  std::vector<Edge> collapsed;
  for (const Edge& e : g.edges()) {
    auto key = std::pair{std::min(e.from, e.to), std::max(e.from, e.to)};
    auto it = slot.find(key);
    if (it == slot.end()) {
      slot.emplace(key, collapsed.size());
      collapsed.push_back(e);
    } else {
      collapsed[it->second].weight += e.weight;
    }
  }
  return Graph(g.node_labels(), std::move(collapsed), false);
}

std::vector<std::int64_t> weighted_degrees(const Graph& g, DegreeMode mode) {
  std::vector<std::int64_t> out(g.node_count(), 0);
  std::vector<std::int64_t> in(g.node_count(), 0);
  for (const Edge& e : g.edges()) {
    if (g.directed()) {
      out[e.from] += e.weight;
      in[e.to] += e.weight;
    } else if (e.is_loop()) {
      out[e.from] += 2 * e.weight;
    } else {
      out[e.from] += e.weight;
      out[e.to] += e.weight;
    }
  }
  if (!g.directed()) return out;  // all modes report the total for undirected
  switch (mode) {
    case DegreeMode::In:
      return in;
    case DegreeMode::Out:
      return out;
    case DegreeMode::Total:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += in[i];
      return out;
  }
  return out;
}

std::int64_t degree(const Graph& g, std::int32_t node, DegreeMode mode) {
  if (node < 0 || node >= g.node_count()) {
    throw NodeNotFoundError("#" + std::to_string(node));
  }
  return weighted_degrees(g, mode)[node];
}

std::int64_t degree(const Graph& g, std::string_view label, DegreeMode mode) {
  return degree(g, g.node_or_throw(label), mode);
}

Partition connected_components(const Graph& g) {
  const auto n = g.node_count();
  std::vector<std::int32_t> root(n);
  for (std::int32_t i = 0; i < n; ++i) root[i] = i;
  auto find = [&](std::int32_t v) {
    while (root[v] != v) {
      root[v] = root[root[v]];
      v = root[v];
    }
    return v;
  };
  for (const Edge& e : g.edges()) {
    auto a = find(e.from);
    auto b = find(e.to);
    if (a != b) root[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::int32_t> assignment(n);
  for (std::int32_t i = 0; i < n; ++i) assignment[i] = find(i);
  return Partition::from_assignment(assignment);
}

std::string write_edge_csv(const Graph& g) {
  Graph s = simplify(g);
  std::string out = "from,to,weight\n";
  for (const Edge& e : s.edges()) {
    out += csv::escape(s.label(e.from));
    out += ',';
    out += csv::escape(s.label(e.to));
    out += ',';
    out += std::to_string(e.weight);
    out += '\n';
  }
  return out;
}

Graph read_edge_csv(std::string_view text, bool directed) {
  auto rows = csv::parse(text);
  if (rows.empty()) {
    throw ParseError("edge list is empty; expected header from,to,weight", 1);
  }
  const auto& header = rows.front().fields;
  if (header.size() != 3 || header[0] != "from" || header[1] != "to" ||
      header[2] != "weight") {
    throw ParseError("expected header from,to,weight", rows.front().line);
  }
  std::vector<LabeledEdge> edges;
  edges.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != 3) {
      throw ParseError("expected 3 fields", row.line);
    }
    std::int64_t weight = 0;
    const std::string& w = row.fields[2];
    auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
    if (ec != std::errc{} || ptr != w.data() + w.size() || weight < 1) {
      throw ParseError("weight must be a positive integer, got '" + w + "'", row.line);
    }
    edges.push_back(LabeledEdge{row.fields[0], row.fields[1], weight});
  }
  return build_graph(edges, directed);
}

}  // namespace refnet
