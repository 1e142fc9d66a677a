#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "refnet/errors.hpp"
#include "refnet/partition.hpp"

namespace refnet {

/// Edge between two nodes of the owning graph, endpoints as node indices.
/// Weights are positive integers (movement counts). from == to is a self-loop.
struct Edge {
  std::int32_t from = 0;
  std::int32_t to = 0;
  std::int64_t weight = 1;

  bool is_loop() const { return from == to; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Construction/serialization form of an edge, with node labels spelled out.
struct LabeledEdge {
  std::string from;
  std::string to;
  std::int64_t weight = 1;
};

enum class DegreeMode { In, Out, Total };

/// Labeled directed or undirected weighted multigraph with self-loops.
/// Immutable after construction; node order is insertion order and all
/// operations that derive new graphs preserve it deterministically.
class Graph {
 public:
  Graph() = default;

  /// Takes an explicit node table (may include isolated nodes) plus edges
  /// whose endpoints index into it. Labels must be unique and non-empty,
  /// weights >= 1.
  Graph(std::vector<std::string> node_labels, std::vector<Edge> edges, bool directed);

  bool directed() const { return directed_; }
  std::int32_t node_count() const { return static_cast<std::int32_t>(labels_.size()); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<std::string>& node_labels() const { return labels_; }
  const std::string& label(std::int32_t node) const { return labels_.at(node); }
  std::optional<std::int32_t> find_node(std::string_view label) const;
  std::int32_t node_or_throw(std::string_view label) const;

  const std::vector<Edge>& edges() const { return edges_; }

  /// m: the sum of all edge weights.
  std::int64_t total_weight() const { return total_weight_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::int32_t> index_;
  std::vector<Edge> edges_;
  std::int64_t total_weight_ = 0;
  bool directed_ = true;
};

/// Build a multigraph from labeled edges. Nodes appear in first-appearance
/// order of the endpoints; parallel edges are preserved.
/// Throws EmptyGraphError for an empty edge list, BadLabelError for an
/// empty label.
Graph build_graph(std::span<const LabeledEdge> edges, bool directed);
Graph build_graph(std::span<const LabeledEdge> edges, bool directed,
                  std::span<const std::string> isolated_nodes);

/// Merge parallel same-direction edges (same unordered pair when undirected),
/// summing weights. Self-loops are kept. Node set and order unchanged; merged
/// edges appear in first-appearance order.
Graph simplify(const Graph& g);

/// Collapse each ordered pair to an unordered pair, summing the weights of
/// a->b and b->a. Self-loop weights are preserved. Throws NoOpError if the
/// graph is already undirected.
Graph to_undirected(const Graph& g);

/// Weighted degree. A directed self-loop of weight w contributes w to In,
/// w to Out and 2w to Total; an undirected self-loop contributes 2w to Total.
/// For undirected graphs all three modes return the total degree.
std::int64_t degree(const Graph& g, std::int32_t node, DegreeMode mode);
std::int64_t degree(const Graph& g, std::string_view label, DegreeMode mode);

/// Degrees of every node at once, same conventions as degree().
std::vector<std::int64_t> weighted_degrees(const Graph& g, DegreeMode mode);

/// Weakly connected components (direction ignored). Component ids follow the
/// smallest contained node's insertion index.
Partition connected_components(const Graph& g);

/// Edge-list CSV with header `from,to,weight`, one row per simplified edge,
/// self-loops as `X,X,w`.
std::string write_edge_csv(const Graph& g);
Graph read_edge_csv(std::string_view text, bool directed);

}  // namespace refnet
