#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "refnet/graph.hpp"

namespace refnet {

struct EdgeScore {
  std::int32_t from = 0;
  std::int32_t to = 0;
  double score = 0.0;
};

/// Betweenness per simplified edge: for each edge e the sum over node pairs
/// (ordered when directed, unordered when undirected) of the fraction of
/// shortest paths between the pair that traverse e. Shortest paths use unit
/// edge lengths; weights and multiplicities do not affect path length or
/// count. Self-loops always score 0 and unreachable pairs contribute nothing.
/// Scores are listed in simplified-edge order.
std::vector<EdgeScore> edge_betweenness(const Graph& g);

/// Brandes accumulation over an explicit unit-length edge set on nodes
/// 0..node_count-1. Self-loops are ignored (score 0). Used by the divisive
/// algorithms, which re-score a shrinking edge set.
std::vector<double> edge_betweenness_unit(std::int32_t node_count,
                                          std::span<const std::pair<std::int32_t, std::int32_t>> edges,
                                          bool directed);

/// Weighted total degree per node (self-loops count twice).
std::vector<std::int64_t> degree_centrality(const Graph& g);

}  // namespace refnet
