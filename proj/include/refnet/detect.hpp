#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "refnet/graph.hpp"
#include "refnet/partition.hpp"

namespace refnet {

/// One level of a divisive dendrogram: the edge whose removal changed the
/// component structure (none for level 0) and the resulting partition. q is
/// always evaluated against the original input graph.
struct DendrogramLevel {
  std::optional<Edge> removed_edge;
  Partition partition;
  double q = 0.0;
};

/// Every edge removal performed by a divisive run, in order. anchor_node is
/// the maximum-degree node whose incident edges formed the candidate set
/// (-1 when removal was unrestricted, as in Girvan-Newman).
struct RemovalStep {
  Edge edge;
  std::int32_t anchor_node = -1;
};

struct Dendrogram {
  std::vector<DendrogramLevel> levels;
  std::vector<RemovalStep> removals;
  std::size_t best_index = 0;

  const Partition& best() const { return levels.at(best_index).partition; }
};

/// Divisive clustering by repeated removal of the globally max-betweenness
/// edge, recomputing betweenness after every removal. A level is recorded
/// whenever the weak-component partition changes; removal stops when no
/// non-loop edges remain (self-loops are never removed). Works on directed
/// or undirected graphs unchanged.
Dendrogram girvan_newman(const Graph& g);

/// Removal scope for smith_pittman: restrict candidates to the ego edge set
/// of the current max-degree node, or consider all edges (which reduces to
/// girvan_newman order except for the recorded anchors).
enum class SpScope { Ego, Global };

/// Degree-guided divisive clustering: each iteration finds the node with the
/// highest weighted total degree (ties by insertion index; nodes whose only
/// remaining edges are self-loops are skipped) and removes, among that node's
/// incident edges, the one with the highest betweenness as recomputed on the
/// full current graph. Levels are recorded as in girvan_newman.
Dendrogram smith_pittman(const Graph& g, SpScope scope = SpScope::Ego);

/// Per-move record of a Louvain run, for auditing that Q never decreases.
/// flat_assignment is the community of every original node after the move.
struct LouvainMove {
  int pass = 0;
  std::vector<std::int32_t> flat_assignment;
  double gain = 0.0;
};

struct LouvainTrace {
  std::vector<LouvainMove> moves;
  std::vector<double> pass_q;  // modularity of the flat partition after each pass
};

/// Two-phase modularity optimization for undirected graphs. Phase 1 sweeps
/// nodes in a seed-shuffled order, moving each node to the neighboring
/// community with the largest positive modularity gain (first maximum wins)
/// until no move improves Q by more than 1e-12; phase 2 aggregates
/// communities into super-nodes whose internal links become self-loops.
/// Passes repeat until one yields no move. Throws DirectedInputError for
/// directed input.
Partition louvain(const Graph& g, std::uint64_t seed, LouvainTrace* trace = nullptr);

/// Comparison harness: girvan_newman and smith_pittman on g as given, louvain
/// on to_undirected(g) when g is directed. Keys are "gn", "louvain", "sp";
/// every partition has q populated (louvain's q is measured on the undirected
/// graph it ran on).
std::map<std::string, Partition> run_all(const Graph& g, std::uint64_t seed);

}  // namespace refnet
