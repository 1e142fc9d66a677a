#pragma once

#include <span>
#include <vector>

#include "refnet/graph.hpp"
#include "refnet/partition.hpp"

namespace refnet {

/// Partition quality Q in [-1, 1].
///
/// Directed:   Q = (1/m)  sum_ij (A_ij - kout_i * kin_j / m)   [same community]
/// Undirected: Q = (1/2m) sum_ij (A_ij - k_i * k_j / (2m))     [same community]
///
/// A_ij is the summed weight of edges i->j (for undirected graphs the matrix
/// is symmetric with diagonal entries counting twice the loop weight), and
/// degrees are weighted with the loop conventions of degree().
/// Throws PartitionMismatchError if p does not cover exactly the graph's
/// nodes, EmptyGraphError if m = 0.
double modularity(const Graph& g, const Partition& p);

/// Candidate with maximum Q; ties broken by fewest communities, then by
/// earliest position in the list. The returned partition has q populated.
/// Throws NoCandidatesError on an empty list.
Partition best_partition_over(const Graph& g, std::span<const Partition> candidates);

}  // namespace refnet
