#include "refnet/modularity.hpp"

#include <cstddef>

#include "refnet/errors.hpp"

namespace refnet {

double modularity(const Graph& g, const Partition& p) {
  const std::int32_t n = g.node_count();
  if (static_cast<std::int32_t>(p.community.size()) != n) {
    throw PartitionMismatchError("partition covers " + std::to_string(p.community.size()) +
                                 " nodes, graph has " + std::to_string(n));
  }
  for (std::int32_t c : p.community) {
    if (c < 0 || c >= p.num_communities) {
      throw PartitionMismatchError("community id " + std::to_string(c) + " out of range");
    }
  }
  const double m = static_cast<double>(g.total_weight());
  if (g.total_weight() == 0) throw EmptyGraphError();

  const std::int32_t k = p.num_communities;
  std::vector<std::int64_t> internal(k, 0);
  for (const Edge& e : g.edges()) {
    if (p.community[e.from] == p.community[e.to]) {
      internal[p.community[e.from]] += e.weight;
    }
  }

  double q = 0.0;
  if (g.directed()) {
    std::vector<std::int64_t> sum_in(k, 0), sum_out(k, 0);
    std::vector<std::int64_t> din = weighted_degrees(g, DegreeMode::In);
    std::vector<std::int64_t> dout = weighted_degrees(g, DegreeMode::Out);
    for (std::int32_t i = 0; i < n; ++i) {
      sum_in[p.community[i]] += din[i];
      sum_out[p.community[i]] += dout[i];
    }
    for (std::int32_t c = 0; c < k; ++c) {
      q += static_cast<double>(internal[c]) / m -
           static_cast<double>(sum_out[c]) * static_cast<double>(sum_in[c]) / (m * m);
    }
  } else {
    std::vector<std::int64_t> sum_tot(k, 0);
    std::vector<std::int64_t> dtot = weighted_degrees(g, DegreeMode::Total);
    for (std::int32_t i = 0; i < n; ++i) {
      sum_tot[p.community[i]] += dtot[i];
    }
    for (std::int32_t c = 0; c < k; ++c) {
      double st = static_cast<double>(sum_tot[c]);
      q += static_cast<double>(internal[c]) / m - st * st / (4.0 * m * m);
    }
  }
  return q;
}

Partition best_partition_over(const Graph& g, std::span<const Partition> candidates) {
  if (candidates.empty()) throw NoCandidatesError();
  std::size_t best = 0;
  double best_q = modularity(g, candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    double q = modularity(g, candidates[i]);
    if (q > best_q ||
        (q == best_q && candidates[i].num_communities < candidates[best].num_communities)) {
      best = i;
      best_q = q;
    }
  }
  Partition result = candidates[best];
  result.q = best_q;
  return result;
}

}  // namespace refnet
