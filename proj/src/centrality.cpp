#include "refnet/centrality.hpp"

#include <queue>

namespace refnet {

namespace {

// Adjacency prepared for Brandes traversal: outgoing arcs per node, each arc
// remembering the index of the edge it came from so dependencies can be
// credited to the right edge.
struct Arc {
  std::int32_t to;
  std::size_t edge;
};

}  // namespace

std::vector<double> edge_betweenness_unit(std::int32_t node_count,
                                          std::span<const std::pair<std::int32_t, std::int32_t>> edges,
                                          bool directed) {
  std::vector<double> score(edges.size(), 0.0);

  std::vector<std::vector<Arc>> adj(node_count);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    if (u == v) continue;  // loops lie on no shortest path
    adj[u].push_back({v, e});
    if (!directed) adj[v].push_back({u, e});
  }

  std::vector<std::int32_t> dist(node_count);
  std::vector<double> sigma(node_count);
  std::vector<double> delta(node_count);
  std::vector<std::vector<Arc>> pred(node_count);  // arc into each node on a shortest path
  std::vector<std::int32_t> order;
  order.reserve(node_count);

  for (std::int32_t s = 0; s < node_count; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : pred) p.clear();
    order.clear();

    dist[s] = 0;
    sigma[s] = 1.0;
    std::queue<std::int32_t> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      std::int32_t u = frontier.front();
      frontier.pop();
      order.push_back(u);
      for (const Arc& a : adj[u]) {
        if (dist[a.to] < 0) {
          dist[a.to] = dist[u] + 1;
          frontier.push(a.to);
        }
        if (dist[a.to] == dist[u] + 1) {
          sigma[a.to] += sigma[u];
          pred[a.to].push_back({u, a.edge});
        }
      }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::int32_t w = *it;
      for (const Arc& a : pred[w]) {
        double credit = sigma[a.to] / sigma[w] * (1.0 + delta[w]);
        score[a.edge] += credit;
        delta[a.to] += credit;
      }
    }
  }

  if (!directed) {
    for (double& x : score) x *= 0.5;
  }
  return score;
}

std::vector<EdgeScore> edge_betweenness(const Graph& g) {
  Graph s = simplify(g);
  std::vector<std::pair<std::int32_t, std::int32_t>> ends;
  ends.reserve(s.edge_count());
  for (const Edge& e : s.edges()) ends.emplace_back(e.from, e.to);

  std::vector<double> raw = edge_betweenness_unit(s.node_count(), ends, s.directed());
  std::vector<EdgeScore> result;
  result.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    result.push_back({ends[i].first, ends[i].second, raw[i]});
  }
  return result;
}

std::vector<std::int64_t> degree_centrality(const Graph& g) {
  return weighted_degrees(g, DegreeMode::Total);
}

}  // namespace refnet
