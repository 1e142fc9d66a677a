#include "refnet/detect.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "refnet/centrality.hpp"
#include "refnet/errors.hpp"
#include "refnet/modularity.hpp"

namespace refnet {

namespace {

// ----- shared divisive machinery ------------------------------------------

Partition components_of(std::int32_t n, const std::vector<Edge>& edges,
                        const std::vector<char>& alive) {
  std::vector<std::int32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!alive[i]) continue;
    std::int32_t a = find(edges[i].from), b = find(edges[i].to);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::int32_t> root(n);
  for (std::int32_t i = 0; i < n; ++i) root[i] = find(i);
  return Partition::from_assignment(root);
}

std::size_t pick_best_level(const std::vector<DendrogramLevel>& levels) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i].q > levels[best].q ||
        (levels[i].q == levels[best].q &&
         levels[i].partition.num_communities < levels[best].partition.num_communities)) {
      best = i;
    }
  }
  return best;
}

enum class DivisiveMode { Gn, SpEgo, SpGlobal };

Dendrogram run_divisive(const Graph& g, DivisiveMode mode) {
  if (g.total_weight() == 0) throw EmptyGraphError();
  const Graph s = simplify(g);
  const std::int32_t n = s.node_count();
  const std::vector<Edge>& edges = s.edges();
  std::vector<char> alive(edges.size(), 1);

  Dendrogram d;
  Partition current = components_of(n, edges, alive);
  current.q = modularity(g, current);
  d.levels.push_back({std::nullopt, current, *current.q});

  std::vector<std::size_t> live;         // alive non-loop edge indices
  std::vector<std::pair<std::int32_t, std::int32_t>> ends;

  while (true) {
    live.clear();
    ends.clear();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (alive[i] && !edges[i].is_loop()) {
        live.push_back(i);
        ends.emplace_back(edges[i].from, edges[i].to);
      }
    }
    if (live.empty()) break;

    std::vector<double> score = edge_betweenness_unit(n, ends, s.directed());

    std::int32_t anchor = -1;
    if (mode != DivisiveMode::Gn) {
      // Degrees over all alive edges, loops included; the anchor must still
      // have a removable (non-loop) edge.
      std::vector<std::int64_t> deg(n, 0);
      std::vector<char> removable(n, 0);
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!alive[i]) continue;
        const Edge& e = edges[i];
        if (e.is_loop()) {
          deg[e.from] += 2 * e.weight;
        } else {
          deg[e.from] += e.weight;
          deg[e.to] += e.weight;
          removable[e.from] = removable[e.to] = 1;
        }
      }
      for (std::int32_t i = 0; i < n; ++i) {
        if (!removable[i]) continue;
        if (anchor < 0 || deg[i] > deg[anchor]) anchor = i;
      }
    }

    std::size_t best = live.size();
    for (std::size_t k = 0; k < live.size(); ++k) {
      if (mode == DivisiveMode::SpEgo) {
        const Edge& e = edges[live[k]];
        if (e.from != anchor && e.to != anchor) continue;
      }
      if (best == live.size() || score[k] > score[best] ||
          (score[k] == score[best] && ends[k] < ends[best])) {
        best = k;
      }
    }

    std::size_t removed = live[best];
    alive[removed] = 0;
    d.removals.push_back({edges[removed], anchor});

    Partition next = components_of(n, edges, alive);
    if (!next.same_assignment(current)) {
      next.q = modularity(g, next);
      d.levels.push_back({edges[removed], next, *next.q});
      current = std::move(next);
    }
  }

  d.best_index = pick_best_level(d.levels);
  return d;
}

// ----- louvain --------------------------------------------------------------

// Uniform draw in [0, bound) from raw engine output; modulo keeps the shuffle
// byte-identical across standard libraries.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

void shuffle_order(std::vector<std::int32_t>& order, std::mt19937_64& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(draw_below(rng, i));
    std::swap(order[i - 1], order[j]);
  }
}

struct LevelGraph {
  std::int32_t n = 0;
  std::vector<Edge> edges;            // non-loop, parallel edges merged
  std::vector<std::int64_t> loop_w;   // summed self-loop weight per node
};

LevelGraph initial_level(const Graph& g) {
  LevelGraph lg;
  lg.n = g.node_count();
  lg.loop_w.assign(lg.n, 0);
  std::map<std::pair<std::int32_t, std::int32_t>, std::size_t> slot;
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) {
      lg.loop_w[e.from] += e.weight;
      continue;
    }
    auto key = std::minmax(e.from, e.to);
    auto [it, inserted] = slot.try_emplace({key.first, key.second}, lg.edges.size());
    if (inserted) {
      lg.edges.push_back(e);
    } else {
      lg.edges[it->second].weight += e.weight;
    }
  }
  return lg;
}

}  // namespace

Dendrogram girvan_newman(const Graph& g) { return run_divisive(g, DivisiveMode::Gn); }

Dendrogram smith_pittman(const Graph& g, SpScope scope) {
  return run_divisive(g, scope == SpScope::Ego ? DivisiveMode::SpEgo : DivisiveMode::SpGlobal);
}

Partition louvain(const Graph& g, std::uint64_t seed, LouvainTrace* trace) {
  if (g.directed()) throw DirectedInputError();
  if (g.total_weight() == 0) throw EmptyGraphError();

  const double m = static_cast<double>(g.total_weight());
  std::mt19937_64 rng(seed);

  LevelGraph lg = initial_level(g);
  std::vector<std::int32_t> node_to_current(g.node_count());
  std::iota(node_to_current.begin(), node_to_current.end(), 0);

  int pass = 0;
  while (true) {
    ++pass;
    const std::int32_t n = lg.n;

    std::vector<std::vector<std::pair<std::int32_t, std::int64_t>>> adj(n);
    for (const Edge& e : lg.edges) {
      adj[e.from].emplace_back(e.to, e.weight);
      adj[e.to].emplace_back(e.from, e.weight);
    }
    std::vector<std::int64_t> k(n, 0);
    for (std::int32_t i = 0; i < n; ++i) {
      k[i] = 2 * lg.loop_w[i];
      for (const auto& [j, w] : adj[i]) k[i] += w;
    }

    std::vector<std::int32_t> comm(n);
    std::iota(comm.begin(), comm.end(), 0);
    std::vector<std::int64_t> sum_tot(k);

    // One shuffle per phase-1 invocation; repeated sweeps keep the same order.
    std::vector<std::int32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    shuffle_order(order, rng);

    std::vector<std::int64_t> w_to(n, 0);
    std::vector<std::int32_t> touched;  // neighbor communities, encounter order

    bool pass_moved = false;
    bool sweep_moved = true;
    while (sweep_moved) {
      sweep_moved = false;
      for (std::int32_t i : order) {
        const std::int32_t c_old = comm[i];
        sum_tot[c_old] -= k[i];

        touched.clear();
        for (const auto& [j, w] : adj[i]) {
          std::int32_t c = comm[j];
          if (w_to[c] == 0) touched.push_back(c);
          w_to[c] += w;
        }
        // c_old is a candidate even when no neighbor remains in it.
        if (w_to[c_old] == 0) touched.push_back(c_old);

        const double ki = static_cast<double>(k[i]);
        auto gain_of = [&](std::int32_t c) {
          return static_cast<double>(w_to[c]) / m -
                 static_cast<double>(sum_tot[c]) * ki / (2.0 * m * m);
        };
        const double gain_old = gain_of(c_old);
        std::int32_t best_c = c_old;
        double best_gain = gain_old;
        for (std::int32_t c : touched) {
          if (c == c_old) continue;
          double gain = gain_of(c);
          if (gain > best_gain) {
            best_gain = gain;
            best_c = c;
          }
        }
        for (std::int32_t c : touched) w_to[c] = 0;

        if (best_c != c_old && best_gain - gain_old > 1e-12) {
          comm[i] = best_c;
          sum_tot[best_c] += k[i];
          sweep_moved = true;
          pass_moved = true;
          if (trace) {
            std::vector<std::int32_t> flat(node_to_current.size());
            for (std::size_t v = 0; v < flat.size(); ++v) flat[v] = comm[node_to_current[v]];
            trace->moves.push_back(
                {pass, Partition::from_assignment(flat).community, best_gain - gain_old});
          }
        } else {
          comm[i] = c_old;
          sum_tot[c_old] += k[i];
        }
      }
    }

    std::vector<std::int32_t> flat(node_to_current.size());
    for (std::size_t v = 0; v < flat.size(); ++v) flat[v] = comm[node_to_current[v]];
    Partition flat_p = Partition::from_assignment(flat);
    if (trace) trace->pass_q.push_back(modularity(g, flat_p));

    if (!pass_moved) {
      flat_p.q = modularity(g, flat_p);
      return flat_p;
    }

    // Aggregate communities into super-nodes; ids follow first appearance by
    // node index, internal links (and absorbed loops) become self-loops.
    std::vector<std::int32_t> newid(n, -1);
    std::int32_t next_id = 0;
    for (std::int32_t i = 0; i < n; ++i) {
      if (newid[comm[i]] < 0) newid[comm[i]] = next_id++;
    }

    LevelGraph agg;
    agg.n = next_id;
    agg.loop_w.assign(next_id, 0);
    for (std::int32_t i = 0; i < n; ++i) agg.loop_w[newid[comm[i]]] += lg.loop_w[i];
    std::map<std::pair<std::int32_t, std::int32_t>, std::size_t> slot;
    for (const Edge& e : lg.edges) {
      std::int32_t cu = newid[comm[e.from]];
      std::int32_t cv = newid[comm[e.to]];
      if (cu == cv) {
        agg.loop_w[cu] += e.weight;
        continue;
      }
      auto key = std::minmax(cu, cv);
      auto [it, inserted] = slot.try_emplace({key.first, key.second}, agg.edges.size());
      if (inserted) {
        agg.edges.push_back({cu, cv, e.weight});
      } else {
        agg.edges[it->second].weight += e.weight;
      }
    }

    for (std::int32_t& c : node_to_current) c = newid[comm[c]];
    lg = std::move(agg);
  }
}

std::map<std::string, Partition> run_all(const Graph& g, std::uint64_t seed) {
  std::map<std::string, Partition> out;
  out["gn"] = girvan_newman(g).best();
  out["sp"] = smith_pittman(g).best();
  if (g.directed()) {
    out["louvain"] = louvain(to_undirected(g), seed);
  } else {
    out["louvain"] = louvain(g, seed);
  }
  return out;
}

}  // namespace refnet
