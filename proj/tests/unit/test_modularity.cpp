#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "refnet/errors.hpp"
#include "refnet/modularity.hpp"

using namespace refnet;

namespace {

Graph bridge_of_triangles() {
  std::vector<LabeledEdge> edges = {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"c", "d"},
                                    {"d", "e"}, {"e", "f"}, {"f", "d"}};
  return build_graph(edges, false);
}

}  // namespace

TEST_CASE("directed single self-loop, one community: Q = 0") {
  Graph g = build_graph(std::vector<LabeledEdge>{{"a", "a"}}, true);
  CHECK(modularity(g, Partition::whole(1)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("directed 2-cycle: singletons -0.5, whole 0") {
  Graph g = build_graph(std::vector<LabeledEdge>{{"a", "b"}, {"b", "a"}}, true);
  CHECK(modularity(g, Partition::singletons(2)) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(modularity(g, Partition::whole(2)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("bridge of triangles, two-triangle partition: Q = 5/14") {
  Graph g = bridge_of_triangles();
  Partition p = Partition::from_assignment({0, 0, 0, 1, 1, 1});
  CHECK(std::fabs(modularity(g, p) - 5.0 / 14.0) <= 1e-12);
}

TEST_CASE("validation errors") {
  Graph g = build_graph(std::vector<LabeledEdge>{{"a", "b"}}, true);
  CHECK_THROWS_AS(modularity(g, Partition::singletons(3)), PartitionMismatchError);

  Partition bad;
  bad.community = {0, 2};  // not contiguous
  bad.num_communities = 2;
  CHECK_THROWS_AS(modularity(g, bad), PartitionMismatchError);

  std::vector<std::string> labels = {"a", "b"};
  Graph empty(labels, {}, true);
  CHECK_THROWS_AS(modularity(empty, Partition::singletons(2)), EmptyGraphError);
}

TEST_CASE("oracle equivalence over all partitions of random graphs") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    bool directed = trial % 2 == 0;
    Graph g = oracle::random_graph(rng, 6, directed);
    auto partitions = oracle::all_partitions(g.node_count());
    for (const Partition& p : partitions) {
      CAPTURE(trial);
      CHECK(std::fabs(modularity(g, p) - oracle::modularity_dense(g, p)) <= 1e-12);
    }
  }
}

TEST_CASE("whole-graph directed partition scores exactly 0") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = oracle::random_graph(rng, 8, true);
    CHECK(std::fabs(modularity(g, Partition::whole(g.node_count()))) <= 1e-12);
  }
}

TEST_CASE("Q is invariant under integer weight scaling") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 25; ++trial) {
    bool directed = trial % 2 == 0;
    Graph g = oracle::random_graph(rng, 7, directed);
    std::int64_t factor = 2 + static_cast<std::int64_t>(rng() % 9);
    std::vector<Edge> scaled = g.edges();
    for (Edge& e : scaled) e.weight *= factor;
    Graph h(g.node_labels(), scaled, directed);
    auto partitions = oracle::all_partitions(g.node_count());
    const Partition& p = partitions[rng() % partitions.size()];
    CHECK(std::fabs(modularity(g, p) - modularity(h, p)) <= 1e-12);
  }
}

TEST_CASE("Q is invariant under community relabeling") {
  Graph g = bridge_of_triangles();
  Partition p = Partition::from_assignment({0, 0, 0, 1, 1, 1});
  Partition relabeled;
  relabeled.community = {1, 1, 1, 0, 0, 0};
  relabeled.num_communities = 2;
  CHECK(modularity(g, p) == doctest::Approx(modularity(g, relabeled)).epsilon(1e-15));
}

TEST_CASE("Q stays within [-1, 1]") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = oracle::random_graph(rng, 6, trial % 2 == 0);
    for (const Partition& p : oracle::all_partitions(g.node_count())) {
      double q = modularity(g, p);
      CHECK(q >= -1.0 - 1e-12);
      CHECK(q <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("best_partition_over picks max Q") {
  Graph cycle = build_graph(std::vector<LabeledEdge>{{"a", "b"}, {"b", "a"}}, true);
  std::vector<Partition> candidates = {Partition::singletons(2), Partition::whole(2)};
  Partition best = best_partition_over(cycle, candidates);
  CHECK(best.num_communities == 1);
  CHECK(best.q.has_value());
  CHECK(*best.q == doctest::Approx(0.0));

  std::vector<Partition> one = {Partition::singletons(2)};
  CHECK(best_partition_over(cycle, one).num_communities == 2);

  std::vector<Partition> none;
  CHECK_THROWS_AS(best_partition_over(cycle, none), NoCandidatesError);
}

TEST_CASE("best_partition_over ties: fewest communities, then earliest") {
  // a-b plus isolated c: {a,b},{c} and the whole graph both score exactly 0
  // (all terms dyadic), so the 1-community candidate must win the tie.
  std::vector<LabeledEdge> edges = {{"a", "b"}};
  std::vector<std::string> isolated = {"c"};
  Graph g = build_graph(edges, false, isolated);
  Partition split = Partition::from_assignment({0, 0, 1});
  Partition whole = Partition::whole(3);
  REQUIRE(modularity(g, split) == modularity(g, whole));
  std::vector<Partition> sized = {split, whole};
  CHECK(best_partition_over(g, sized).same_assignment(whole));

  // mirror-image partitions of two disjoint edges score identically
  // (dyadic terms again); equal Q and equal size fall back to list order.
  Graph pair = build_graph(std::vector<LabeledEdge>{{"a", "b"}, {"c", "d"}}, false);
  Partition left = Partition::from_assignment({0, 0, 1, 2});   // {ab},{c},{d}
  Partition right = Partition::from_assignment({0, 1, 2, 2});  // {a},{b},{cd}
  REQUIRE(modularity(pair, left) == modularity(pair, right));
  std::vector<Partition> tie = {left, right};
  CHECK(best_partition_over(pair, tie).same_assignment(left));
  std::vector<Partition> reversed = {right, left};
  CHECK(best_partition_over(pair, reversed).same_assignment(right));
}