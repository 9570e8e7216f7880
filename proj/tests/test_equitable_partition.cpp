#include <catch_amalgamated.hpp>

#include <random>

#include "netctrl/equitable_partition.hpp"
#include "netctrl/random_fixtures.hpp"
#include "oracles.hpp"

using namespace netctrl;

namespace {

std::vector<std::vector<std::size_t>> one_based(const std::vector<std::vector<std::size_t>>& cells) {
  auto out = cells;
  for (auto& c : out)
    for (auto& v : c) ++v;
  return out;
}

std::size_t oracle_rank(const Graph& g) {
  const SystemTriple t = system_triple(g);
  return oracle::gauss_rank(oracle::naive_target_matrix(t, t.n()));
}

}  // namespace

TEST_CASE("six-node coarsest equitable partition", "[ep]") {
  const Graph g = oracle::load_sample("six_node.graph");
  const Partition p = pi_0ep(g);
  CHECK(one_based(p.cells()) == std::vector<std::vector<std::size_t>>{{1}, {2}, {3, 4}, {5, 6}});
  CHECK(is_equitable(g, p));
  CHECK(p.cells() == oracle::brute_force_pi0(g));
}

TEST_CASE("six-node target choices", "[ep]") {
  const Graph g = oracle::load_sample("six_node.graph");
  const Theorem1Verdict v = theorem1_check(g);
  REQUIRE(v.applicable);
  CHECK(v.controllable == true);
  CHECK(v.rank_cross_check == 2u);
  CHECK(v.cell_target_counts == std::vector<std::size_t>{0, 0, 1, 1});

  const Theorem1Verdict same_cell = theorem1_check(g.with_targets({2, 3}));
  REQUIRE(same_cell.applicable);
  CHECK(same_cell.controllable == false);
  CHECK(same_cell.rank_cross_check == 1u);
}

TEST_CASE("star: delta class splits across cells, criterion does not apply", "[ep]") {
  const Graph g = oracle::load_sample("leader_star.graph");
  const Theorem1Verdict v = theorem1_check(g);
  CHECK(one_based(v.partition.cells()) == std::vector<std::vector<std::size_t>>{{1}, {2}, {3, 4}});
  CHECK_FALSE(v.applicable);
  CHECK_FALSE(v.controllable.has_value());
  CHECK(v.rank_cross_check == 1u);
}

TEST_CASE("partition construction rejects bad cells", "[ep]") {
  CHECK_THROWS_AS(Partition(3, {{0, 1}}), GraphError);
  CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), GraphError);
  CHECK_THROWS_AS(Partition(3, {{0}, {}, {1, 2}}), GraphError);
  CHECK_THROWS_AS(Partition(2, {{0}, {1, 2}}), GraphError);
  const Partition p(3, {{2, 1}, {0}});
  CHECK(p.cells() == std::vector<std::vector<std::size_t>>{{0}, {1, 2}});
  CHECK(p.cell_of(2) == 1);
}

TEST_CASE("coarsest equitable partition matches exhaustive search", "[ep][property]") {
  Rng rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    RandomGraphOptions o;
    o.n = 2 + detail::uniform_index(rng, 0, 5);
    o.edge_probability = 0.35;
    o.max_weight = 2;
    o.leaders = 1 + detail::uniform_index(rng, 0, 1);
    o.targets = 1;
    const Graph g = random_graph(rng, o);
    const Partition p = pi_0ep(g);
    REQUIRE(is_equitable(g, p));
    REQUIRE(p.cells() == oracle::brute_force_pi0(g));
    for (std::size_t l : g.leaders()) REQUIRE(p.cells()[p.cell_of(l)].size() == 1);

    std::vector<std::size_t> labels(p.labels());
    REQUIRE(oracle::equitable_by_adjacency(adjacency(g), labels, p.size()));
  }
}

TEST_CASE("cell criterion agrees with the exact rank when it applies", "[ep][property]") {
  Rng rng(1009);
  int applied = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = random_graph(rng, 2, 9, 0.3);
    const Theorem1Verdict v = theorem1_check(g, false);
    const std::size_t rank = oracle_rank(g);
    if (!v.applicable) {
      REQUIRE_FALSE(v.controllable.has_value());
      continue;
    }
    ++applied;
    REQUIRE(*v.controllable == (rank == g.targets().size()));
  }
  CHECK(applied > 0);
}

TEST_CASE("delta-class representatives give controllable target sets", "[ep][cor]") {
  const Graph g = oracle::load_sample("nine_node.graph");
  const auto sets = suggest_targets_cor1(g);
  REQUIRE_FALSE(sets.empty());
  for (const auto& s : sets) {
    CHECK(s.targets.size() == 6);
    CHECK(s.rank == s.targets.size());
    CHECK(oracle_rank(g.with_targets(s.targets)) == s.targets.size());
  }
  CHECK(sets.size() <= 4);

  const auto capped = suggest_targets_cor1(g, 1);
  CHECK(capped.size() <= 1);

  Rng rng(404);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph r = random_graph(rng, 2, 8, 0.3);
    for (const auto& s : suggest_targets_cor1(r, 8)) REQUIRE(oracle_rank(r.with_targets(s.targets)) == s.targets.size());
  }
}
