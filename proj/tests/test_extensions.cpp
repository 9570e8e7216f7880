#include <catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "netctrl/extensions.hpp"
#include "netctrl/random_fixtures.hpp"
#include "oracles.hpp"

using namespace netctrl;

namespace {

GeneralLinearSpec double_integrator() {
  std::ifstream in(oracle::sample_path("double_integrator.json"));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_general_linear(ss.str());
}

std::vector<std::size_t> zero_based(std::initializer_list<std::size_t> ids) {
  std::vector<std::size_t> out;
  for (std::size_t v : ids) out.push_back(v - 1);
  return out;
}

}  // namespace

TEST_CASE("lifting a scalar integrator", "[lift]") {
  const SystemTriple t = system_triple(oracle::load_sample("scalar.graph"));
  const SystemTriple two = lift_high_order(t, 2);
  CHECK(two.a == RatMatrix{{0, 1}, {0, 0}});
  CHECK(two.b == RatMatrix{{0}, {1}});
  CHECK(two.h == RatMatrix{{1, 0}});
  CHECK(lift_high_order(t, 1) == t);
  CHECK_THROWS_AS(lift_high_order(t, 0), DimensionError);

  const SystemTriple three = lift_high_order(system_triple(oracle::load_sample("leader_star.graph")), 3);
  CHECK(three.n() == 12);
  CHECK(three.a.block(0, 4, 4, 4) == RatMatrix::identity(4));
  CHECK(three.a.block(4, 8, 4, 4) == RatMatrix::identity(4));
  CHECK(three.a.block(8, 0, 4, 4) == system_triple(oracle::load_sample("leader_star.graph")).a);
}

TEST_CASE("lifted rank on the fixtures", "[lift]") {
  const SystemTriple seven = system_triple(oracle::load_sample("seven_node.graph"));
  const Theorem3Result r = theorem3_check(seven, 2);
  CHECK(r.rank_first == 2);
  CHECK(r.rank_lifted == 2);
  CHECK(r.equal);
  CHECK(lifted_zero_structure_holds(seven, 2));
  CHECK(theorem3_check(system_triple(oracle::load_sample("blocked_chain.graph")), 3).rank_lifted == 0);
}

TEST_CASE("lifted rank and zero structure on random graphs", "[lift][property]") {
  Rng rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = random_graph(rng, 1, 6, 0.3);
    const std::size_t m = 2 + detail::uniform_index(rng, 0, 1);
    const SystemTriple t = system_triple(g);
    const SystemTriple lifted = lift_high_order(t, m);
    const std::size_t first = oracle::gauss_rank(oracle::naive_target_matrix(t, t.n()));
    const std::size_t high = oracle::gauss_rank(oracle::naive_target_matrix(lifted, lifted.n()));
    REQUIRE(first == high);
    REQUIRE(theorem3_check(t, m).rank_lifted == high);
    REQUIRE(lifted_zero_structure_holds(t, m));
  }
}

TEST_CASE("general-linear reduction", "[general]") {
  const Graph g = oracle::load_sample("seven_node.graph");
  CHECK(general_linear_triple(g, GeneralLinearSpec::first_order()) == system_triple(g));

  const Graph pair = parse_graph("n 2\nleaders 1\ntargets 2\nedge 1 2 3");
  const GeneralLinearSpec s = double_integrator();
  const SystemTriple t = general_linear_triple(pair, s);
  const RatMatrix mk = oracle::triple_loop_product(s.m, s.k);
  const RatMatrix expect_a = oracle::four_index_kron(RatMatrix::identity(2), s.a_tilde) -
                             oracle::four_index_kron(laplacian(pair), mk);
  CHECK(t.a == expect_a);
  CHECK(t.a == RatMatrix{{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {3, Rational(3, 2), -3, Rational(-3, 2)}});
  CHECK(t.b == RatMatrix{{0}, {1}, {0}, {0}});
  CHECK(t.h == RatMatrix{{0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(target_controllable(t).controllable);
}

TEST_CASE("general-linear spec parsing", "[general][parse]") {
  const GeneralLinearSpec s = double_integrator();
  CHECK(s.sigma == 2);
  CHECK(s.k == RatMatrix{{1, Rational(1, 2)}});
  CHECK(s.m == RatMatrix{{0}, {1}});

  CHECK_THROWS_AS(parse_general_linear("{\"sigma\": 1,"), ParseError);
  CHECK_THROWS_AS(parse_general_linear("[1]"), Error);
  CHECK_THROWS_AS(parse_general_linear("{\"sigma\": 1, \"A\": [[0]], \"M\": [[1]], \"N\": [[1]]}"), Error);
  CHECK_THROWS_AS(parse_general_linear("{\"sigma\": 2, \"A\": [[0]], \"M\": [[1]], \"N\": [[1]], \"K\": [[1]]}"),
                  DimensionError);
  CHECK_THROWS_AS(parse_general_linear("{\"sigma\": 1, \"A\": [[0]], \"M\": [[1]], \"N\": [[1]], \"K\": [[\"x\"]]}"),
                  Error);
  CHECK_THROWS_AS(parse_general_linear("{\"sigma\": 1, \"A\": [[0, 1]], \"M\": [[1]], \"N\": [[1]], \"K\": [[1]]}"),
                  DimensionError);
  const auto ok = parse_general_linear("{\"sigma\": 1, \"A\": [[0.5]], \"M\": [[\"2/3\"]], \"N\": [[1]], \"K\": [[1]]}");
  CHECK(ok.a_tilde(0, 0) == Rational(1, 2));
  CHECK(ok.m(0, 0) == Rational(2, 3));
}

TEST_CASE("strongly connected component report", "[scc]") {
  const SccReport ten = scc_analyze(oracle::load_sample("ltf_ten.graph"));
  CHECK(ten.ltf_connected);
  CHECK(ten.reason == "ltf-connected");
  REQUIRE(ten.target_only_independent.size() == 1);
  CHECK(ten.follower_subgraph_components[ten.target_only_independent[0]] == zero_based({4, 8, 9}));
  CHECK(ten.target_only_has_leader_edge[0]);

  const SccReport seven = scc_analyze(oracle::load_sample("seven_node.graph"));
  CHECK(seven.components.size() == 7);
  CHECK(seven.reason == "no-target-only-iscc");
  CHECK_FALSE(seven.ltf_connected);

  const SccReport iso = scc_analyze(Graph(2, {}, {0}, {1}));
  CHECK(iso.reason == "no-leader-edge");
  CHECK_FALSE(iso.ltf_connected);
}

TEST_CASE("component verdicts on the fixtures", "[scc][prop5]") {
  const Prop5Result ten = prop5_check(oracle::load_sample("ltf_ten.graph"));
  CHECK(ten.precondition_holds);
  CHECK(ten.ltf_connected);
  CHECK(ten.verdict == Prop5Verdict::Inconclusive);
  CHECK_FALSE(ten.certificate.has_value());
  CHECK(ten.exact_rank.has_value());

  const Prop5Result iso = prop5_check(Graph(2, {}, {0}, {1}));
  CHECK(iso.verdict == Prop5Verdict::NotTargetControllable);
  REQUIRE(iso.certificate.has_value());
  CHECK(iso.certificate->component == std::vector<std::size_t>{1});
  CHECK(iso.exact_rank == 0u);
  CHECK(std::string(to_string(iso.verdict)) == "NOT_TARGET_CONTROLLABLE");

  const Prop5Result iso2 = prop5_check(Graph(2, {}, {0}, {1}), double_integrator());
  CHECK(iso2.verdict == Prop5Verdict::NotTargetControllable);
  CHECK(iso2.p == 2);
  CHECK(iso2.certificate->eigen_residual < 1e-8);
}

TEST_CASE("planted unfed components are detected", "[scc][prop5][property]") {
  Rng rng(8080);
  const GeneralLinearSpec di = double_integrator();
  for (int trial = 0; trial < 100; ++trial) {
    const PlantedComponentFixture f = planted_component_fixture(rng);
    const SccReport intact = scc_analyze(f.intact);
    bool seen = false;
    for (std::size_t k = 0; k < intact.target_only_independent.size(); ++k)
      if (intact.follower_subgraph_components[intact.target_only_independent[k]] == f.component) {
        seen = true;
        REQUIRE(intact.target_only_has_leader_edge[k]);
      }
    REQUIRE(seen);

    const Prop5Result cut = prop5_check(f.cut);
    REQUIRE(cut.verdict == Prop5Verdict::NotTargetControllable);
    REQUIRE(cut.certificate.has_value());
    REQUIRE(cut.certificate->eigen_residual <= 1e-8);
    REQUIRE(cut.certificate->input_residual <= 1e-8);
    REQUIRE(*cut.exact_rank < cut.p);

    const Prop5Result general = prop5_check(f.cut, di);
    REQUIRE(general.verdict == Prop5Verdict::NotTargetControllable);
    REQUIRE(general.certificate->eigen_residual <= 1e-8);
    REQUIRE(*general.exact_rank < general.p);
  }
}
