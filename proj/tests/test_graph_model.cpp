#include <catch_amalgamated.hpp>

#include <random>

#include "netctrl/graph.hpp"
#include "netctrl/random_fixtures.hpp"
#include "oracles.hpp"

using namespace netctrl;

namespace {

std::size_t parse_error_line(std::string_view text) {
  try {
    parse_graph(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

bool rows_sum_to_zero(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j);
    if (s != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parse a two-node chain", "[parse]") {
  const Graph g = parse_graph("n 2\nleaders 1\ntargets 2\nedge 1 2 1");
  CHECK(g.size() == 2);
  REQUIRE(g.edges().size() == 1);
  CHECK(g.edges()[0] == Edge{0, 1, 1});
  CHECK(g.leaders() == std::vector<std::size_t>{0});
  CHECK(g.targets() == std::vector<std::size_t>{1});
  CHECK(g.followers() == std::vector<std::size_t>{1});
}

TEST_CASE("parse accepts comments, fractions and decimals", "[parse]") {
  const Graph g = parse_graph("# demo\nn 3   # nodes\n\nleaders 1 3\ntargets 2\nedge 1 2 3/2\nedge 3 2 0.25\n");
  REQUIRE(g.edges().size() == 2);
  CHECK(g.edges()[0].weight == Rational(3, 2));
  CHECK(g.edges()[1].weight == Rational(1, 4));
}

TEST_CASE("parse rejects malformed input with line numbers", "[parse]") {
  CHECK_THROWS_AS(parse_graph("n 2\nleaders 1\ntargets 2\nedge 1 1 1"), ParseError);
  CHECK(parse_error_line("n 2\nleaders 1\ntargets 2\nedge 1 1 1") == 4);
  CHECK(parse_error_line("n 2\nleaders 1\ntargets 2\nedge 1 2 1\nedge 1 2 2") == 5);
  CHECK(parse_error_line("n 2\nleaders 1\ntargets 2\nedge 1 2 0") == 4);
  CHECK(parse_error_line("n 2\nleaders 1\ntargets 2\nedge 1 2 -1") == 4);
  CHECK(parse_error_line("n 2\nleaders 1\ntargets 3") == 3);
  CHECK(parse_error_line("n 2\ntargets 2\nleaders 1") == 2);
  CHECK(parse_error_line("n 2\nleaders 1\n") == 3);
  CHECK(parse_error_line("") == 1);
  CHECK(parse_error_line("n 2\nleaders 1\ntargets 2\nedge 1 2 x") == 4);
  CHECK(parse_error_line("n 2\nleaders 1 1\ntargets 2") == 2);
  CHECK(parse_error_line("n 0") == 1);
  CHECK(parse_error_line("n 2\nleaders 1\ntargets 2\nvertex 1") == 4);
}

TEST_CASE("graph constructor validates invariants", "[graph]") {
  CHECK_THROWS_AS(Graph(2, {{0, 0, 1}}, {0}, {1}), GraphError);
  CHECK_THROWS_AS(Graph(2, {{0, 1, 1}, {0, 1, 2}}, {0}, {1}), GraphError);
  CHECK_THROWS_AS(Graph(2, {{0, 1, 0}}, {0}, {1}), GraphError);
  CHECK_THROWS_AS(Graph(2, {{0, 2, 1}}, {0}, {1}), GraphError);
  CHECK_THROWS_AS(Graph(2, {}, {}, {1}), GraphError);
  CHECK_THROWS_AS(Graph(2, {}, {0}, {}), GraphError);
  CHECK_NOTHROW(Graph(2, {}, {0}, {0}));
}

TEST_CASE("adjacency", "[matrices]") {
  CHECK(adjacency(Graph(3, {}, {0}, {1})).is_zero());
  const Graph g = parse_graph("n 2\nleaders 1\ntargets 2\nedge 1 2 3/2");
  const RatMatrix a = adjacency(g);
  CHECK(a(1, 0) == Rational(3, 2));
  CHECK(a(0, 1) == 0);
  CHECK(a(0, 0) == 0);
  CHECK(a(1, 1) == 0);

  const RatMatrix neg_l{{0, 0, 0, 0, 0, 0, 0},  {1, -3, 0, 2, 0, 0, 0}, {1, 0, -3, 0, 2, 0, 0},
                        {0, 0, 0, 0, 0, 0, 0},  {0, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 3, 0, -4, 0},
                        {1, 0, 0, 0, 3, 0, -4}};
  const RatMatrix a7 = adjacency(oracle::load_sample("seven_node.graph"));
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) CHECK(a7(i, j) == (i == j ? Rational(0) : neg_l(i, j)));
}

TEST_CASE("laplacian of the fixtures", "[matrices]") {
  CHECK(laplacian(Graph(3, {}, {0}, {1})).is_zero());
  const RatMatrix star{{0, 0, 0, 0}, {1, -1, 0, 0}, {2, 0, -2, 0}, {2, 0, 0, -2}};
  CHECK(-laplacian(oracle::load_sample("leader_star.graph")) == star);

  const RatMatrix nine{{1, 0, 0, 0, 0, 0, 0, 0, -1},   {-1, 2, -1, 0, 0, 0, 0, 0, 0},
                       {0, 0, 0, 0, 0, 0, 0, 0, 0},    {-1, -2, 0, 3, 0, 0, 0, 0, 0},
                       {-1, -1, 0, -1, 3, 0, 0, 0, 0}, {0, 0, 0, -2, 0, 3, 0, 0, -1},
                       {0, 0, 0, 0, -1, -1, 2, 0, 0},  {0, 0, 0, 0, 0, 0, -1, 1, 0},
                       {0, 0, 0, 0, 0, 0, 0, 0, 0}};
  CHECK(laplacian(oracle::load_sample("nine_node.graph")) == nine);

  const RatMatrix chain{{-1, 1, 0, 0}, {0, 0, 0, 0}, {0, 2, -2, 0}, {0, 0, 2, -2}};
  CHECK(-laplacian(oracle::load_sample("blocked_chain.graph")) == chain);
}

TEST_CASE("system_triple of the fixtures", "[matrices]") {
  const SystemTriple one = system_triple(oracle::load_sample("scalar.graph"));
  CHECK(one.a == RatMatrix{{0}});
  CHECK(one.b == RatMatrix{{1}});
  CHECK(one.h == RatMatrix{{1}});

  const SystemTriple star = system_triple(oracle::load_sample("leader_star.graph"));
  CHECK(star.b == RatMatrix{{1}, {0}, {0}, {0}});
  CHECK(star.h == RatMatrix{{0, 0, 1, 0}, {0, 0, 0, 1}});

  const SystemTriple seven = system_triple(oracle::load_sample("seven_node.graph"));
  CHECK(seven.n() == 7);
  CHECK(seven.l() == 1);
  CHECK(seven.p() == 2);
  CHECK(seven.h == RatMatrix{{0, 1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0}});
  CHECK(seven.a(5, 3) == 3);
  CHECK(seven.a(5, 5) == -4);
}

TEST_CASE("graph properties on random graphs", "[graph][property]") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(rng, 1, 10, 0.35);
    const RatMatrix l = laplacian(g), a = adjacency(g);
    REQUIRE(rows_sum_to_zero(l));
    RatMatrix d(g.size(), g.size());
    for (std::size_t i = 0; i < g.size(); ++i) d(i, i) = l(i, i);
    REQUIRE(l == d - a);

    const std::string text = serialize_graph(g);
    const Graph back = parse_graph(text);
    REQUIRE(back == g);
    REQUIRE(serialize_graph(back) == text);

    const SystemTriple t = system_triple(g);
    for (std::size_t j = 0; j < t.l(); ++j) {
      int ones = 0;
      for (std::size_t i = 0; i < t.n(); ++i) {
        REQUIRE((t.b(i, j) == 0 || t.b(i, j) == 1));
        ones += t.b(i, j) == 1;
      }
      REQUIRE(ones == 1);
    }
    const RatMatrix hth = mat_mul(t.h.transpose(), t.h);
    for (std::size_t i = 0; i < t.n(); ++i)
      for (std::size_t j = 0; j < t.n(); ++j)
        REQUIRE(hth(i, j) == (i == j && g.is_target(i) ? 1 : 0));
  }
}

TEST_CASE("SystemTriple rejects inconsistent shapes", "[matrices]") {
  CHECK_THROWS_AS(SystemTriple(RatMatrix(2, 3), RatMatrix(2, 1), RatMatrix(1, 2)), DimensionError);
  CHECK_THROWS_AS(SystemTriple(RatMatrix(2, 2), RatMatrix(3, 1), RatMatrix(1, 2)), DimensionError);
  CHECK_THROWS_AS(SystemTriple(RatMatrix(2, 2), RatMatrix(2, 1), RatMatrix(1, 3)), DimensionError);
}
