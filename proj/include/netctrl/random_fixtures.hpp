#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "netctrl/graph.hpp"

namespace netctrl {

using Rng = std::mt19937_64;

struct RandomGraphOptions {
  std::size_t n = 6;
  double edge_probability = 0.3;
  int max_weight = 3;  // integer weights drawn from 1..max_weight
  std::size_t leaders = 1;
  std::size_t targets = 2;
};

namespace detail {

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::vector<std::size_t> sample_ids(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(std::min(k, n));
  std::sort(ids.begin(), ids.end());
  return ids;
}

inline Rational random_weight(Rng& rng, int max_weight) {
  return Rational(std::uniform_int_distribution<int>(1, std::max(1, max_weight))(rng));
}

}  // namespace detail

/// Erdos-Renyi style digraph with random leader and target sets.
inline Graph random_graph(Rng& rng, const RandomGraphOptions& o) {
  std::bernoulli_distribution coin(o.edge_probability);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < o.n; ++i)
    for (std::size_t j = 0; j < o.n; ++j)
      if (i != j && coin(rng)) edges.push_back({i, j, detail::random_weight(rng, o.max_weight)});
  return Graph(o.n, std::move(edges), detail::sample_ids(rng, o.n, std::max<std::size_t>(1, o.leaders)),
               detail::sample_ids(rng, o.n, std::max<std::size_t>(1, o.targets)));
}

/// Graph with sizes drawn uniformly: n in [n_min, n_max], up to n/3 leaders,
/// up to n/2 targets.
inline Graph random_graph(Rng& rng, std::size_t n_min, std::size_t n_max, double edge_probability = 0.3) {
  RandomGraphOptions o;
  o.n = detail::uniform_index(rng, n_min, n_max);
  o.edge_probability = edge_probability;
  o.leaders = detail::uniform_index(rng, 1, std::max<std::size_t>(1, o.n / 3));
  o.targets = detail::uniform_index(rng, 1, std::max<std::size_t>(1, o.n / 2));
  return random_graph(rng, o);
}

/// A follower component C whose members are all targets, strongly connected,
/// with no incoming edges except a single leader edge. `intact` keeps that
/// edge, `cut` removes it.
struct PlantedComponentFixture {
  Graph intact;
  Graph cut;
  std::vector<std::size_t> component;
};

inline PlantedComponentFixture planted_component_fixture(Rng& rng, std::size_t n_min = 5, std::size_t n_max = 9) {
  const std::size_t n = detail::uniform_index(rng, std::max<std::size_t>(n_min, 3), std::max(n_min, n_max));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  const std::size_t n_leaders = detail::uniform_index(rng, 1, std::max<std::size_t>(1, (n - 1) / 3));
  const std::size_t c_size = detail::uniform_index(rng, 1, std::min<std::size_t>(3, n - n_leaders));
  std::vector<std::size_t> leaders(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_leaders));
  std::vector<std::size_t> comp(order.begin() + static_cast<std::ptrdiff_t>(n_leaders),
                                order.begin() + static_cast<std::ptrdiff_t>(n_leaders + c_size));
  std::sort(leaders.begin(), leaders.end());
  std::sort(comp.begin(), comp.end());
  std::vector<bool> in_comp(n, false);
  for (std::size_t v : comp) in_comp[v] = true;

  std::map<std::pair<std::size_t, std::size_t>, Rational> weights;
  std::bernoulli_distribution coin(0.3);
  for (std::size_t k = 0; k < comp.size() && comp.size() > 1; ++k)
    weights.emplace(std::pair(comp[k], comp[(k + 1) % comp.size()]), detail::random_weight(rng, 3));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || (in_comp[j] && !in_comp[i])) continue;
      if (coin(rng)) weights.emplace(std::pair(i, j), detail::random_weight(rng, 3));
    }
  std::vector<Edge> edges;
  for (const auto& [key, w] : weights) edges.push_back({key.first, key.second, w});

  std::vector<std::size_t> targets = comp;
  for (std::size_t v : detail::sample_ids(rng, n, detail::uniform_index(rng, 0, n / 3)))
    if (!in_comp[v]) targets.push_back(v);
  std::sort(targets.begin(), targets.end());

  Graph cut(n, edges, leaders, targets);
  const std::size_t feeder = leaders[detail::uniform_index(rng, 0, leaders.size() - 1)];
  edges.push_back({feeder, comp[detail::uniform_index(rng, 0, comp.size() - 1)], detail::random_weight(rng, 3)});
  Graph intact(n, std::move(edges), leaders, targets);
  return {std::move(intact), std::move(cut), std::move(comp)};
}

}  // namespace netctrl
