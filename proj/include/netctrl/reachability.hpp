#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "netctrl/ctrb_matrix.hpp"
#include "netctrl/exact_rank.hpp"
#include "netctrl/graph.hpp"

namespace netctrl {

/// Which nodes the leader set reaches, and how far.
///
/// A follower first reached at unit-weight BFS depth d >= 1 lies on a
/// shortest leader path through d - 1 intermediate nodes; that count is its
/// delta. Leaders are reachable but carry no delta.
struct ReachabilityReport {
  std::vector<bool> reachable;                      // indexed by node
  std::vector<std::optional<std::size_t>> delta_of;  // set for reachable followers only
  std::map<std::size_t, std::vector<std::size_t>> classes;  // delta -> nodes (ascending)
  std::vector<std::size_t> unreachable;
  std::vector<std::size_t> unreachable_targets;

  std::vector<std::size_t> reachable_nodes() const {
    std::vector<std::size_t> r;
    for (std::size_t v = 0; v < reachable.size(); ++v)
      if (reachable[v]) r.push_back(v);
    return r;
  }
};

inline ReachabilityReport analyze_reachability(const Graph& g) {
  const std::size_t n = g.size();
  const auto succ = g.successors();
  std::vector<std::size_t> depth(n, 0);
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t v : g.leaders()) {
    seen[v] = true;
    queue.push_back(v);
  }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : succ[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      depth[w] = depth[v] + 1;
      queue.push_back(w);
    }
  }

  ReachabilityReport r;
  r.reachable = seen;
  r.delta_of.assign(n, std::nullopt);
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v]) {
      r.unreachable.push_back(v);
      if (g.is_target(v)) r.unreachable_targets.push_back(v);
      continue;
    }
    if (g.is_leader(v)) continue;
    r.delta_of[v] = depth[v] - 1;
    r.classes[depth[v] - 1].push_back(v);
  }
  std::sort(r.unreachable_targets.begin(), r.unreachable_targets.end());
  return r;
}

struct Prop1Result {
  std::vector<std::size_t> unreachable_targets;  // graph side
  std::vector<std::size_t> w_zero_rows;          // matrix side, as node ids
  std::size_t dim_upper_bound = 0;               // p - |unreachable targets|
};

/// Unreachable targets versus zero rows of W. Both sides are computed
/// independently and must name the same nodes.
inline Prop1Result prop1_check(const Graph& g) {
  Prop1Result res;
  res.unreachable_targets = analyze_reachability(g).unreachable_targets;
  const RatMatrix w = target_ctrb_matrix(system_triple(g));
  for (std::size_t row : zero_rows(w)) res.w_zero_rows.push_back(g.targets()[row]);
  std::sort(res.w_zero_rows.begin(), res.w_zero_rows.end());
  if (res.w_zero_rows != res.unreachable_targets)
    throw ConsistencyError("unreachable targets and zero rows of W disagree");
  res.dim_upper_bound = g.targets().size() - res.unreachable_targets.size();
  return res;
}

}  // namespace netctrl
