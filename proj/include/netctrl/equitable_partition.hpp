#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "netctrl/ctrb_matrix.hpp"
#include "netctrl/graph.hpp"
#include "netctrl/reachability.hpp"

namespace netctrl {

/// Ordered disjoint cells covering 0..n-1. Cells are kept sorted internally
/// and ordered by their smallest member.
class Partition {
 public:
  Partition() = default;
  Partition(std::size_t n, std::vector<std::vector<std::size_t>> cells) : cells_(std::move(cells)) {
    cell_of_.assign(n, n);
    for (auto& c : cells_) {
      if (c.empty()) throw GraphError("partition has an empty cell");
      std::sort(c.begin(), c.end());
    }
    std::sort(cells_.begin(), cells_.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::size_t k = 0; k < cells_.size(); ++k)
      for (std::size_t v : cells_[k]) {
        if (v >= n) throw GraphError("partition references node outside the graph");
        if (cell_of_[v] != n) throw GraphError("partition cells overlap");
        cell_of_[v] = k;
      }
    for (std::size_t v = 0; v < n; ++v)
      if (cell_of_[v] == n) throw GraphError("partition does not cover every node");
  }

  static Partition from_labels(const std::vector<std::size_t>& label) {
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t v = 0; v < label.size(); ++v) groups[label[v]].push_back(v);
    std::vector<std::vector<std::size_t>> cells;
    for (auto& [_, c] : groups) cells.push_back(std::move(c));
    return Partition(label.size(), std::move(cells));
  }

  std::size_t node_count() const { return cell_of_.size(); }
  std::size_t size() const { return cells_.size(); }
  const std::vector<std::vector<std::size_t>>& cells() const { return cells_; }
  std::size_t cell_of(std::size_t v) const { return cell_of_[v]; }
  const std::vector<std::size_t>& labels() const { return cell_of_; }

  friend bool operator==(const Partition& a, const Partition& b) { return a.cells_ == b.cells_; }

 private:
  std::vector<std::vector<std::size_t>> cells_;
  std::vector<std::size_t> cell_of_;
};

/// Weighted in-neighbour sums of v into each cell, as a sparse sorted list.
inline std::vector<std::pair<std::size_t, Rational>> cell_in_sums(
    const std::vector<std::vector<std::pair<std::size_t, Rational>>>& in_edges,
    const std::vector<std::size_t>& label, std::size_t v) {
  std::map<std::size_t, Rational> sums;
  for (const auto& [w, weight] : in_edges[v]) sums[label[w]] += weight;
  return {sums.begin(), sums.end()};
}

inline std::vector<std::vector<std::pair<std::size_t, Rational>>> in_edge_lists(const Graph& g) {
  std::vector<std::vector<std::pair<std::size_t, Rational>>> in(g.size());
  for (const Edge& e : g.edges()) in[e.to].emplace_back(e.from, e.weight);
  return in;
}

/// Coarsest equitable refinement of `seed`.
///
/// Each round splits cells by the signature (current cell, exact in-weight
/// sum into every cell). Splitting never merges, so the cell count is
/// monotone and the loop stops once a round leaves it unchanged.
inline Partition coarsest_ep(const Graph& g, const Partition& seed) {
  if (seed.node_count() != g.size()) throw GraphError("seed partition size differs from graph");
  const auto in = in_edge_lists(g);
  std::vector<std::size_t> label = seed.labels();
  std::size_t count = seed.size();
  using Signature = std::pair<std::size_t, std::vector<std::pair<std::size_t, Rational>>>;
  while (true) {
    std::map<Signature, std::size_t> ids;
    std::vector<std::size_t> next(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
      Signature sig{label[v], cell_in_sums(in, label, v)};
      auto [it, _] = ids.emplace(std::move(sig), ids.size());
      next[v] = it->second;
    }
    label = std::move(next);
    if (ids.size() == count) break;
    count = ids.size();
  }
  return Partition::from_labels(label);
}

/// True when every cell pair satisfies the equal in-weight-sum condition.
inline bool is_equitable(const Graph& g, const Partition& p) {
  const auto in = in_edge_lists(g);
  for (const auto& cell : p.cells()) {
    const auto ref = cell_in_sums(in, p.labels(), cell.front());
    for (std::size_t v : cell)
      if (cell_in_sums(in, p.labels(), v) != ref) return false;
  }
  return true;
}

/// Leaders as fixed singleton cells, followers split by the coarsest
/// equitable partition relative to them.
inline Partition pi_0ep(const Graph& g) {
  std::vector<std::vector<std::size_t>> cells;
  for (std::size_t v : g.leaders()) cells.push_back({v});
  if (auto f = g.followers(); !f.empty()) cells.push_back(std::move(f));
  return coarsest_ep(g, Partition(g.size(), std::move(cells)));
}

/// Every delta class lies inside a single cell.
inline bool delta_cell_consistent(const Partition& p, const ReachabilityReport& r) {
  if (p.node_count() != r.reachable.size()) throw GraphError("partition and reachability cover different graphs");
  for (const auto& [delta, nodes] : r.classes)
    for (std::size_t v : nodes)
      if (p.cell_of(v) != p.cell_of(nodes.front())) return false;
  return true;
}

struct Theorem1Verdict {
  Partition partition;
  bool applicable = false;
  std::vector<std::size_t> cell_target_counts;  // parallel to partition.cells()
  bool has_unreachable_target = false;
  std::optional<bool> controllable;              // set iff applicable
  std::optional<std::size_t> rank_cross_check;   // rank W, unless skipped
  std::size_t p = 0;
};

/// Cell/target criterion on pi_0EP. Applies only when the delta classes
/// respect the partition; otherwise the verdict is left undetermined and the
/// exact rank decides. With `exact` set, rank W is always computed and must
/// agree whenever the criterion applies.
inline Theorem1Verdict theorem1_check(const Graph& g, bool exact = true) {
  Theorem1Verdict v;
  v.partition = pi_0ep(g);
  const ReachabilityReport reach = analyze_reachability(g);
  v.applicable = delta_cell_consistent(v.partition, reach);
  v.cell_target_counts.assign(v.partition.size(), 0);
  for (std::size_t t : g.targets()) ++v.cell_target_counts[v.partition.cell_of(t)];
  v.has_unreachable_target = !reach.unreachable_targets.empty();
  v.p = g.targets().size();
  if (v.applicable) {
    const std::size_t most = *std::max_element(v.cell_target_counts.begin(), v.cell_target_counts.end());
    v.controllable = most <= 1 && !v.has_unreachable_target;
  }
  if (exact) {
    v.rank_cross_check = target_controllable(system_triple(g)).dim;
    if (v.controllable && *v.controllable != (*v.rank_cross_check == v.p))
      throw ConsistencyError("pi_0EP cell criterion contradicts the exact rank of W");
  }
  return v;
}

struct TargetSuggestion {
  std::vector<std::size_t> targets;  // ascending
  std::size_t rank = 0;              // verified rank W, equals targets.size()
};

/// Leaders plus one representative of every delta class, enumerated over all
/// representative choices (at most `cap` candidates examined). Only sets whose
/// exact rank confirms target controllability are returned.
inline std::vector<TargetSuggestion> suggest_targets_cor1(const Graph& g, std::size_t cap = 64) {
  const ReachabilityReport reach = analyze_reachability(g);
  std::vector<const std::vector<std::size_t>*> classes;
  for (const auto& [_, nodes] : reach.classes) classes.push_back(&nodes);

  std::vector<TargetSuggestion> out;
  std::vector<std::size_t> choice(classes.size(), 0);
  for (std::size_t examined = 0; examined < cap; ++examined) {
    std::vector<std::size_t> targets = g.leaders();
    for (std::size_t k = 0; k < classes.size(); ++k) targets.push_back((*classes[k])[choice[k]]);
    std::sort(targets.begin(), targets.end());
    const auto tc = target_controllable(system_triple(g.with_targets(targets)));
    if (tc.controllable) out.push_back({std::move(targets), tc.dim});

    // Odometer over representative choices, last class fastest.
    std::size_t k = classes.size();
    while (k > 0) {
      --k;
      if (++choice[k] < classes[k]->size()) break;
      choice[k] = 0;
      if (k == 0) return out;
    }
    if (classes.empty()) break;
  }
  return out;
}

}  // namespace netctrl
