#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "netctrl/errors.hpp"
#include "netctrl/rat_matrix.hpp"

namespace netctrl {

/// A 3x3 block zero pattern. Groups are arbitrary index sets rather than
/// contiguous ranges, which spares callers from permuting a matrix before
/// checking it.
struct ZeroPattern {
  using Group = std::vector<std::size_t>;

  std::array<Group, 3> row_groups;
  std::array<Group, 3> col_groups;
  std::set<std::pair<int, int>> zero_blocks;

  /// The S form: same grouping on rows and columns, zero blocks at (1,2) and
  /// (3,2) in 1-based block coordinates.
  static ZeroPattern s_form(std::array<Group, 3> groups) {
    ZeroPattern p;
    p.row_groups = groups;
    p.col_groups = std::move(groups);
    p.zero_blocks = {{0, 1}, {2, 1}};
    return p;
  }
};

namespace detail {

inline bool partitions(const std::array<ZeroPattern::Group, 3>& groups, std::size_t n) {
  std::vector<int> seen(n, 0);
  std::size_t total = 0;
  for (const auto& g : groups)
    for (std::size_t i : g) {
      if (i >= n || seen[i]++) return false;
      ++total;
    }
  return total == n;
}

}  // namespace detail

/// True iff every entry inside a declared zero block is exactly zero.
inline bool conforms_to_pattern(const RatMatrix& m, const ZeroPattern& p) {
  if (!detail::partitions(p.row_groups, m.rows()) || !detail::partitions(p.col_groups, m.cols()))
    throw DimensionError("conforms_to_pattern: groups do not partition the matrix indices");
  for (auto [rg, cg] : p.zero_blocks) {
    if (rg < 0 || rg > 2 || cg < 0 || cg > 2)
      throw DimensionError("conforms_to_pattern: zero block outside the 3x3 grid");
    for (std::size_t i : p.row_groups[static_cast<std::size_t>(rg)])
      for (std::size_t j : p.col_groups[static_cast<std::size_t>(cg)])
        if (m(i, j) != 0) return false;
  }
  return true;
}

}  // namespace netctrl
