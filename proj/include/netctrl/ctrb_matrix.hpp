#pragma once

#include <cstddef>
#include <vector>

#include "netctrl/exact_rank.hpp"
#include "netctrl/graph.hpp"

namespace netctrl {

/// The blocks B, AB, ..., A^{horizon-1} B.
inline std::vector<RatMatrix> krylov_blocks(const SystemTriple& t, std::size_t horizon) {
  std::vector<RatMatrix> blocks;
  blocks.reserve(horizon);
  if (horizon == 0) return blocks;
  blocks.push_back(t.b);
  for (std::size_t k = 1; k < horizon; ++k) blocks.push_back(mat_mul(t.a, blocks.back()));
  return blocks;
}

/// Q = [B, AB, ..., A^{n-1} B].
inline RatMatrix ctrb_matrix(const SystemTriple& t) {
  const auto blocks = krylov_blocks(t, t.n());
  return hstack(blocks);
}

/// W = H [B, AB, ..., A^{horizon-1} B]; the horizon defaults to the state
/// dimension. Any p x n output matrix is accepted, not only selections.
inline RatMatrix target_ctrb_matrix(const SystemTriple& t, std::size_t horizon) {
  std::vector<RatMatrix> blocks = krylov_blocks(t, horizon);
  for (auto& b : blocks) b = mat_mul(t.h, b);
  if (blocks.empty()) return RatMatrix(t.p(), 0);
  return hstack(blocks);
}

inline RatMatrix target_ctrb_matrix(const SystemTriple& t) { return target_ctrb_matrix(t, t.n()); }

struct TargetControllability {
  bool controllable = false;
  std::size_t dim = 0;  // dimension of the target controllable subspace, rank W
  std::size_t p = 0;
};

inline TargetControllability target_controllable(const SystemTriple& t) {
  TargetControllability r;
  r.dim = rat_rank(target_ctrb_matrix(t));
  r.p = t.p();
  r.controllable = r.dim == r.p;
  return r;
}

}  // namespace netctrl
