#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "netctrl/ctrb_analysis.hpp"
#include "netctrl/ctrb_matrix.hpp"
#include "netctrl/float_linalg.hpp"
#include "netctrl/graph.hpp"
#include "netctrl/strong_components.hpp"

namespace netctrl {

/// m-th order agents x^(m) = A x + B u written as a first-order system of
/// dimension n*m: identity blocks on the super-diagonal, A in the bottom-left
/// block, inputs entering the last block and outputs read from the first.
inline SystemTriple lift_high_order(const SystemTriple& t, std::size_t m_order) {
  if (m_order < 1) throw DimensionError("lift_high_order: order must be at least 1");
  if (m_order == 1) return t;
  const std::size_t n = t.n(), big = n * m_order;
  RatMatrix a(big, big), b(big, t.l()), h(t.p(), big);
  const RatMatrix eye = RatMatrix::identity(n);
  for (std::size_t k = 0; k + 1 < m_order; ++k) a.set_block(k * n, (k + 1) * n, eye);
  a.set_block((m_order - 1) * n, 0, t.a);
  b.set_block((m_order - 1) * n, 0, t.b);
  h.set_block(0, 0, t.h);
  return SystemTriple(std::move(a), std::move(b), std::move(h));
}

struct Theorem3Result {
  std::size_t rank_first = 0;
  std::size_t rank_lifted = 0;
  bool equal = false;
};

/// Target controllability rank of the first-order system versus its m-th
/// order lift (horizon n*m). A mismatch is a hard failure.
inline Theorem3Result theorem3_check(const SystemTriple& t, std::size_t m_order) {
  Theorem3Result r;
  r.rank_first = rat_rank(target_ctrb_matrix(t));
  r.rank_lifted = rat_rank(target_ctrb_matrix(lift_high_order(t, m_order), t.n() * m_order));
  r.equal = r.rank_first == r.rank_lifted;
  if (!r.equal) throw ConsistencyError("lifted system changes the target controllability rank");
  return r;
}

/// In the lift, H A^k B vanishes unless k = m-1 (mod m).
inline bool lifted_zero_structure_holds(const SystemTriple& t, std::size_t m_order) {
  const SystemTriple lifted = lift_high_order(t, m_order);
  const auto blocks = krylov_blocks(lifted, lifted.n());
  for (std::size_t k = 0; k < blocks.size(); ++k)
    if (k % m_order != m_order - 1 && !mat_mul(lifted.h, blocks[k]).is_zero()) return false;
  return true;
}

/// Agent dynamics x_i' = A x_i + M z_i with z_i = K-coupled relative
/// measurements and inputs through N. sigma_z is read off M and K.
struct GeneralLinearSpec {
  std::size_t sigma = 0;
  RatMatrix a_tilde;  // sigma x sigma
  RatMatrix m;        // sigma x sigma_z
  RatMatrix n_mat;    // sigma x l_u
  RatMatrix k;        // sigma_z x sigma

  void validate() const {
    if (sigma == 0) throw DimensionError("general-linear spec: sigma must be positive");
    if (a_tilde.rows() != sigma || a_tilde.cols() != sigma)
      throw DimensionError("general-linear spec: A must be sigma x sigma");
    if (m.rows() != sigma || m.cols() == 0) throw DimensionError("general-linear spec: M must have sigma rows");
    if (k.rows() != m.cols() || k.cols() != sigma)
      throw DimensionError("general-linear spec: K must be sigma_z x sigma with sigma_z = columns of M");
    if (n_mat.rows() != sigma || n_mat.cols() == 0)
      throw DimensionError("general-linear spec: N must have sigma rows");
  }

  /// sigma = 1, A = 0, M = N = K = 1: the plain first-order network.
  static GeneralLinearSpec first_order() {
    return {1, RatMatrix(1, 1), RatMatrix{{1}}, RatMatrix{{1}}, RatMatrix{{1}}};
  }
};

namespace detail {

inline Rational json_rational(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Rational(BigInt(std::to_string(v.get<std::uint64_t>())));
    return Rational(BigInt(std::to_string(v.get<std::int64_t>())));
  }
  if (v.is_number_float()) {
    if (auto q = rational_from_double(v.get<double>())) return *q;
  } else if (v.is_string()) {
    if (auto q = try_parse_rational(v.get<std::string>())) return *q;
  }
  throw Error("general-linear spec: " + where + " is not a finite number or rational string");
}

inline RatMatrix json_matrix(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(std::string("general-linear spec: missing \"") + key + "\"");
  const auto& rows = doc.at(key);
  if (!rows.is_array() || rows.empty() || !rows[0].is_array())
    throw Error(std::string("general-linear spec: \"") + key + "\" must be a nonempty array of rows");
  const std::size_t cols = rows[0].size();
  RatMatrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols)
      throw DimensionError(std::string("general-linear spec: \"") + key + "\" rows differ in length");
    for (std::size_t j = 0; j < cols; ++j)
      out(i, j) = json_rational(rows[i][j], std::string(key) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }
  return out;
}

}  // namespace detail

/// Reads {"sigma": s, "A": [[..]], "M": [[..]], "N": [[..]], "K": [[..]]}.
/// Entries may be JSON numbers or strings such as "3/4".
inline GeneralLinearSpec parse_general_linear(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, e.byte, "general-linear spec is not valid JSON");
  }
  if (!doc.is_object()) throw Error("general-linear spec: top level must be an object");
  if (!doc.contains("sigma") || !doc["sigma"].is_number_unsigned())
    throw Error("general-linear spec: \"sigma\" must be a positive integer");
  GeneralLinearSpec s;
  s.sigma = doc["sigma"].get<std::size_t>();
  s.a_tilde = detail::json_matrix(doc, "A");
  s.m = detail::json_matrix(doc, "M");
  s.n_mat = detail::json_matrix(doc, "N");
  s.k = detail::json_matrix(doc, "K");
  s.validate();
  return s;
}

/// A = I_n (x) A~ - L (x) MK, B = B (x) N, H = H (x) I_sigma.
inline SystemTriple general_linear_triple(const Graph& g, const GeneralLinearSpec& s) {
  s.validate();
  const SystemTriple base = system_triple(g);
  const RatMatrix mk = mat_mul(s.m, s.k);
  RatMatrix a = kron(RatMatrix::identity(g.size()), s.a_tilde) - kron(laplacian(g), mk);
  return SystemTriple(std::move(a), kron(base.b, s.n_mat), kron(base.h, RatMatrix::identity(s.sigma)));
}

struct SccReport {
  std::vector<std::vector<std::size_t>> components;  // ordered by smallest member
  std::vector<bool> independent;
  std::vector<std::vector<std::size_t>> follower_subgraph_components;
  std::vector<bool> follower_independent;
  std::vector<std::size_t> target_only_independent;     // indices into follower_subgraph_components
  std::vector<bool> target_only_has_leader_edge;        // parallel to target_only_independent
  bool ltf_connected = false;
  std::string reason;  // "ltf-connected", "no-leader-edge" or "no-target-only-iscc"
};

namespace detail {

/// Components of the subgraph induced by `nodes` (ascending), in original
/// ids, ordered by smallest member, plus their independence flags.
inline std::pair<std::vector<std::vector<std::size_t>>, std::vector<bool>> induced_components(
    const Graph& g, const std::vector<std::size_t>& nodes) {
  std::vector<std::size_t> local(g.size(), g.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) local[nodes[k]] = k;
  std::vector<std::vector<std::size_t>> succ(nodes.size());
  for (const Edge& e : g.edges())
    if (local[e.from] < nodes.size() && local[e.to] < nodes.size()) succ[local[e.from]].push_back(local[e.to]);

  auto comps = strong_components(succ);
  for (auto& c : comps)
    for (auto& v : c) v = nodes[v];
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

  std::vector<std::size_t> comp_of(g.size(), comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::size_t v : comps[c]) comp_of[v] = c;
  std::vector<bool> independent(comps.size(), true);
  for (const Edge& e : g.edges()) {
    const std::size_t cf = comp_of[e.from], ct = comp_of[e.to];
    if (cf < comps.size() && ct < comps.size() && cf != ct) independent[ct] = false;
  }
  return {std::move(comps), std::move(independent)};
}

}  // namespace detail

inline SccReport scc_analyze(const Graph& g) {
  SccReport r;
  std::vector<std::size_t> all(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) all[v] = v;
  std::tie(r.components, r.independent) = detail::induced_components(g, all);
  std::tie(r.follower_subgraph_components, r.follower_independent) = detail::induced_components(g, g.followers());

  for (std::size_t c = 0; c < r.follower_subgraph_components.size(); ++c) {
    const auto& comp = r.follower_subgraph_components[c];
    if (!r.follower_independent[c]) continue;
    if (!std::all_of(comp.begin(), comp.end(), [&](std::size_t v) { return g.is_target(v); })) continue;
    const bool fed = std::any_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
      return g.is_leader(e.from) && std::binary_search(comp.begin(), comp.end(), e.to);
    });
    r.target_only_independent.push_back(c);
    r.target_only_has_leader_edge.push_back(fed);
    r.ltf_connected = r.ltf_connected || fed;
  }
  if (r.target_only_independent.empty())
    r.reason = "no-target-only-iscc";
  else
    r.reason = r.ltf_connected ? "ltf-connected" : "no-leader-edge";
  return r;
}

enum class Prop5Verdict { NotTargetControllable, Inconclusive };

inline const char* to_string(Prop5Verdict v) {
  return v == Prop5Verdict::NotTargetControllable ? "NOT_TARGET_CONTROLLABLE" : "INCONCLUSIVE";
}

/// Left eigenvector of the full system matrix supported on one follower
/// component with no incoming edges at all.
struct SccCertificate {
  std::vector<std::size_t> component;
  Complex lambda;
  ComplexVector theta;  // normalised to unit max-norm
  double eigen_residual = 0;
  double input_residual = 0;
};

struct Prop5Result {
  bool precondition_holds = false;
  bool ltf_connected = false;
  Prop5Verdict verdict = Prop5Verdict::Inconclusive;
  std::string reason;
  std::optional<SccCertificate> certificate;  // set with a NOT verdict
  std::optional<std::size_t> exact_rank;      // rank W of the analysed system
  std::size_t p = 0;                          // its output dimension
};

/// A component C with no incoming edges has Laplacian rows supported on C,
/// so a left eigenvector w of I (x) A~ - L_CC (x) MK, padded with zeros, is a
/// left eigenvector of the whole system matrix. No leader lies in C, hence
/// it is also orthogonal to the inputs.
inline SccCertificate scc_certificate(const Graph& g, const GeneralLinearSpec& s,
                                      const std::vector<std::size_t>& comp) {
  const SystemTriple full = general_linear_triple(g, s);
  const FloatMatrix a = to_float(full.a), b = to_float(full.b);
  const std::size_t sigma = s.sigma;
  const auto dim = static_cast<Eigen::Index>(comp.size() * sigma);
  FloatMatrix sub(dim, dim);
  for (std::size_t i = 0; i < comp.size(); ++i)
    for (std::size_t j = 0; j < comp.size(); ++j)
      sub.block(static_cast<Eigen::Index>(i * sigma), static_cast<Eigen::Index>(j * sigma),
                static_cast<Eigen::Index>(sigma), static_cast<Eigen::Index>(sigma)) =
          a.block(static_cast<Eigen::Index>(comp[i] * sigma), static_cast<Eigen::Index>(comp[j] * sigma),
                  static_cast<Eigen::Index>(sigma), static_cast<Eigen::Index>(sigma));
  const SpectralData spec = spectral_data(sub);

  std::optional<SccCertificate> best;
  for (std::size_t e = 0; e < spec.values.size(); ++e) {
    ComplexVector theta = ComplexVector::Zero(a.rows());
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::size_t q = 0; q < sigma; ++q)
        theta(static_cast<Eigen::Index>(comp[i] * sigma + q)) =
            spec.left_vectors(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(i * sigma + q));
    theta /= theta.cwiseAbs().maxCoeff();
    SccCertificate c{comp, spec.values[e], theta, 0, 0};
    c.eigen_residual = (theta.transpose() * a.cast<Complex>() - c.lambda * theta.transpose()).cwiseAbs().maxCoeff();
    c.input_residual = b.cols() ? (theta.transpose() * b.cast<Complex>()).cwiseAbs().maxCoeff() : 0.0;
    if (!best || c.eigen_residual < best->eigen_residual) best = std::move(c);
  }
  return *best;
}

/// Structural necessary condition on the follower subgraph. A NOT verdict is
/// issued when some target-only independent follower component receives no
/// leader edge; this covers the case where no such component is fed at all.
/// With `exact`, rank W of the analysed system (general-linear when a spec is
/// given) is computed and must confirm every NOT verdict.
inline Prop5Result prop5_check(const Graph& g, const std::optional<GeneralLinearSpec>& spec = std::nullopt,
                               bool exact = true) {
  const SccReport scc = scc_analyze(g);
  Prop5Result r;
  r.precondition_holds = !scc.target_only_independent.empty();
  r.ltf_connected = scc.ltf_connected;
  r.reason = scc.reason;
  const GeneralLinearSpec s = spec.value_or(GeneralLinearSpec::first_order());
  r.p = g.targets().size() * s.sigma;

  for (std::size_t k = 0; k < scc.target_only_independent.size(); ++k) {
    if (scc.target_only_has_leader_edge[k]) continue;
    r.verdict = Prop5Verdict::NotTargetControllable;
    r.reason = "no-leader-edge";
    r.certificate = scc_certificate(g, s, scc.follower_subgraph_components[scc.target_only_independent[k]]);
    break;
  }
  if (exact) {
    r.exact_rank = rat_rank(target_ctrb_matrix(general_linear_triple(g, s)));
    if (r.verdict == Prop5Verdict::NotTargetControllable && *r.exact_rank == r.p)
      throw ConsistencyError("unfed target-only component, yet W has full row rank");
  }
  return r;
}

}  // namespace netctrl
