#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "netctrl/ctrb_analysis.hpp"
#include "netctrl/equitable_partition.hpp"
#include "netctrl/extensions.hpp"
#include "netctrl/reachability.hpp"

// JSON views of analysis results. Node ids are 1-based, complex numbers are
// [re, im] pairs and exact matrices are arrays of rational strings.
namespace netctrl::report {

using nlohmann::json;

inline constexpr int schema_version = 1;
inline constexpr const char* tool_version = "0.1.0";

inline json ids(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (std::size_t x : v) out.push_back(x + 1);
  return out;
}

inline json id_sets(const std::vector<std::vector<std::size_t>>& sets) {
  json out = json::array();
  for (const auto& s : sets) out.push_back(ids(s));
  return out;
}

inline json complex_value(Complex z) { return json::array({z.real(), z.imag()}); }

inline json complex_vector(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_value(v(i)));
  return out;
}

inline json matrix(const RatMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline json bools(const std::vector<bool>& v) {
  json out = json::array();
  for (bool b : v) out.push_back(b);
  return out;
}

template <typename T>
json optional_value(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

inline json header(const std::string& command) {
  return {{"schema", schema_version}, {"tool_version", tool_version}, {"command", command}};
}

inline json graph_summary(const Graph& g) {
  return {{"n", g.size()}, {"edges", g.edges().size()}, {"leaders", ids(g.leaders())}, {"targets", ids(g.targets())}};
}

inline json reachability(const ReachabilityReport& r, const std::optional<Prop1Result>& prop1) {
  json classes = json::object();
  for (const auto& [delta, nodes] : r.classes) classes[std::to_string(delta)] = ids(nodes);
  json out = {{"classes", classes},
              {"unreachable", ids(r.unreachable)},
              {"unreachable_targets", ids(r.unreachable_targets)}};
  if (prop1) {
    out["w_zero_rows"] = ids(prop1->w_zero_rows);
    out["dim_upper_bound"] = prop1->dim_upper_bound;
  }
  return out;
}

inline json partition(const Theorem1Verdict& v) {
  return {{"cells", id_sets(v.partition.cells())},
          {"applicable", v.applicable},
          {"cell_target_counts", v.cell_target_counts},
          {"has_unreachable_target", v.has_unreachable_target},
          {"controllable", optional_value(v.controllable)},
          {"rank_cross_check", optional_value(v.rank_cross_check)},
          {"p", v.p}};
}

inline json rank(const TargetControllability& tc) {
  return {{"dim", tc.dim}, {"p", tc.p}, {"controllable", tc.controllable}};
}

inline json row_sets(const RowSetEnumeration& e) {
  return {{"sets", id_sets(e.sets)}, {"truncated", e.truncated}};
}

inline json theorem2(const Theorem2Result& r) {
  return {{"admissible", r.admissible},
          {"kappa", r.kappa},
          {"selected_rows_rank", r.selected_rows_rank},
          {"hc_rank", r.hc_rank},
          {"w_rank", r.w_rank}};
}

inline json pbh(const std::vector<PbhEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries)
    out.push_back({{"lambda", complex_value(e.lambda)},
                   {"multiplicity", e.multiplicity},
                   {"rank", e.rank},
                   {"pass", e.pass}});
  return out;
}

inline json obstruction(const std::optional<ObstructionCertificate>& c) {
  if (!c) return nullptr;
  return {{"lambda", complex_value(c->lambda)},
          {"theta", complex_vector(c->theta)},
          {"eigen_residual", c->eigen_residual},
          {"input_residual", c->input_residual}};
}

inline json scc(const SccReport& r) {
  json target_only = json::array();
  for (std::size_t k = 0; k < r.target_only_independent.size(); ++k)
    target_only.push_back({{"nodes", ids(r.follower_subgraph_components[r.target_only_independent[k]])},
                           {"leader_edge", static_cast<bool>(r.target_only_has_leader_edge[k])}});
  return {{"components", id_sets(r.components)},
          {"independent", bools(r.independent)},
          {"follower_subgraph_components", id_sets(r.follower_subgraph_components)},
          {"follower_independent", bools(r.follower_independent)},
          {"target_only_independent", target_only},
          {"ltf_connected", r.ltf_connected},
          {"reason", r.reason}};
}

inline json prop5(const Prop5Result& r) {
  json cert = nullptr;
  if (r.certificate)
    cert = {{"component", ids(r.certificate->component)},
            {"lambda", complex_value(r.certificate->lambda)},
            {"theta", complex_vector(r.certificate->theta)},
            {"eigen_residual", r.certificate->eigen_residual},
            {"input_residual", r.certificate->input_residual}};
  return {{"precondition_holds", r.precondition_holds},
          {"ltf_connected", r.ltf_connected},
          {"verdict", to_string(r.verdict)},
          {"reason", r.reason},
          {"certificate", cert},
          {"exact_rank", optional_value(r.exact_rank)},
          {"p", r.p}};
}

inline json theorem3(const Theorem3Result& r, std::size_t m_order, bool zero_structure) {
  return {{"order", m_order},
          {"rank_first", r.rank_first},
          {"rank_lifted", r.rank_lifted},
          {"equal", r.equal},
          {"zero_structure", zero_structure}};
}

inline json kalman(const KalmanDecomposition& d) {
  return {{"kappa", d.kappa},
          {"p1", matrix(d.p1)},
          {"p_inv", matrix(d.p_inv)},
          {"p", matrix(d.p)},
          {"a_c", matrix(d.a_c)},
          {"a_12", matrix(d.a_12)},
          {"a_cbar", matrix(d.a_cbar)},
          {"b_c", matrix(d.b_c)},
          {"h_c", matrix(d.h_c)},
          {"h_cbar", matrix(d.h_cbar)}};
}

}  // namespace netctrl::report
