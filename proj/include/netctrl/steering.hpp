#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "netctrl/errors.hpp"
#include "netctrl/extensions.hpp"
#include "netctrl/float_linalg.hpp"
#include "netctrl/graph.hpp"

namespace netctrl {

/// W_o = H (int_0^tf e^{As} B B^T e^{A^T s} ds) H^T.
///
/// Van Loan: for F = expm([[-A, B B^T], [0, A^T]] tf) the controllability
/// Gramian is F22^T F12.
inline FloatMatrix output_gramian(const FloatMatrix& a, const FloatMatrix& b, const FloatMatrix& h, double tf) {
  if (!(tf > 0) || !std::isfinite(tf)) throw NumericError("output_gramian: horizon must be finite and positive");
  if (a.rows() != a.cols() || b.rows() != a.rows() || h.cols() != a.rows())
    throw DimensionError("output_gramian: inconsistent dimensions");
  const Eigen::Index n = a.rows();
  FloatMatrix m = FloatMatrix::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = -a;
  m.topRightCorner(n, n) = b * b.transpose();
  m.bottomRightCorner(n, n) = a.transpose();
  const FloatMatrix f = expm(m * tf);
  const FloatMatrix wc = f.bottomRightCorner(n, n).transpose() * f.topRightCorner(n, n);
  const FloatMatrix wo = h * wc * h.transpose();
  return 0.5 * (wo + wo.transpose());
}

inline FloatMatrix output_gramian(const SystemTriple& t, double tf) {
  return output_gramian(to_float(t.a), to_float(t.b), to_float(t.h), tf);
}

struct SteeringProblem {
  SystemTriple triple;
  FloatVector x0;
  FloatVector yf;
  double tf = 1.0;
  std::size_t steps = 2000;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<FloatVector> states;
  std::vector<FloatVector> inputs;
  std::vector<FloatVector> outputs;
  double terminal_error = 0;
  double gramian_condition = 0;
};

/// Largest tolerated condition number of W_o.
inline constexpr double max_gramian_condition = 1e12;

/// Minimum-energy open-loop steering of y = H x to yf at tf,
///   u(t) = B^T e^{A^T (tf - t)} H^T W_o^{-1} (yf - H e^{A tf} x0),
/// integrated with fixed-step RK4 on the grid t_k = tf k / (steps - 1).
inline Trajectory steer(const SteeringProblem& p) {
  const FloatMatrix a = to_float(p.triple.a), b = to_float(p.triple.b), h = to_float(p.triple.h);
  const Eigen::Index n = a.rows();
  if (p.x0.size() != n) throw DimensionError("steer: x0 length differs from state dimension");
  if (p.yf.size() != h.rows()) throw DimensionError("steer: yf length differs from output dimension");
  if (p.steps < 2) throw DimensionError("steer: at least two samples are needed");
  require_finite(p.x0, "steer x0");
  require_finite(p.yf, "steer yf");

  Trajectory tr;
  const FloatMatrix wo = output_gramian(a, b, h, p.tf);
  Eigen::JacobiSVD<FloatMatrix> svd(wo, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smin = s.size() ? s(s.size() - 1) : 0.0;
  tr.gramian_condition = smin > 0 ? s(0) / smin : std::numeric_limits<double>::infinity();
  if (!(tr.gramian_condition <= max_gramian_condition)) {
    char msg[160];
    std::snprintf(msg, sizeof msg, "output Gramian is singular or ill-conditioned (condition %.3g > %.0e)",
                  tr.gramian_condition, max_gramian_condition);
    throw SteeringError(msg, tr.gramian_condition);
  }
  const FloatVector eta = svd.solve(p.yf - h * (expm(a * p.tf) * p.x0));

  const std::size_t steps = p.steps;
  const double dt = p.tf / static_cast<double>(steps - 1);
  // Costate z(t) = e^{A^T (tf - t)} H^T eta at the grid points and midpoints,
  // propagated backwards from tf with a half-step exponential.
  const FloatMatrix half = expm(a.transpose() * (dt / 2));
  std::vector<FloatVector> at(steps), mid(steps - 1);
  at[steps - 1] = h.transpose() * eta;
  for (std::size_t k = steps - 1; k-- > 0;) {
    mid[k] = half * at[k + 1];
    at[k] = half * mid[k];
  }
  const FloatMatrix bt = b.transpose();

  tr.times.resize(steps);
  tr.states.resize(steps);
  tr.inputs.resize(steps);
  tr.outputs.resize(steps);
  FloatVector x = p.x0;
  for (std::size_t k = 0; k < steps; ++k) {
    tr.times[k] = k + 1 == steps ? p.tf : p.tf * static_cast<double>(k) / static_cast<double>(steps - 1);
    tr.states[k] = x;
    tr.inputs[k] = bt * at[k];
    tr.outputs[k] = h * x;
    if (k + 1 == steps) break;
    const FloatVector f_mid = b * (bt * mid[k]);
    const FloatVector k1 = a * x + b * tr.inputs[k];
    const FloatVector k2 = a * (x + dt / 2 * k1) + f_mid;
    const FloatVector k3 = a * (x + dt / 2 * k2) + f_mid;
    const FloatVector k4 = a * (x + dt * k3) + b * (bt * at[k + 1]);
    x += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  tr.terminal_error = (tr.outputs.back() - p.yf).norm();
  return tr;
}

/// Steering of the m-th order network. x0 may give positions only (length
/// n, higher derivatives start at zero) or the full lifted state (n*m).
inline Trajectory simulate_high_order(const SteeringProblem& p, std::size_t m_order) {
  SteeringProblem lifted = p;
  lifted.triple = lift_high_order(p.triple, m_order);
  const Eigen::Index n = static_cast<Eigen::Index>(p.triple.n());
  const Eigen::Index big = static_cast<Eigen::Index>(lifted.triple.n());
  if (p.x0.size() == n && big != n) {
    lifted.x0 = FloatVector::Zero(big);
    lifted.x0.head(n) = p.x0;
  } else if (p.x0.size() != big) {
    throw DimensionError("simulate_high_order: x0 must have length n or n*m");
  }
  return steer(lifted);
}

/// Header t,x1..xn,u1..ul,y1..yp, one row per sample at 17 significant
/// digits, then a "# terminal_error=" comment line.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  if (tr.states.empty()) throw DimensionError("write_trajectory_csv: empty trajectory");
  char buf[40];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << ',' << buf;
  };
  os << 't';
  for (Eigen::Index i = 0; i < tr.states[0].size(); ++i) os << ",x" << i + 1;
  for (Eigen::Index i = 0; i < tr.inputs[0].size(); ++i) os << ",u" << i + 1;
  for (Eigen::Index i = 0; i < tr.outputs[0].size(); ++i) os << ",y" << i + 1;
  os << '\n';
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", tr.times[k]);
    os << buf;
    for (double v : tr.states[k]) put(v);
    for (double v : tr.inputs[k]) put(v);
    for (double v : tr.outputs[k]) put(v);
    os << '\n';
  }
  std::snprintf(buf, sizeof buf, "%.17g", tr.terminal_error);
  os << "# terminal_error=" << buf << '\n';
}

}  // namespace netctrl
