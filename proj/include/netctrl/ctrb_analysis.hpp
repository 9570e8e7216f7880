#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "netctrl/ctrb_matrix.hpp"
#include "netctrl/exact_rank.hpp"
#include "netctrl/float_linalg.hpp"
#include "netctrl/graph.hpp"

namespace netctrl {

/// x_hat = P x splits the state into a controllable part of dimension kappa
/// and an uncontrollable remainder. P^{-1} = [P1 P2] where P1 holds the
/// first kappa independent columns of Q (scanned left to right) and P2 the
/// lowest-index standard basis vectors completing a basis.
struct KalmanDecomposition {
  std::size_t kappa = 0;
  RatMatrix p1;     // n x kappa
  RatMatrix p_inv;  // [P1 P2]
  RatMatrix p;      // inverse of p_inv
  RatMatrix a_hat;  // P A P^{-1}
  RatMatrix b_hat;  // P B
  RatMatrix h_hat;  // H P^{-1}
  RatMatrix a_c, a_12, a_cbar, b_c, h_c, h_cbar;
};

inline KalmanDecomposition kalman_decompose(const SystemTriple& t) {
  const std::size_t n = t.n();
  KalmanDecomposition d;
  const RatMatrix q = ctrb_matrix(t);

  RowBasis basis(n);
  std::vector<std::size_t> picked;
  std::vector<Rational> col(n);
  for (std::size_t j = 0; j < q.cols() && basis.size() < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = q(i, j);
    if (basis.add(col)) picked.push_back(j);
  }
  d.kappa = picked.size();
  d.p1 = q.select_cols(picked);

  d.p_inv = RatMatrix(n, n);
  d.p_inv.set_block(0, 0, d.p1);
  std::size_t next = d.kappa;
  for (std::size_t i = 0; i < n && next < n; ++i) {
    std::fill(col.begin(), col.end(), Rational(0));
    col[i] = 1;
    if (basis.add(col)) d.p_inv(i, next++) = 1;
  }
  d.p = inverse(d.p_inv);
  d.a_hat = d.p * t.a * d.p_inv;
  d.b_hat = d.p * t.b;
  d.h_hat = t.h * d.p_inv;

  const std::size_t k = d.kappa, u = n - k;
  d.a_c = d.a_hat.block(0, 0, k, k);
  d.a_12 = d.a_hat.block(0, k, k, u);
  d.a_cbar = d.a_hat.block(k, k, u, u);
  d.b_c = d.b_hat.block(0, 0, k, t.l());
  d.h_c = d.h_hat.block(0, 0, t.p(), k);
  d.h_cbar = d.h_hat.block(0, k, t.p(), u);
  return d;
}

/// Checks the exact identities a decomposition must satisfy: P P^{-1} = I,
/// zero block below A_c, zero rows of P B past kappa, and (A_c, B_c)
/// controllable.
inline bool kalman_identities_hold(const KalmanDecomposition& d, const SystemTriple& t) {
  const std::size_t n = t.n(), k = d.kappa;
  if (d.p * d.p_inv != RatMatrix::identity(n)) return false;
  if (!d.a_hat.block(k, 0, n - k, k).is_zero()) return false;
  if (!d.b_hat.block(k, 0, n - k, t.l()).is_zero()) return false;
  if (k == 0) return true;
  const SystemTriple reduced(d.a_c, d.b_c, RatMatrix::identity(k));
  return rat_rank(ctrb_matrix(reduced)) == k;
}

struct RowSetEnumeration {
  std::vector<std::vector<std::size_t>> sets;  // ascending row indices, lexicographic order
  bool truncated = false;
};

/// All `count`-row subsets of m with rank `count`, lexicographic, at most `cap`.
inline RowSetEnumeration independent_row_sets(const RatMatrix& m, std::size_t count, std::size_t cap) {
  RowSetEnumeration out;
  if (count == 0 || count > m.rows() || count > m.cols() || cap == 0) return out;
  std::vector<std::size_t> chosen;
  bool stop = false;

  auto dfs = [&](auto&& self, std::size_t start, const RowBasis& basis) -> void {
    if (chosen.size() == count) {
      if (out.sets.size() == cap) {
        out.truncated = true;
        stop = true;
        return;
      }
      out.sets.push_back(chosen);
      return;
    }
    for (std::size_t i = start; i + (count - chosen.size()) <= m.rows() && !stop; ++i) {
      RowBasis grown = basis;
      if (!grown.add(m.row(i))) continue;
      chosen.push_back(i);
      self(self, i + 1, grown);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0, RowBasis(m.cols()));
  return out;
}

/// Maximal linearly independent row groups of P1 (size kappa = rank P1).
inline RowSetEnumeration max_independent_row_sets(const RatMatrix& p1, std::size_t cap) {
  if (cap < 1) throw DimensionError("max_independent_row_sets: cap must be at least 1");
  return independent_row_sets(p1, rat_rank(p1), cap);
}

/// Node labels selected by a 0/1 selection matrix, or nullopt when h is not one.
inline std::optional<std::vector<std::size_t>> selected_labels(const RatMatrix& h) {
  std::vector<std::size_t> labels;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::optional<std::size_t> hit;
    for (std::size_t j = 0; j < h.cols(); ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, j) != 1 || hit) return std::nullopt;
      hit = j;
    }
    if (!hit) return std::nullopt;
    labels.push_back(*hit);
  }
  return labels;
}

struct Theorem2Result {
  bool admissible = false;
  std::size_t kappa = 0;
  std::size_t selected_rows_rank = 0;  // rank of P1 rows at the target labels
  std::size_t hc_rank = 0;             // rank of H_c
  std::size_t w_rank = 0;              // rank of W
};

/// Target rows of P1 versus H_c versus W: all three must agree on whether
/// the rank reaches p.
inline Theorem2Result theorem2_check(const SystemTriple& t) {
  Theorem2Result r;
  const KalmanDecomposition d = kalman_decompose(t);
  r.kappa = d.kappa;
  const RatMatrix rows =
      selected_labels(t.h) ? d.p1.select_rows(*selected_labels(t.h)) : mat_mul(t.h, d.p1);
  r.selected_rows_rank = rat_rank(rows);
  r.hc_rank = rat_rank(d.h_c);
  r.w_rank = rat_rank(target_ctrb_matrix(t));
  const std::size_t p = t.p();
  r.admissible = r.selected_rows_rank == p;
  if (r.admissible != (r.hc_rank == p) || r.admissible != (r.w_rank == p))
    throw ConsistencyError("row selection of P1, rank H_c and rank W disagree");
  return r;
}

inline double inf_norm(const FloatMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

struct EigenCluster {
  Complex lambda;  // cluster mean
  std::size_t multiplicity = 0;
};

/// Eigenvalues of a grouped by single linkage within tol * max(||a||_inf, 1).
inline std::vector<EigenCluster> eigen_clusters(const FloatMatrix& a, double tol) {
  if (!(tol > 0)) throw NumericError("eigen_clusters: tolerance must be positive");
  std::vector<Complex> vals = eigenvalues(a);
  std::sort(vals.begin(), vals.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  const double radius = tol * std::max(inf_norm(a), 1.0);
  std::vector<std::size_t> parent(vals.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j)
      if (std::abs(vals[i] - vals[j]) <= radius) parent[find(j)] = find(i);

  std::vector<EigenCluster> out;
  std::vector<std::size_t> slot(vals.size(), vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const std::size_t root = find(i);
    if (slot[root] == vals.size()) {
      slot[root] = out.size();
      out.push_back({Complex(0, 0), 0});
    }
    auto& c = out[slot[root]];
    c.lambda += vals[i];
    ++c.multiplicity;
  }
  for (auto& c : out) c.lambda /= static_cast<double>(c.multiplicity);
  return out;
}

/// H [lambda I - A, B] for a complex lambda.
inline ComplexMatrix pbh_matrix(const FloatMatrix& a, const FloatMatrix& b, const FloatMatrix& h, Complex lambda) {
  const Eigen::Index n = a.rows();
  ComplexMatrix m(n, n + b.cols());
  m.leftCols(n) = lambda * ComplexMatrix::Identity(n, n) - a.cast<Complex>();
  m.rightCols(b.cols()) = b.cast<Complex>();
  return h.cast<Complex>() * m;
}

struct PbhEntry {
  Complex lambda;
  std::size_t multiplicity = 0;
  std::size_t rank = 0;
  bool pass = false;
};

struct NumericTolerances {
  double eig = 1e-8;   // eigenvalue clustering, relative to max(||A||, 1)
  double rank = 1e-9;  // singular value cut-off, relative to max(sigma_max, 1)
};

/// Necessary condition: rank H [lambda I - A, B] = p at every eigenvalue.
/// Numeric and advisory; the exact rank of W remains the binding verdict.
inline std::vector<PbhEntry> pbh_target_check(const SystemTriple& t, NumericTolerances tol = {}) {
  const FloatMatrix a = to_float(t.a), b = to_float(t.b), h = to_float(t.h);
  std::vector<PbhEntry> out;
  for (const auto& c : eigen_clusters(a, tol.eig)) {
    const ComplexMatrix m = pbh_matrix(a, b, h, c.lambda);
    const std::size_t r = static_cast<std::size_t>(m.cols()) - static_cast<std::size_t>(null_space(m, tol.rank).cols());
    const std::size_t rank = std::min(r, t.p());
    out.push_back({c.lambda, c.multiplicity, rank, rank == t.p()});
  }
  return out;
}

inline bool pbh_all_pass(const std::vector<PbhEntry>& entries) {
  return std::all_of(entries.begin(), entries.end(), [](const PbhEntry& e) { return e.pass; });
}

/// A left eigenvector theta of A living on the target coordinates with
/// theta^T B = 0. Its existence rules out target controllability.
struct ObstructionCertificate {
  Complex lambda;
  ComplexVector theta;
  double eigen_residual = 0;  // ||theta^T A - lambda theta^T||_inf / ||theta||_inf
  double input_residual = 0;  // ||theta^T B||_inf / ||theta||_inf
};

/// Searches theta = H^T q over the whole left null space of A - lambda I at
/// each eigenvalue cluster, so combinations across a repeated eigenvalue are
/// found as well.
inline std::optional<ObstructionCertificate> left_eigen_obstruction(const SystemTriple& t, NumericTolerances tol = {}) {
  const FloatMatrix a = to_float(t.a), b = to_float(t.b), h = to_float(t.h);
  const Eigen::Index n = a.rows(), l = b.cols(), p = h.rows();
  const ComplexMatrix hc = h.cast<Complex>();
  for (const auto& c : eigen_clusters(a, tol.eig)) {
    // q^T H (A - lambda I) = 0 and q^T H B = 0, stacked as a system in q.
    ComplexMatrix m(n + l, p);
    m.topRows(n) = (a.cast<Complex>() - c.lambda * ComplexMatrix::Identity(n, n)).transpose() * hc.transpose();
    m.bottomRows(l) = b.cast<Complex>().transpose() * hc.transpose();
    const ComplexMatrix ker = null_space(m, tol.rank);
    for (Eigen::Index k = 0; k < ker.cols(); ++k) {
      ComplexVector theta = hc.transpose() * ker.col(k);
      const double scale = theta.cwiseAbs().maxCoeff();
      if (scale <= tol.rank) continue;
      theta /= scale;
      ObstructionCertificate cert;
      cert.lambda = c.lambda;
      cert.eigen_residual =
          (theta.transpose() * a.cast<Complex>() - c.lambda * theta.transpose()).cwiseAbs().maxCoeff();
      cert.input_residual = l ? (theta.transpose() * b.cast<Complex>()).cwiseAbs().maxCoeff() : 0.0;
      cert.theta = std::move(theta);
      return cert;
    }
  }
  return std::nullopt;
}

/// Eigenvalues paired with left eigenvectors (rows of left_vectors).
struct SpectralData {
  std::vector<Complex> values;
  ComplexMatrix left_vectors;
};

inline SpectralData spectral_data(const FloatMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("spectral_data: matrix not square");
  require_finite(a, "spectral_data");
  Eigen::EigenSolver<FloatMatrix> es(a.transpose());
  if (es.info() != Eigen::Success) throw NumericError("spectral_data: eigen solver did not converge");
  SpectralData s;
  for (Eigen::Index i = 0; i < a.rows(); ++i) s.values.push_back(es.eigenvalues()(i));
  s.left_vectors = es.eigenvectors().transpose();
  return s;
}

}  // namespace netctrl
