#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "netctrl/errors.hpp"
#include "netctrl/rat_matrix.hpp"
#include "netctrl/strong_components.hpp"

namespace netctrl {

using FloatMatrix = Eigen::MatrixXd;
using FloatVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* where) {
  if (!m.allFinite()) throw NumericError(std::string(where) + ": non-finite entry");
}

inline FloatMatrix to_float(const RatMatrix& m) {
  FloatMatrix f(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
  require_finite(f, "to_float");
  return f;
}

/// max(rows, cols) * machine epsilon, the usual numerical-rank threshold.
inline double default_rank_tol(Eigen::Index rows, Eigen::Index cols) {
  return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon();
}

template <typename Derived>
std::size_t numeric_rank(const Eigen::MatrixBase<Derived>& m, double tol) {
  if (!(tol > 0)) throw NumericError("numeric_rank: tolerance must be positive");
  if (m.rows() == 0 || m.cols() == 0) return 0;
  require_finite(m, "numeric_rank");
  using Plain = typename Derived::PlainObject;
  Eigen::JacobiSVD<Plain> svd(m.eval());
  if (svd.info() != Eigen::Success) throw NumericError("numeric_rank: SVD did not converge");
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  if (smax == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * smax) ++r;
  return r;
}

/// Number of singular values above tol * sigma_max.
inline std::size_t float_rank(const FloatMatrix& m, double tol) { return numeric_rank(m, tol); }
inline std::size_t float_rank(const FloatMatrix& m) {
  return numeric_rank(m, default_rank_tol(m.rows(), m.cols()));
}

/// All eigenvalues with multiplicity, in no particular order.
///
/// The matrix is first split along the strongly connected components of its
/// off-diagonal sparsity pattern; a permutation brings it to block triangular
/// form, so the spectrum is the union of the diagonal block spectra. For the
/// Laplacians of acyclic or nearly acyclic graphs this returns the diagonal
/// entries exactly instead of perturbed roots of a defective block.
inline std::vector<Complex> eigenvalues(const FloatMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("eigenvalues: matrix not square");
  require_finite(m, "eigenvalues");
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0)
        succ[i].push_back(j);

  std::vector<Complex> values;
  values.reserve(n);
  for (const auto& comp : strong_components(succ)) {
    const auto k = static_cast<Eigen::Index>(comp.size());
    if (k == 1) {
      const auto v = static_cast<Eigen::Index>(comp[0]);
      values.emplace_back(m(v, v), 0.0);
      continue;
    }
    FloatMatrix block(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b)
        block(a, b) = m(static_cast<Eigen::Index>(comp[a]), static_cast<Eigen::Index>(comp[b]));
    Eigen::EigenSolver<FloatMatrix> es(block, false);
    if (es.info() != Eigen::Success) throw NumericError("eigenvalues: solver did not converge");
    for (Eigen::Index a = 0; a < k; ++a) values.push_back(es.eigenvalues()(a));
  }
  return values;
}

/// Matrix exponential (scaling and squaring with a Pade approximant).
inline FloatMatrix expm(const FloatMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("expm: matrix not square");
  require_finite(m, "expm");
  if (m.rows() == 0) return m;
  FloatMatrix e = m.exp();
  if (!e.allFinite()) throw NumericError("expm: overflow");
  return e;
}

/// Orthonormal basis (columns) of the numerical null space of m.
inline ComplexMatrix null_space(const ComplexMatrix& m, double tol) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return ComplexMatrix::Identity(cols, cols);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw NumericError("null_space: SVD did not converge");
  const auto& s = svd.singularValues();
  const double scale = std::max(s.size() ? s(0) : 0.0, 1.0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * scale) ++r;
  return svd.matrixV().rightCols(cols - r);
}

}  // namespace netctrl
