#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "netctrl/rat_matrix.hpp"

namespace netctrl {

namespace detail {

// Scales each row by the lcm of its denominators; row scaling preserves rank.
inline std::vector<BigInt> integer_rows(const RatMatrix& m) {
  std::vector<BigInt> out(m.rows() * m.cols());
  BigInt l;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    l = 1;
    for (const Rational& q : m.row(i)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& q = m(i, j);
      BigInt& dst = out[i * m.cols() + j];
      mpz_divexact(dst.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
      dst *= q.get_num();
    }
  }
  return out;
}

}  // namespace detail

/// Exact rank by fraction-free (Bareiss) elimination with full pivoting.
///
/// Rows are first cleared of denominators. At step k every remaining entry is
/// a (k+1)-minor of the integer matrix, so the division by the previous pivot
/// is exact.
inline std::size_t rat_rank(const RatMatrix& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<BigInt> a = detail::integer_rows(m);
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * cols + j]; };

  BigInt prev = 1;
  BigInt t;
  std::size_t rank = 0;
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t k = 0; k < steps; ++k) {
    // Full pivoting on the largest magnitude entry of the trailing block.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        const BigInt& v = at(i, j);
        if (sgn(v) == 0) continue;
        if (pr == rows || mpz_cmpabs(v.get_mpz_t(), at(pr, pc).get_mpz_t()) > 0) {
          pr = i;
          pc = j;
        }
      }
    if (pr == rows) break;
    if (pr != k)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(k, j), at(pr, j));
    if (pc != k)
      for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, k), at(i, pc));

    const BigInt& pivot = at(k, k);
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        t = at(i, j) * pivot;
        t -= at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      at(i, k) = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

/// Incrementally grown set of linearly independent vectors, kept in reduced
/// echelon form so membership tests are a single reduction pass.
class RowBasis {
 public:
  explicit RowBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }

  /// Reduces v against the basis; returns the residual (zero iff v is in the span).
  std::vector<Rational> reduce(std::vector<Rational> v) const {
    if (v.size() != dim_) throw DimensionError("RowBasis: vector length mismatch");
    Rational t;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t p = pivots_[r];
      if (v[p] == 0) continue;
      const Rational f = v[p];
      for (std::size_t j = 0; j < dim_; ++j) {
        if (rows_[r][j] == 0) continue;
        t = f * rows_[r][j];
        v[j] -= t;
      }
    }
    return v;
  }

  bool in_span(std::span<const Rational> v) const {
    auto res = reduce(std::vector<Rational>(v.begin(), v.end()));
    return std::all_of(res.begin(), res.end(), [](const Rational& q) { return q == 0; });
  }

  /// Adds v when it is independent of the current basis. Returns whether it was added.
  bool add(std::span<const Rational> v) {
    std::vector<Rational> res = reduce(std::vector<Rational>(v.begin(), v.end()));
    auto it = std::find_if(res.begin(), res.end(), [](const Rational& q) { return q != 0; });
    if (it == res.end()) return false;
    const std::size_t p = static_cast<std::size_t>(it - res.begin());
    const Rational inv = 1 / res[p];
    for (auto& q : res) q *= inv;
    // Keep the basis fully reduced: eliminate the new pivot from older rows.
    Rational t;
    for (auto& row : rows_) {
      if (row[p] == 0) continue;
      const Rational f = row[p];
      for (std::size_t j = 0; j < dim_; ++j) {
        if (res[j] == 0) continue;
        t = f * res[j];
        row[j] -= t;
      }
    }
    rows_.push_back(std::move(res));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Exact inverse by Gauss-Jordan elimination; nullopt when singular.
inline std::optional<RatMatrix> try_inverse(const RatMatrix& m) {
  if (!m.square()) throw DimensionError("inverse: matrix not square");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  Rational t;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    const Rational s = 1 / a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) *= s;
      inv(k, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rational f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (a(k, j) != 0) {
          t = f * a(k, j);
          a(i, j) -= t;
        }
        if (inv(k, j) != 0) {
          t = f * inv(k, j);
          inv(i, j) -= t;
        }
      }
    }
  }
  return inv;
}

inline RatMatrix inverse(const RatMatrix& m) {
  auto inv = try_inverse(m);
  if (!inv) throw DimensionError("inverse: matrix is singular");
  return *std::move(inv);
}

}  // namespace netctrl
