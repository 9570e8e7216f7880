#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "netctrl/errors.hpp"
#include "netctrl/rational.hpp"

namespace netctrl {

/// Dense row-major matrix over exact rationals.
///
/// Zero-sized matrices are allowed: the Kalman decomposition produces empty
/// blocks when the system is fully controllable.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw DimensionError("RatMatrix: entry count does not match shape");
  }
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("RatMatrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Rational> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  const std::vector<Rational>& entries() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
  }
  bool row_is_zero(std::size_t i) const {
    auto r = row(i);
    return std::all_of(r.begin(), r.end(), [](const Rational& q) { return q == 0; });
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RatMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("RatMatrix::block out of range");
    RatMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const RatMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
      throw DimensionError("RatMatrix::set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  RatMatrix select_rows(std::span<const std::size_t> idx) const {
    RatMatrix s(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= rows_) throw DimensionError("RatMatrix::select_rows index out of range");
      for (std::size_t j = 0; j < cols_; ++j) s(k, j) = (*this)(idx[k], j);
    }
    return s;
  }

  RatMatrix select_cols(std::span<const std::size_t> idx) const {
    RatMatrix s(rows_, idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= cols_) throw DimensionError("RatMatrix::select_cols index out of range");
      for (std::size_t i = 0; i < rows_; ++i) s(i, k) = (*this)(i, idx[k]);
    }
    return s;
  }

  RatMatrix& operator+=(const RatMatrix& o) {
    require_same_shape(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  RatMatrix& operator-=(const RatMatrix& o) {
    require_same_shape(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  RatMatrix& operator*=(const Rational& s) {
    for (auto& q : data_) q *= s;
    return *this;
  }

  friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
  friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
  friend RatMatrix operator*(RatMatrix a, const Rational& s) { return a *= s; }
  friend RatMatrix operator*(const Rational& s, RatMatrix a) { return a *= s; }
  friend RatMatrix operator-(RatMatrix a) { return a *= Rational(-1); }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const RatMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    }
    return os << ']';
  }

 private:
  void require_same_shape(const RatMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionError(std::string("RatMatrix: shape mismatch in operator") + op);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  RatMatrix c(a.rows(), b.cols());
  Rational t;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) == 0) continue;
        t = aik * b(k, j);
        c(i, j) += t;
      }
    }
  return c;
}

inline RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) { return mat_mul(a, b); }

/// Kronecker product: entry (i*b.rows()+k, j*b.cols()+l) = a(i,j)*b(k,l).
inline RatMatrix kron(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return c;
}

inline RatMatrix hstack(std::span<const RatMatrix> parts) {
  if (parts.empty()) return {};
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != parts.front().rows()) throw DimensionError("hstack: row count mismatch");
    cols += p.cols();
  }
  RatMatrix out(parts.front().rows(), cols);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    out.set_block(0, c0, p);
    c0 += p.cols();
  }
  return out;
}

inline RatMatrix vstack(std::span<const RatMatrix> parts) {
  if (parts.empty()) return {};
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != parts.front().cols()) throw DimensionError("vstack: column count mismatch");
    rows += p.rows();
  }
  RatMatrix out(rows, parts.front().cols());
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    out.set_block(r0, 0, p);
    r0 += p.rows();
  }
  return out;
}

inline RatMatrix mat_pow(const RatMatrix& a, unsigned k) {
  if (!a.square()) throw DimensionError("mat_pow: matrix not square");
  RatMatrix r = RatMatrix::identity(a.rows());
  for (unsigned i = 0; i < k; ++i) r = mat_mul(r, a);
  return r;
}

/// Indices of rows that are exactly zero.
inline std::vector<std::size_t> zero_rows(const RatMatrix& w) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w.rows(); ++i)
    if (w.row_is_zero(i)) out.push_back(i);
  return out;
}

}  // namespace netctrl
