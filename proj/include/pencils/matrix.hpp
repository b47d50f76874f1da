#pragma once
// Dense matrices over the Gaussian rationals: arithmetic, elimination,
// rank, kernels, determinants, inverses. All operations are exact.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pencils/scalar.hpp"

namespace pencils {

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Vector = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}
  Matrix(size_t rows, size_t cols, std::vector<Scalar> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_)
      throw DimensionMismatch("entry count does not match shape");
  }

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Scalar& operator()(size_t r, size_t c) { return e_[r * cols_ + c]; }
  const Scalar& operator()(size_t r, size_t c) const {
    return e_[r * cols_ + c];
  }

  bool isZero() const {
    for (const auto& x : e_)
      if (!x.isZero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
      for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.requireSameShape(b);
    Matrix m(a.rows_, a.cols_);
    for (size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = a.e_[k] + b.e_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.requireSameShape(b);
    Matrix m(a.rows_, a.cols_);
    for (size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = a.e_[k] - b.e_[k];
    return m;
  }
  friend Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix m(a.rows_, a.cols_);
    for (size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = s * a.e_[k];
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shapes");
    Matrix m(a.rows_, b.cols_);
    for (size_t r = 0; r < a.rows_; ++r)
      for (size_t k = 0; k < a.cols_; ++k) {
        const Scalar& ark = a(r, k);
        if (ark.isZero()) continue;
        for (size_t c = 0; c < b.cols_; ++c) {
          const Scalar& bkc = b(k, c);
          if (!bkc.isZero()) m(r, c) += ark * bkc;
        }
      }
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) {
    return !(a == b);
  }

 private:
  void requireSameShape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch("matrix shapes differ");
  }

  size_t rows_, cols_;
  std::vector<Scalar> e_;
};

// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<size_t> rrefInPlace(Matrix& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t p = row;
    while (p < m.rows() && m(p, col).isZero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (size_t c = col; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    Scalar inv = m(row, col).inverse();
    for (size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).isZero()) continue;
      Scalar f = m(r, col);
      for (size_t c = col; c < m.cols(); ++c)
        m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline size_t rank(const Matrix& m) {
  Matrix work = m;
  return rrefInPlace(work).size();
}

// Exact basis of the right kernel; size = cols - rank.
inline std::vector<Vector> nullspaceBasis(const Matrix& m) {
  Matrix work = m;
  std::vector<size_t> pivots = rrefInPlace(work);
  std::vector<bool> isPivot(m.cols(), false);
  for (size_t c : pivots) isPivot[c] = true;
  std::vector<Vector> basis;
  for (size_t freeCol = 0; freeCol < m.cols(); ++freeCol) {
    if (isPivot[freeCol]) continue;
    Vector v(m.cols());
    v[freeCol] = Scalar(1);
    for (size_t k = 0; k < pivots.size(); ++k)
      v[pivots[k]] = -work(k, freeCol);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Scalar det(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("det of non-square matrix");
  Matrix work = m;
  size_t n = m.rows();
  Scalar d(1);
  for (size_t col = 0; col < n; ++col) {
    size_t p = col;
    while (p < n && work(p, col).isZero()) ++p;
    if (p == n) return Scalar(0);
    if (p != col) {
      for (size_t c = col; c < n; ++c) std::swap(work(p, c), work(col, c));
      d = -d;
    }
    d *= work(col, col);
    Scalar inv = work(col, col).inverse();
    for (size_t r = col + 1; r < n; ++r) {
      if (work(r, col).isZero()) continue;
      Scalar f = work(r, col) * inv;
      for (size_t c = col; c < n; ++c) work(r, c) -= f * work(col, c);
    }
  }
  return d;
}

inline Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("inverse of non-square matrix");
  size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = Scalar(1);
  }
  std::vector<size_t> pivots = rrefInPlace(aug);
  // Invertible exactly when every pivot lands in the left block.
  if (pivots.size() < n || pivots[n - 1] >= n)
    throw std::domain_error("matrix is singular");
  Matrix inv(n, n);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

}  // namespace pencils
