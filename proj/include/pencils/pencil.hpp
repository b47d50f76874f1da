#pragma once
// A matrix pencil mu*R + lambda*S given by an equal-shape matrix pair.

#include <utility>

#include "pencils/matrix.hpp"

namespace pencils {

struct Pencil {
  Matrix R, S;

  Pencil() = default;
  Pencil(Matrix r, Matrix s) : R(std::move(r)), S(std::move(s)) {
    if (R.rows() != S.rows() || R.cols() != S.cols())
      throw DimensionMismatch("pencil matrices differ in shape");
  }

  size_t rows() const { return R.rows(); }
  size_t cols() const { return R.cols(); }

  Matrix eval(const Scalar& mu, const Scalar& lambda) const {
    Matrix m(rows(), cols());
    for (size_t r = 0; r < rows(); ++r)
      for (size_t c = 0; c < cols(); ++c)
        m(r, c) = mu * R(r, c) + lambda * S(r, c);
    return m;
  }

  Pencil transpose() const { return {R.transpose(), S.transpose()}; }

  bool isZero() const { return R.isZero() && S.isZero(); }

  friend bool operator==(const Pencil& a, const Pencil& b) {
    return a.R == b.R && a.S == b.S;
  }
  friend bool operator!=(const Pencil& a, const Pencil& b) {
    return !(a == b);
  }
};

// B * (mu R + lambda S) * C^T, applied to both coefficient matrices.
inline Pencil conjugate(const Pencil& p, const Matrix& b, const Matrix& c) {
  Matrix ct = c.transpose();
  return {b * p.R * ct, b * p.S * ct};
}

}  // namespace pencils
