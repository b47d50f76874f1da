#pragma once
// Kronecker canonical form: assemble the block-diagonal canonical pencil
// from an invariant set, reduce an arbitrary pencil to it with an exact
// invertible transformation pair, and decide strict equivalence with a
// verified witness.

#include <optional>
#include <random>
#include <string>
#include <utility>

#include "pencils/invariants.hpp"
#include "pencils/pencil.hpp"

namespace pencils {

// Fixed block order: zero block, L blocks by ascending eps, L^T blocks by
// ascending nu, N blocks by ascending degree, M blocks by (eigenvalue
// canonical order, ascending degree).
inline Pencil canonicalPencil(const KroneckerInvariants& inv, size_t m,
                              size_t n) {
  if (!inv.bookkeepingConsistent(m, n))
    throw DimensionMismatch("invariants inconsistent with pencil shape");
  Matrix r(m, n), s(m, n);
  size_t row = inv.transposeZeroIndexNumber();
  size_t col = inv.zeroIndexNumber();
  for (size_t eps : inv.rightMinimalIndices) {
    if (eps == 0) continue;  // part of the zero block
    for (size_t i = 0; i < eps; ++i) {
      s(row + i, col + i) = Scalar(1);
      r(row + i, col + i + 1) = Scalar(1);
    }
    row += eps;
    col += eps + 1;
  }
  for (size_t nu : inv.leftMinimalIndices) {
    if (nu == 0) continue;
    for (size_t i = 0; i < nu; ++i) {
      s(row + i, col + i) = Scalar(1);
      r(row + i + 1, col + i) = Scalar(1);
    }
    row += nu + 1;
    col += nu;
  }
  for (size_t e : inv.infiniteDivisorDegrees) {
    for (size_t i = 0; i < e; ++i) {
      r(row + i, col + i) = Scalar(1);
      if (i + 1 < e) s(row + i, col + i + 1) = Scalar(1);
    }
    row += e;
    col += e;
  }
  for (const auto& [x, degrees] : inv.finiteDivisors) {
    for (size_t e : degrees) {
      for (size_t i = 0; i < e; ++i) {
        r(row + i, col + i) = x;
        s(row + i, col + i) = Scalar(1);
        if (i + 1 < e) r(row + i, col + i + 1) = Scalar(1);
      }
      row += e;
      col += e;
    }
  }
  if (row != m || col != n)
    throw DimensionMismatch("canonical blocks do not fill the pencil");
  return {std::move(r), std::move(s)};
}

namespace detail {

// All pairs (B, Y) with B P.R = Q.R Y and B P.S = Q.S Y form a linear
// space; when P and Q are strictly equivalent it contains an invertible
// pair, and invertibility is generic in that space. Search the kernel for
// an invertible combination with deterministic pseudo-random coefficients,
// then convert Y to C = Y^{-T} so that B (mu R + lambda S) C^T = Q.
inline std::optional<std::pair<Matrix, Matrix>> solveStrictEquivalence(
    const Pencil& p, const Pencil& q) {
  size_t m = p.rows(), n = p.cols();
  size_t unknowns = m * m + n * n;
  Matrix sys(2 * m * n, unknowns);
  size_t eq = 0;
  for (const bool sPart : {false, true}) {
    const Matrix& mp = sPart ? p.S : p.R;
    const Matrix& mq = sPart ? q.S : q.R;
    for (size_t r = 0; r < m; ++r)
      for (size_t c = 0; c < n; ++c) {
        for (size_t j = 0; j < m; ++j) sys(eq, r * m + j) = mp(j, c);
        for (size_t i = 0; i < n; ++i)
          sys(eq, m * m + i * n + c) = -mq(r, i);
        ++eq;
      }
  }
  std::vector<Vector> kernel = nullspaceBasis(sys);
  if (kernel.empty()) return std::nullopt;

  std::mt19937 rng(0x5eed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix b(m, m), y(n, n);
    for (size_t k = 0; k < kernel.size(); ++k) {
      long coeff = attempt == 0
                       ? 1
                       : long(rng() % (8 * (attempt + 1))) - long(4 * (attempt + 1));
      if (coeff == 0) continue;
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
          b(i, j) += Scalar(coeff) * kernel[k][i * m + j];
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          y(i, j) += Scalar(coeff) * kernel[k][m * m + i * n + j];
    }
    if (det(b).isZero() || det(y).isZero()) continue;
    Matrix c = inverse(y).transpose();
    if (conjugate(p, b, c) != q) continue;  // exact check, should not fire
    return std::make_pair(std::move(b), std::move(c));
  }
  return std::nullopt;
}

}  // namespace detail

struct CanonicalDecomposition {
  Matrix B, C;
  Pencil K;
  KroneckerInvariants inv;
};

inline CanonicalDecomposition reduceToCanonical(const Pencil& p) {
  CanonicalDecomposition out;
  out.inv = kroneckerInvariants(p);
  out.K = canonicalPencil(out.inv, p.rows(), p.cols());
  auto bc = detail::solveStrictEquivalence(p, out.K);
  if (!bc) throw std::logic_error("canonical reduction found no witness");
  out.B = std::move(bc->first);
  out.C = std::move(bc->second);
  return out;
}

struct StrictEquivResult {
  bool equivalent = false;
  Matrix B, C;                    // B P C^T = Q when equivalent
  std::string differingInvariant;  // set when not equivalent
};

inline StrictEquivResult strictEquiv(const Pencil& p, const Pencil& q) {
  if (p.rows() != q.rows() || p.cols() != q.cols())
    throw DimensionMismatch("strict equivalence needs equal shapes");
  StrictEquivResult out;
  std::string diff =
      firstDifferingInvariant(kroneckerInvariants(p), kroneckerInvariants(q));
  if (!diff.empty()) {
    out.differingInvariant = std::move(diff);
    return out;
  }
  auto bc = detail::solveStrictEquivalence(p, q);
  if (!bc)
    throw std::logic_error("equal invariants but no witness found");
  out.equivalent = true;
  out.B = std::move(bc->first);
  out.C = std::move(bc->second);
  return out;
}

}  // namespace pencils
