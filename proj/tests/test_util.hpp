#pragma once
// Shared deterministic random generators for the test suites: scalars,
// matrices, invertible matrices, canonical invariant structures, states
// and witnesses.

#include <random>
#include <vector>

#include "pencils/kronecker.hpp"
#include "pencils/slocc.hpp"

namespace testutil {

using namespace pencils;

inline Scalar randomScalar(std::mt19937& rng, long span = 4) {
  long num = long(rng() % (2 * span + 1)) - span;
  long den = 1 + long(rng() % 3);
  return Scalar(num, den);
}

inline Scalar randomNonzeroScalar(std::mt19937& rng, long span = 4) {
  for (;;) {
    Scalar s = randomScalar(rng, span);
    if (!s.isZero()) return s;
  }
}

inline Matrix randomMatrix(size_t m, size_t n, std::mt19937& rng,
                           long span = 4) {
  Matrix a(m, n);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) a(i, j) = randomScalar(rng, span);
  return a;
}

inline Matrix randomInvertible(size_t n, std::mt19937& rng, long span = 4) {
  for (;;) {
    Matrix a = randomMatrix(n, n, rng, span);
    if (!det(a).isZero()) return a;
  }
}

inline Pencil randomPencil(size_t m, size_t n, std::mt19937& rng) {
  return {randomMatrix(m, n, rng), randomMatrix(m, n, rng)};
}

inline SloccWitness randomWitness(size_t m, size_t n, std::mt19937& rng,
                                  long span = 2) {
  return {randomInvertible(2, rng, span), randomInvertible(m, rng, span),
          randomInvertible(n, rng, span)};
}

// A random consistent invariant structure for an m x n pencil, assembled
// block by block: zero right/left indices, L and L^T blocks, mu-power
// blocks, and finite divisors at small rational points.
inline KroneckerInvariants randomInvariants(size_t m, size_t n,
                                            std::mt19937& rng) {
  static const std::vector<Scalar> pool = {Scalar(0), Scalar(1), Scalar(2),
                                           Scalar(-1), Scalar(1, 2)};
  KroneckerInvariants inv;
  size_t rowRem = m, colRem = n;
  while (rowRem > 0 || colRem > 0) {
    if (rowRem == 0) {
      inv.rightMinimalIndices.push_back(0);
      --colRem;
      continue;
    }
    if (colRem == 0) {
      inv.leftMinimalIndices.push_back(0);
      --rowRem;
      continue;
    }
    switch (rng() % 6) {
      case 0:
        inv.rightMinimalIndices.push_back(0);
        --colRem;
        break;
      case 1:
        inv.leftMinimalIndices.push_back(0);
        --rowRem;
        break;
      case 2:
        if (colRem >= 2) {
          size_t e = 1 + rng() % std::min(rowRem, colRem - 1);
          inv.rightMinimalIndices.push_back(e);
          rowRem -= e;
          colRem -= e + 1;
        }
        break;
      case 3:
        if (rowRem >= 2) {
          size_t e = 1 + rng() % std::min(colRem, rowRem - 1);
          inv.leftMinimalIndices.push_back(e);
          rowRem -= e + 1;
          colRem -= e;
        }
        break;
      case 4: {
        size_t e = 1 + rng() % std::min(rowRem, colRem);
        inv.infiniteDivisorDegrees.push_back(e);
        rowRem -= e;
        colRem -= e;
        break;
      }
      default: {
        size_t e = 1 + rng() % std::min(rowRem, colRem);
        inv.finiteDivisors[pool[rng() % pool.size()]].push_back(e);
        rowRem -= e;
        colRem -= e;
        break;
      }
    }
  }
  std::sort(inv.rightMinimalIndices.begin(), inv.rightMinimalIndices.end());
  std::sort(inv.leftMinimalIndices.begin(), inv.leftMinimalIndices.end());
  std::sort(inv.infiniteDivisorDegrees.begin(),
            inv.infiniteDivisorDegrees.end());
  for (auto& [x, degs] : inv.finiteDivisors) {
    (void)x;
    std::sort(degs.begin(), degs.end());
  }
  inv.normalRank = inv.sumRight() + inv.sumLeft() + inv.regularSize();
  return inv;
}

// A random state with fully known invariant structure: a conjugated
// random canonical pencil, regenerated if the structure is all-zero.
inline State randomStructuredState(size_t m, size_t n, std::mt19937& rng,
                                   KroneckerInvariants* genOut = nullptr) {
  for (;;) {
    KroneckerInvariants gen = randomInvariants(m, n, rng);
    Pencil k = canonicalPencil(gen, m, n);
    if (k.isZero()) continue;
    if (genOut) *genOut = gen;
    return pencilToState(
        conjugate(k, randomInvertible(m, rng), randomInvertible(n, rng)));
  }
}

inline State ghzState() {
  Matrix r(2, 2), s(2, 2);
  r(0, 0) = Scalar(1);
  s(1, 1) = Scalar(1);
  return {std::move(r), std::move(s)};
}

inline State wState() {
  Matrix r(2, 2), s(2, 2);
  r(0, 1) = Scalar(1);
  r(1, 0) = Scalar(1);
  s(0, 0) = Scalar(1);
  return {std::move(r), std::move(s)};
}

}  // namespace testutil
