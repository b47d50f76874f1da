#pragma once
// The complete strict-equivalence invariant of a pencil: normal rank,
// invariant polynomials D_i/D_{i-1}, elementary divisors grouped by
// projective point, minimal indices, zero index numbers.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "pencils/homopoly.hpp"
#include "pencils/pencil.hpp"

namespace pencils {

struct IrrationalSpectrum : std::runtime_error {
  explicit IrrationalSpectrum(const std::string& factor)
      : std::runtime_error("spectrum not Gaussian-rational; irreducible factor " +
                           factor),
        irreducibleFactor(factor) {}
  std::string irreducibleFactor;
};

// Finite(x) stands for the divisor factor (mu x + lambda); Infinity for a
// mu-power divisor.
struct ProjectivePoint {
  bool infinite = false;
  Scalar x;  // meaningful only when finite

  static ProjectivePoint finitePoint(Scalar v) { return {false, std::move(v)}; }
  static ProjectivePoint infinity() { return {true, Scalar(0)}; }

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.infinite == b.infinite && (a.infinite || a.x == b.x);
  }
  friend bool operator<(const ProjectivePoint& a, const ProjectivePoint& b) {
    if (a.infinite != b.infinite) return b.infinite;  // finite points first
    if (a.infinite) return false;
    return a.x < b.x;
  }
};

struct KroneckerInvariants {
  size_t normalRank = 0;
  std::vector<size_t> rightMinimalIndices;  // sorted, zeros included
  std::vector<size_t> leftMinimalIndices;   // sorted, zeros included
  std::map<Scalar, std::vector<size_t>> finiteDivisors;  // point -> degrees
  std::vector<size_t> infiniteDivisorDegrees;            // sorted, nonzero

  size_t zeroIndexNumber() const {  // g
    return std::count(rightMinimalIndices.begin(), rightMinimalIndices.end(),
                      size_t{0});
  }
  size_t transposeZeroIndexNumber() const {  // h
    return std::count(leftMinimalIndices.begin(), leftMinimalIndices.end(),
                      size_t{0});
  }

  // Size of the regular part J.
  size_t regularSize() const {
    size_t l = std::accumulate(infiniteDivisorDegrees.begin(),
                               infiniteDivisorDegrees.end(), size_t{0});
    for (const auto& [x, degs] : finiteDivisors) {
      (void)x;
      l = std::accumulate(degs.begin(), degs.end(), l);
    }
    return l;
  }

  size_t sumRight() const {
    return std::accumulate(rightMinimalIndices.begin(),
                           rightMinimalIndices.end(), size_t{0});
  }
  size_t sumLeft() const {
    return std::accumulate(leftMinimalIndices.begin(), leftMinimalIndices.end(),
                           size_t{0});
  }

  bool bookkeepingConsistent(size_t m, size_t n) const {
    if (rightMinimalIndices.size() != n - normalRank) return false;
    if (leftMinimalIndices.size() != m - normalRank) return false;
    return sumRight() + sumLeft() + regularSize() == normalRank;
  }

  friend bool operator==(const KroneckerInvariants& a,
                         const KroneckerInvariants& b) {
    return a.normalRank == b.normalRank &&
           a.rightMinimalIndices == b.rightMinimalIndices &&
           a.leftMinimalIndices == b.leftMinimalIndices &&
           a.finiteDivisors == b.finiteDivisors &&
           a.infiniteDivisorDegrees == b.infiniteDivisorDegrees;
  }
  friend bool operator!=(const KroneckerInvariants& a,
                         const KroneckerInvariants& b) {
    return !(a == b);
  }
};

// Name of the first field on which two invariant sets disagree, or "".
inline std::string firstDifferingInvariant(const KroneckerInvariants& a,
                                           const KroneckerInvariants& b) {
  if (a.normalRank != b.normalRank) return "normal rank";
  if (a.rightMinimalIndices != b.rightMinimalIndices)
    return "right minimal indices";
  if (a.leftMinimalIndices != b.leftMinimalIndices)
    return "left minimal indices";
  if (a.finiteDivisors != b.finiteDivisors ||
      a.infiniteDivisorDegrees != b.infiniteDivisorDegrees)
    return "elementary divisors";
  return "";
}

// Largest r such that some r-minor of mu R + lambda S is not the zero
// polynomial. Every minor has degree <= min(m, n), so evaluating at
// min(m, n) + 2 distinct points (1, t) makes sampling exact.
inline size_t normalRank(const Pencil& p) {
  size_t bound = std::min(p.rows(), p.cols());
  size_t best = 0;
  for (size_t k = 0; k < bound + 2; ++k) {
    best = std::max(best, rank(p.eval(Scalar(1), Scalar(long(k)))));
    if (best == bound) break;
  }
  return best;
}

namespace detail {

inline bool nextCombination(std::vector<size_t>& idx, size_t limit) {
  size_t k = idx.size();
  for (size_t i = k; i-- > 0;) {
    if (idx[i] + (k - i) < limit) {
      ++idx[i];
      for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Newton interpolation of a degree <= n polynomial from values at
// t = 0..n; returns monomial coefficients (low to high).
inline std::vector<Scalar> interpolate(const std::vector<Scalar>& values) {
  size_t n = values.size();
  std::vector<Scalar> dd = values;  // divided differences, built in place
  for (size_t level = 1; level < n; ++level)
    for (size_t j = n; j-- > level;)
      dd[j] = (dd[j] - dd[j - 1]) / Scalar(long(level));
  // Horner expansion of Newton form with nodes 0, 1, ..., n-1.
  std::vector<Scalar> coeffs(n);
  coeffs[0] = dd[n - 1];
  size_t used = 1;
  for (size_t j = n - 1; j-- > 0;) {
    // multiply by (t - j) and add dd[j]
    for (size_t k = used; k-- > 0;) {
      Scalar c = coeffs[k];
      coeffs[k + 1] += c;
      coeffs[k] = -Scalar(long(j)) * c;
    }
    ++used;
    coeffs[0] += dd[j];
  }
  return coeffs;
}

// The i-minor of the pencil for given row/col subsets, as a homogeneous
// polynomial of degree i, via interpolation of scalar determinants.
inline HomoPoly2 pencilMinor(const std::vector<Matrix>& evals,
                             const std::vector<size_t>& rowsIdx,
                             const std::vector<size_t>& colsIdx) {
  size_t i = rowsIdx.size();
  std::vector<Scalar> values(i + 1);
  for (size_t k = 0; k <= i; ++k) {
    Matrix sub(i, i);
    for (size_t r = 0; r < i; ++r)
      for (size_t c = 0; c < i; ++c)
        sub(r, c) = evals[k](rowsIdx[r], colsIdx[c]);
    values[k] = det(sub);
  }
  std::vector<Scalar> coeffs = interpolate(values);
  return HomoPoly2(i, std::move(coeffs));
}

// GCD of all i-minors, monic in lambda; the zero polynomial when all
// i-minors vanish identically.
inline HomoPoly2 minorGcd(const Pencil& p, size_t i,
                          const std::vector<Matrix>& evals) {
  HomoPoly2 g;
  std::vector<size_t> rowsIdx(i), colsIdx(i);
  std::iota(rowsIdx.begin(), rowsIdx.end(), 0);
  do {
    std::iota(colsIdx.begin(), colsIdx.end(), 0);
    do {
      HomoPoly2 minor = pencilMinor(evals, rowsIdx, colsIdx);
      if (!minor.isZero()) {
        g = hpolyGcd(g, minor);
        if (g.isConstant()) return g;
      }
    } while (nextCombination(colsIdx, p.cols()));
  } while (nextCombination(rowsIdx, p.rows()));
  return g;
}

}  // namespace detail

// E_1, ..., E_r with E_i = D_i / D_{i-1}, D_0 = 1, each monic in lambda.
inline std::vector<HomoPoly2> invariantPolynomials(const Pencil& p) {
  size_t r = normalRank(p);
  if (r == 0) return {};
  std::vector<Matrix> evals;
  evals.reserve(r + 1);
  for (size_t k = 0; k <= r; ++k)
    evals.push_back(p.eval(Scalar(1), Scalar(long(k))));

  std::vector<HomoPoly2> d(r + 1, HomoPoly2::one());  // d[0] = 1
  // Compute from the top; once D_i is constant, all lower D are 1.
  for (size_t i = r; i >= 1; --i) {
    d[i] = detail::minorGcd(p, i, evals);
    if (d[i].isConstant()) break;
  }
  std::vector<HomoPoly2> e(r);
  for (size_t i = 1; i <= r; ++i)
    e[i - 1] = hpolyDivExact(d[i], d[i - 1]).normalized();
  return e;
}

struct ElementaryDivisors {
  std::map<Scalar, std::vector<size_t>> finite;
  std::vector<size_t> infinite;
};

// Exact but slow reference route through the invariant polynomials; used
// as the fallback when the candidate-point route cannot account for the
// whole spectrum, and by tests as an oracle.
inline ElementaryDivisors elementaryDivisorsByInvariantPolynomials(
    const Pencil& p) {
  ElementaryDivisors out;
  for (const HomoPoly2& e : invariantPolynomials(p)) {
    if (e.isConstant()) continue;
    LinearFactorization f = hpolyLinearFactorization(e);
    if (!f.fullyFactored) throw IrrationalSpectrum(f.residual.str());
    if (f.muPower > 0) out.infinite.push_back(f.muPower);
    for (const auto& [x, mult] : f.roots) out.finite[x].push_back(mult);
  }
  std::sort(out.infinite.begin(), out.infinite.end());
  for (auto& [x, degs] : out.finite) {
    (void)x;
    std::sort(degs.begin(), degs.end());
  }
  return out;
}

namespace detail {

// GCD of randomly chosen nonzero r-minors, iterated until it stabilizes.
// The result is a multiple of D_r and almost always D_r itself, so its
// roots cover every divisor point while staying small enough to factor.
inline HomoPoly2 stabilizedMinorGcd(const Pencil& p, size_t r) {
  std::vector<Matrix> evals;
  evals.reserve(r + 1);
  for (size_t k = 0; k <= r; ++k)
    evals.push_back(p.eval(Scalar(1), Scalar(long(k))));
  // A sample point where the pencil reaches normal rank, for cheap
  // nonzero-minor tests.
  size_t probe = 0;
  while (rank(evals.size() > probe ? evals[probe]
                                   : evals.emplace_back(p.eval(
                                         Scalar(1), Scalar(long(probe))))) < r)
    ++probe;
  const Matrix& probeEval = evals[probe];

  std::mt19937 rng(0x9d1c);
  auto randomSubset = [&](size_t limit) {
    std::vector<size_t> all(limit);
    std::iota(all.begin(), all.end(), 0);
    for (size_t i = 0; i < r; ++i)
      std::swap(all[i], all[i + rng() % (limit - i)]);
    all.resize(r);
    std::sort(all.begin(), all.end());
    return all;
  };

  HomoPoly2 g;
  int stable = 0;
  for (int tries = 0; stable < 2 && tries < 200; ++tries) {
    std::vector<size_t> rowsIdx = randomSubset(p.rows());
    std::vector<size_t> colsIdx = randomSubset(p.cols());
    Matrix sub(r, r);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j)
        sub(i, j) = probeEval(rowsIdx[i], colsIdx[j]);
    if (det(sub).isZero()) continue;
    HomoPoly2 minor = pencilMinor(evals, rowsIdx, colsIdx);
    HomoPoly2 next = hpolyGcd(g, minor);
    if (!g.isZero() && next == g)
      ++stable;
    else
      stable = 0;
    g = std::move(next);
    if (g.isConstant()) break;
  }
  if (g.isZero()) {
    // Tiny pencils where random subsets kept colliding with singular
    // evaluations; fall back to pivot-based selection.
    Matrix work = probeEval;
    std::vector<size_t> colsIdx = rrefInPlace(work);
    colsIdx.resize(r);
    Matrix sub(r, p.rows());
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < p.rows(); ++j) sub(i, j) = probeEval(j, colsIdx[i]);
    std::vector<size_t> rowsIdx = rrefInPlace(sub);
    rowsIdx.resize(r);
    g = pencilMinor(evals, rowsIdx, colsIdx);
  }
  return g;
}

// Partial multiplicities of the divisor point via ranks of the block
// Toeplitz matrices W_k = [[P0, P1, 0, ...], [0, P0, P1, ...], ...] where
// P0 is the pencil at the point and P1 its derivative: the multiset {m_j}
// satisfies sum_j min(k, m_j) = k r - rank(W_k).
inline std::vector<size_t> partialMultiplicities(const Matrix& p0,
                                                 const Matrix& p1, size_t r) {
  size_t m = p0.rows(), n = p0.cols();
  std::vector<size_t> mins = {0};  // mins[k] = sum_j min(k, m_j)
  for (size_t k = 1;; ++k) {
    Matrix w(k * m, k * n);
    for (size_t blk = 0; blk < k; ++blk)
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) {
          w(blk * m + i, blk * n + j) = p0(i, j);
          if (blk + 1 < k) w(blk * m + i, (blk + 1) * n + j) = p1(i, j);
        }
    mins.push_back(k * r - rank(w));
    if (mins[k] == mins[k - 1]) break;  // no divisor of degree >= k
  }
  // counts c_k = #{m_j >= k} = mins[k] - mins[k-1]; exact degree k occurs
  // c_k - c_{k+1} times.
  std::vector<size_t> out;
  size_t last = mins.size() - 1;  // c_last = 0
  for (size_t k = 1; k < last; ++k) {
    size_t ck = mins[k] - mins[k - 1];
    size_t ck1 = mins[k + 1] - mins[k];
    for (size_t c = ck1; c < ck; ++c) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Elementary divisors by factoring a single nonzero r-minor for candidate
// points, then reading exact multiplicities from Toeplitz ranks. Complete
// whenever the whole spectrum is Gaussian-rational; the caller checks the
// dimension bookkeeping and falls back to the minor-GCD route otherwise.
inline void fastDivisors(const Pencil& p, size_t r,
                         std::map<Scalar, std::vector<size_t>>& finite,
                         std::vector<size_t>& infinite) {
  if (r == 0) return;
  HomoPoly2 minor = stabilizedMinorGcd(p, r);
  LinearFactorization f = hpolyLinearFactorization(minor);
  if (f.muPower > 0) {
    infinite = partialMultiplicities(p.S, p.R, r);
  }
  for (const auto& [x, mult] : f.roots) {
    (void)mult;
    // Divisor factor (mu x + lambda): evaluate at lambda = -x mu.
    Matrix p0 = p.eval(Scalar(1), -x);
    std::vector<size_t> degs = partialMultiplicities(p0, p.S, r);
    if (!degs.empty()) finite[x] = std::move(degs);
  }
}

// Band matrix T_d: (d+2) block rows of m, (d+1) block cols of n; block
// column j carries R in block row j and S in block row j+1. Its kernel
// holds the coefficient stacks of degree <= d polynomial kernel vectors.
inline Matrix bandMatrix(const Pencil& p, size_t d) {
  size_t m = p.rows(), n = p.cols();
  Matrix t((d + 2) * m, (d + 1) * n);
  for (size_t j = 0; j <= d; ++j)
    for (size_t r = 0; r < m; ++r)
      for (size_t c = 0; c < n; ++c) {
        t(j * m + r, j * n + c) = p.R(r, c);
        t((j + 1) * m + r, j * n + c) = p.S(r, c);
      }
  return t;
}

inline std::vector<size_t> rightIndices(const Pencil& p, size_t count) {
  std::vector<size_t> out;
  if (count == 0) return out;
  size_t n = p.cols();
  long kPrev = 0, kPrev2 = 0;  // kernel dims at d-1, d-2
  for (size_t d = 0; out.size() < count; ++d) {
    long k = long((d + 1) * n) - long(rank(bandMatrix(p, d)));
    long atMostD = k - kPrev;          // #{eps_i <= d}
    long atMostPrev = kPrev - kPrev2;  // #{eps_i <= d-1}
    for (long c = 0; c < atMostD - atMostPrev; ++c) out.push_back(d);
    kPrev2 = kPrev;
    kPrev = k;
  }
  return out;
}

}  // namespace detail

// Right and left minimal indices, sorted ascending, zeros included.
inline std::pair<std::vector<size_t>, std::vector<size_t>> minimalIndices(
    const Pencil& p) {
  size_t r = normalRank(p);
  return {detail::rightIndices(p, p.cols() - r),
          detail::rightIndices(p.transpose(), p.rows() - r)};
}

inline ElementaryDivisors elementaryDivisors(const Pencil& p) {
  size_t r = normalRank(p);
  ElementaryDivisors out;
  detail::fastDivisors(p, r, out.finite, out.infinite);
  size_t total = std::accumulate(out.infinite.begin(), out.infinite.end(),
                                 size_t{0});
  for (const auto& [x, degs] : out.finite) {
    (void)x;
    total = std::accumulate(degs.begin(), degs.end(), total);
  }
  auto [right, left] = minimalIndices(p);
  size_t indexSum = std::accumulate(right.begin(), right.end(), size_t{0}) +
                    std::accumulate(left.begin(), left.end(), size_t{0});
  if (indexSum + total == r) return out;
  // Part of the spectrum sits at points the sampled minor did not expose
  // as Gaussian-rational roots; the reference route either finds it or
  // names the irreducible factor.
  return elementaryDivisorsByInvariantPolynomials(p);
}

inline KroneckerInvariants kroneckerInvariants(const Pencil& p) {
  KroneckerInvariants inv;
  inv.normalRank = normalRank(p);
  auto [right, left] = minimalIndices(p);
  inv.rightMinimalIndices = std::move(right);
  inv.leftMinimalIndices = std::move(left);
  detail::fastDivisors(p, inv.normalRank, inv.finiteDivisors,
                       inv.infiniteDivisorDegrees);
  if (!inv.bookkeepingConsistent(p.rows(), p.cols())) {
    inv.finiteDivisors.clear();
    inv.infiniteDivisorDegrees.clear();
    ElementaryDivisors divs = elementaryDivisorsByInvariantPolynomials(p);
    inv.finiteDivisors = std::move(divs.finite);
    inv.infiniteDivisorDegrees = std::move(divs.infinite);
    if (!inv.bookkeepingConsistent(p.rows(), p.cols()))
      throw std::logic_error("invariant bookkeeping failed");
  }
  return inv;
}

}  // namespace pencils
