#pragma once
// The quantum layer: state <-> pencil correspondence, local ranks, Alice's
// Moebius action on divisors, regularization, and the full SLOCC
// equivalence decision with a constructive, exactly verified witness.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pencils/kronecker.hpp"

namespace pencils {

struct DegenerateTriple : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// |Psi> = |0>|R> + |1>|S>; amplitudes a[0][j][k] = R(j,k), a[1][j][k] = S(j,k).
struct State {
  Matrix R, S;

  State() = default;
  State(Matrix r, Matrix s) : R(std::move(r)), S(std::move(s)) {
    if (R.rows() != S.rows() || R.cols() != S.cols())
      throw DimensionMismatch("state slices differ in shape");
    if (R.isZero() && S.isZero())
      throw std::invalid_argument("state must not be all-zero");
  }

  size_t m() const { return R.rows(); }
  size_t n() const { return R.cols(); }

  friend bool operator==(const State& a, const State& b) {
    return a.R == b.R && a.S == b.S;
  }
};

inline Pencil stateToPencil(const State& s) { return {s.R, s.S}; }
inline State pencilToState(const Pencil& p) {
  if (p.isZero()) throw std::invalid_argument("zero pencil has no state");
  return {p.R, p.S};
}

// Alice's operator [[a,b],[c,d]], acting on indeterminates as
// (mu, lambda) -> (a mu + b lambda, c mu + d lambda) and on divisor
// points as x -> (a x + c)/(b x + d).
struct LFT {
  Scalar a, b, c, d;

  LFT() : a(1), b(0), c(0), d(1) {}
  LFT(Scalar a_, Scalar b_, Scalar c_, Scalar d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (determinant().isZero())
      throw std::invalid_argument("LFT must be invertible");
  }

  Scalar determinant() const { return a * d - b * c; }

  Matrix asMatrix() const {
    Matrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
  }
  static LFT fromMatrix(const Matrix& m) {
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
  }

  LFT inverseLft() const {
    Scalar det = determinant();
    return {d / det, -b / det, -c / det, a / det};
  }

  ProjectivePoint apply(const ProjectivePoint& p) const {
    if (p.infinite) {
      if (b.isZero()) return ProjectivePoint::infinity();
      return ProjectivePoint::finitePoint(a / b);
    }
    Scalar den = b * p.x + d;
    if (den.isZero()) return ProjectivePoint::infinity();
    return ProjectivePoint::finitePoint((a * p.x + c) / den);
  }
};

// Applying `first` and then `second` to a state equals applying the
// composite with Alice matrix first * second.
inline LFT composeStateOps(const LFT& first, const LFT& second) {
  return LFT::fromMatrix(first.asMatrix() * second.asMatrix());
}

inline Pencil applyLftToPencil(const Pencil& p, const LFT& t) {
  Matrix r(p.rows(), p.cols()), s(p.rows(), p.cols());
  for (size_t i = 0; i < p.rows(); ++i)
    for (size_t j = 0; j < p.cols(); ++j) {
      r(i, j) = t.a * p.R(i, j) + t.c * p.S(i, j);
      s(i, j) = t.b * p.R(i, j) + t.d * p.S(i, j);
    }
  return {std::move(r), std::move(s)};
}

struct SloccWitness {
  Matrix A;  // 2x2
  Matrix B;  // m x m
  Matrix C;  // n x n
};

inline State applySlocc(const State& s, const SloccWitness& w) {
  if (w.B.cols() != s.m() || w.C.cols() != s.n() || w.A.rows() != 2 ||
      w.A.cols() != 2)
    throw DimensionMismatch("witness shapes do not match state");
  Matrix ct = w.C.transpose();
  Matrix br = w.B * s.R * ct, bs = w.B * s.S * ct;
  const Scalar &a = w.A(0, 0), &b = w.A(0, 1), &c = w.A(1, 0), &d = w.A(1, 1);
  Matrix r(s.m(), s.n()), sm(s.m(), s.n());
  for (size_t i = 0; i < s.m(); ++i)
    for (size_t j = 0; j < s.n(); ++j) {
      r(i, j) = a * br(i, j) + c * bs(i, j);
      sm(i, j) = b * br(i, j) + d * bs(i, j);
    }
  return {std::move(r), std::move(sm)};
}

inline SloccWitness composeWitnesses(const SloccWitness& first,
                                     const SloccWitness& second) {
  return {first.A * second.A, second.B * first.B, second.C * first.C};
}

// Equality up to one global nonzero scalar factor.
inline bool statesEqualUpToScale(const State& a, const State& b) {
  if (a.m() != b.m() || a.n() != b.n()) return false;
  std::optional<Scalar> factor;
  auto scan = [&](const Matrix& x, const Matrix& y) {
    for (size_t i = 0; i < x.rows(); ++i)
      for (size_t j = 0; j < x.cols(); ++j) {
        if (y(i, j).isZero()) {
          if (!x(i, j).isZero()) return false;
          continue;
        }
        if (x(i, j).isZero()) return false;
        Scalar f = x(i, j) / y(i, j);
        if (!factor)
          factor = f;
        else if (*factor != f)
          return false;
      }
    return true;
  };
  return scan(a.R, b.R) && scan(a.S, b.S);
}

struct LocalRanks {
  size_t rA = 0, rB = 0, rC = 0;

  friend bool operator==(const LocalRanks& a, const LocalRanks& b) {
    return a.rA == b.rA && a.rB == b.rB && a.rC == b.rC;
  }
};

// rA = dim span{R, S}; rB = m - h and rC = n - g with (g, h) the zero
// index numbers of the state's pencil.
inline LocalRanks localRanks(const State& s) {
  Matrix span(2, s.m() * s.n());
  for (size_t i = 0; i < s.m(); ++i)
    for (size_t j = 0; j < s.n(); ++j) {
      span(0, i * s.n() + j) = s.R(i, j);
      span(1, i * s.n() + j) = s.S(i, j);
    }
  auto [right, left] = minimalIndices(stateToPencil(s));
  size_t g = std::count(right.begin(), right.end(), size_t{0});
  size_t h = std::count(left.begin(), left.end(), size_t{0});
  return {rank(span), s.m() - h, s.n() - g};
}

// Divisor points move by the Moebius map; minimal indices and the normal
// rank are untouched by Alice.
inline KroneckerInvariants transformInvariants(const KroneckerInvariants& inv,
                                               const LFT& t) {
  KroneckerInvariants out;
  out.normalRank = inv.normalRank;
  out.rightMinimalIndices = inv.rightMinimalIndices;
  out.leftMinimalIndices = inv.leftMinimalIndices;
  auto place = [&](const ProjectivePoint& image,
                   const std::vector<size_t>& degrees) {
    if (image.infinite) {
      out.infiniteDivisorDegrees.insert(out.infiniteDivisorDegrees.end(),
                                        degrees.begin(), degrees.end());
    } else {
      auto& slot = out.finiteDivisors[image.x];
      slot.insert(slot.end(), degrees.begin(), degrees.end());
    }
  };
  if (!inv.infiniteDivisorDegrees.empty())
    place(t.apply(ProjectivePoint::infinity()), inv.infiniteDivisorDegrees);
  for (const auto& [x, degrees] : inv.finiteDivisors)
    place(t.apply(ProjectivePoint::finitePoint(x)), degrees);
  std::sort(out.infiniteDivisorDegrees.begin(),
            out.infiniteDivisorDegrees.end());
  for (auto& [x, degrees] : out.finiteDivisors) {
    (void)x;
    std::sort(degrees.begin(), degrees.end());
  }
  return out;
}

// Deterministic LFT sending every divisor to a finite point: (1,1,0,d)
// scanning d = 1, 2, ... for the first d with no finite point at -d.
inline LFT regularizingLft(const KroneckerInvariants& inv) {
  for (long d = 1;; ++d) {
    bool clash = false;
    for (const auto& [x, degrees] : inv.finiteDivisors) {
      (void)degrees;
      if (x == Scalar(-d)) {
        clash = true;
        break;
      }
    }
    if (!clash) return {Scalar(1), Scalar(1), Scalar(0), Scalar(d)};
  }
}

// The unique (up to scale) LFT with (a x_i + c)/(b x_i + d) = y_i, from
// the four 3x3 determinants; normalized so the first nonzero of a,b,c,d
// is 1.
inline LFT lftFromThreePairs(
    const std::array<std::pair<Scalar, Scalar>, 3>& pairs) {
  const auto& [x1, y1] = pairs[0];
  const auto& [x2, y2] = pairs[1];
  const auto& [x3, y3] = pairs[2];
  if (x1 == x2 || x1 == x3 || x2 == x3 || y1 == y2 || y1 == y3 || y2 == y3)
    throw DegenerateTriple("LFT interpolation needs distinct points");
  auto det3 = [](const Scalar& a11, const Scalar& a12, const Scalar& a13,
                 const Scalar& a21, const Scalar& a22, const Scalar& a23,
                 const Scalar& a31, const Scalar& a32, const Scalar& a33) {
    return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
           a13 * (a21 * a32 - a22 * a31);
  };
  Scalar one(1);
  Scalar a = det3(x1 * y1, y1, one, x2 * y2, y2, one, x3 * y3, y3, one);
  Scalar c = det3(x1 * y1, x1, y1, x2 * y2, x2, y2, x3 * y3, x3, y3);
  Scalar b = det3(x1, y1, one, x2, y2, one, x3, y3, one);
  Scalar d = det3(x1 * y1, x1, one, x2 * y2, x2, one, x3 * y3, x3, one);
  Scalar scale;
  for (const Scalar* s : {&a, &b, &c, &d}) {
    if (!s->isZero()) {
      scale = s->inverse();
      break;
    }
  }
  return {a * scale, b * scale, c * scale, d * scale};
}

struct EquivVerdict {
  bool equivalent = false;
  std::optional<SloccWitness> witness;
  std::string reason;  // differing invariant or "no LFT matches"
};

namespace detail {

using PointSig = std::pair<Scalar, std::vector<size_t>>;  // (x, degrees)

inline std::vector<PointSig> pointSignatures(const KroneckerInvariants& inv) {
  std::vector<PointSig> out(inv.finiteDivisors.begin(),
                            inv.finiteDivisors.end());
  return out;  // map order = canonical eigenvalue order
}

inline bool sameSignatureMultiset(std::vector<PointSig> a,
                                  std::vector<PointSig> b) {
  auto bySig = [](const PointSig& p, const PointSig& q) {
    return p.second < q.second;
  };
  std::sort(a.begin(), a.end(), bySig);
  std::sort(b.begin(), b.end(), bySig);
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].second != b[i].second) return false;
  return true;
}

// Fresh distinct integer points avoiding a given list.
inline std::vector<Scalar> freshPoints(const std::vector<PointSig>& taken,
                                       size_t count) {
  std::vector<Scalar> out;
  for (long v = 0; out.size() < count; ++v) {
    Scalar candidate(v);
    bool used = std::any_of(taken.begin(), taken.end(), [&](const PointSig& p) {
      return p.first == candidate;
    });
    if (!used) out.push_back(candidate);
  }
  return out;
}

// Does t induce a signature-preserving bijection from side-1 points onto
// side-2 points? Counts are equal, t is injective, so landing inside with
// matching signatures suffices.
inline bool inducesMatching(const LFT& t, const std::vector<PointSig>& xs,
                            const std::vector<PointSig>& ys) {
  for (const auto& [x, sig] : xs) {
    ProjectivePoint image = t.apply(ProjectivePoint::finitePoint(x));
    if (image.infinite) return false;
    auto it = std::find_if(ys.begin(), ys.end(), [&](const PointSig& p) {
      return p.first == image.x;
    });
    if (it == ys.end() || it->second != sig) return false;
  }
  return true;
}

// Step (II)-(III): enumerate ordered trios of distinct side-2 points whose
// signatures match the fixed side-1 trio, in canonical order.
inline std::optional<LFT> matchByTrios(const std::vector<PointSig>& xs,
                                       const std::vector<PointSig>& ys) {
  for (size_t i = 0; i < ys.size(); ++i) {
    if (ys[i].second != xs[0].second) continue;
    for (size_t j = 0; j < ys.size(); ++j) {
      if (j == i || ys[j].second != xs[1].second) continue;
      for (size_t k = 0; k < ys.size(); ++k) {
        if (k == i || k == j || ys[k].second != xs[2].second) continue;
        LFT t = lftFromThreePairs({{{xs[0].first, ys[i].first},
                                    {xs[1].first, ys[j].first},
                                    {xs[2].first, ys[k].first}}});
        if (inducesMatching(t, xs, ys)) return t;
      }
    }
  }
  return std::nullopt;
}

// Fewer than three distinct points on each side: pair by signature and pad
// with fresh points (any k <= 3 distinct points map to any k distinct
// points under some LFT).
inline std::optional<LFT> matchSmall(const std::vector<PointSig>& xs,
                                     const std::vector<PointSig>& ys) {
  if (!sameSignatureMultiset(xs, ys)) return std::nullopt;
  std::vector<PointSig> xsSorted = xs, ysSorted = ys;
  auto bySigThenPoint = [](const PointSig& p, const PointSig& q) {
    if (p.second != q.second) return p.second < q.second;
    return p.first < q.first;
  };
  std::sort(xsSorted.begin(), xsSorted.end(), bySigThenPoint);
  std::sort(ysSorted.begin(), ysSorted.end(), bySigThenPoint);
  std::array<std::pair<Scalar, Scalar>, 3> pairs;
  size_t k = xsSorted.size();
  for (size_t idx = 0; idx < k; ++idx)
    pairs[idx] = {xsSorted[idx].first, ysSorted[idx].first};
  std::vector<Scalar> padX = freshPoints(xsSorted, 3 - k);
  std::vector<Scalar> padY = freshPoints(ysSorted, 3 - k);
  for (size_t idx = k; idx < 3; ++idx)
    pairs[idx] = {padX[idx - k], padY[idx - k]};
  LFT t = lftFromThreePairs(pairs);
  if (!inducesMatching(t, xs, ys)) return std::nullopt;  // defensive; k <= 2
  return t;
}

}  // namespace detail

// Three-step equivalence decision (invariants, regularization, strict
// equivalence solve), returning a
// verified constructive witness on acceptance.
inline EquivVerdict sloccEquivalent(const State& s1, const State& s2) {
  if (s1.m() != s2.m() || s1.n() != s2.n())
    throw DimensionMismatch("states live in different dimensions");
  EquivVerdict out;

  Pencil p1 = stateToPencil(s1), p2 = stateToPencil(s2);
  KroneckerInvariants inv1 = kroneckerInvariants(p1);
  KroneckerInvariants inv2 = kroneckerInvariants(p2);
  if (inv1.normalRank != inv2.normalRank) {
    out.reason = "normal rank";
    return out;
  }
  if (inv1.rightMinimalIndices != inv2.rightMinimalIndices ||
      inv1.leftMinimalIndices != inv2.leftMinimalIndices) {
    out.reason = "minimal indices";
    return out;
  }

  LFT t1 = regularizingLft(inv1), t2 = regularizingLft(inv2);
  KroneckerInvariants inv1r = transformInvariants(inv1, t1);
  KroneckerInvariants inv2r = transformInvariants(inv2, t2);
  std::vector<detail::PointSig> xs = detail::pointSignatures(inv1r);
  std::vector<detail::PointSig> ys = detail::pointSignatures(inv2r);
  if (xs.size() != ys.size() || !detail::sameSignatureMultiset(xs, ys)) {
    out.reason = "divisor signatures";
    return out;
  }

  std::optional<LFT> matcher = xs.size() >= 3 ? detail::matchByTrios(xs, ys)
                                              : detail::matchSmall(xs, ys);
  if (!matcher) {
    out.reason = "no LFT matches";
    return out;
  }

  Pencil p1m = applyLftToPencil(applyLftToPencil(p1, t1), *matcher);
  Pencil p2r = applyLftToPencil(p2, t2);
  StrictEquivResult se = strictEquiv(p1m, p2r);
  if (!se.equivalent)
    throw std::logic_error("matched invariants but pencils not equivalent");

  LFT alice = composeStateOps(composeStateOps(t1, *matcher), t2.inverseLft());
  SloccWitness witness{alice.asMatrix(), se.B, se.C};
  if (!statesEqualUpToScale(applySlocc(s1, witness), s2))
    throw std::logic_error("witness verification failed");
  out.equivalent = true;
  out.witness = std::move(witness);
  return out;
}

}  // namespace pencils
