#pragma once
// Finite SLOCC class catalogue for 2 (x) m (x) n systems: enumeration of
// all classes, tensor rank, state classification, non-invertible
// convertibility search, and the conversion hierarchy graph.

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pencils/slocc.hpp"

namespace pencils {

namespace detail {

// Canonical order on degree signatures: larger total degree first, then
// lexicographically larger descending degree vector first.
inline bool signatureBefore(const std::vector<size_t>& a,
                            const std::vector<size_t>& b) {
  size_t ta = std::accumulate(a.begin(), a.end(), size_t{0});
  size_t tb = std::accumulate(b.begin(), b.end(), size_t{0});
  if (ta != tb) return ta > tb;
  std::vector<size_t> da(a.rbegin(), a.rend()), db(b.rbegin(), b.rend());
  return da > db;
}

}  // namespace detail

// A SLOCC class of a 2 (x) m (x) n system, normalized to its effective
// (full-local-rank) dimensions with eigenvalue points relabeled 0, 1, 2
// in canonical signature order.
struct ClassDescriptor {
  size_t m = 0, n = 0;  // effective dimensions (rB, rC)
  KroneckerInvariants inv;
  LocalRanks ranks;
  size_t tensorRank = 0;
  std::string label;
  std::vector<std::string> aliases;

  friend bool operator==(const ClassDescriptor& a, const ClassDescriptor& b) {
    return a.m == b.m && a.n == b.n && a.inv == b.inv;
  }
  friend bool operator!=(const ClassDescriptor& a, const ClassDescriptor& b) {
    return !(a == b);
  }
};

// Tensor rank from a regularized invariant set (no infinite
// divisors). Zero minimal indices stand for zero rows/columns of the
// pencil and contribute nothing.
inline size_t tensorRankFromInvariants(const KroneckerInvariants& inv) {
  if (!inv.infiniteDivisorDegrees.empty())
    throw std::invalid_argument("tensor rank needs a regularized pencil");
  size_t total = inv.regularSize();
  for (size_t e : inv.rightMinimalIndices)
    if (e > 0) total += e + 1;
  for (size_t e : inv.leftMinimalIndices)
    if (e > 0) total += e + 1;
  // delta(J): number of invariant polynomials with a divisor of degree
  // >= 2, i.e. the largest per-point count of such degrees.
  size_t delta = 0;
  for (const auto& [x, degs] : inv.finiteDivisors) {
    (void)x;
    size_t c = std::count_if(degs.begin(), degs.end(),
                             [](size_t d) { return d >= 2; });
    delta = std::max(delta, c);
  }
  return total + delta;
}

inline size_t tensorRank(const State& s) {
  KroneckerInvariants inv = kroneckerInvariants(stateToPencil(s));
  return tensorRankFromInvariants(
      transformInvariants(inv, regularizingLft(inv)));
}

namespace detail {

// Structural Alice rank: 1 exactly when the whole (full-rank) pencil is
// (mu x + lambda) I, i.e. a single point with all degrees 1 and nothing
// else.
inline size_t structuralAliceRank(const KroneckerInvariants& inv, size_t m,
                                  size_t n) {
  if (m != n || !inv.rightMinimalIndices.empty() ||
      !inv.leftMinimalIndices.empty() || !inv.infiniteDivisorDegrees.empty())
    return 2;
  if (inv.finiteDivisors.size() != 1) return 2;
  const auto& degs = inv.finiteDivisors.begin()->second;
  bool allOnes =
      std::all_of(degs.begin(), degs.end(), [](size_t d) { return d == 1; });
  return (allOnes && degs.size() == m) ? 1 : 2;
}

inline std::string buildLabel(const KroneckerInvariants& inv) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&]() {
    if (!first) os << "+";
    first = false;
  };
  auto indexList = [&](const char* name, const std::vector<size_t>& v) {
    if (v.empty()) return;
    sep();
    os << name << "[";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
  };
  indexList("eps", inv.rightMinimalIndices);
  indexList("nu", inv.leftMinimalIndices);
  for (const auto& [x, degs] : inv.finiteDivisors) {
    std::vector<size_t> desc(degs.rbegin(), degs.rend());
    for (size_t d : desc) {
      sep();
      os << "M" << d << "(" << x << ")";
    }
  }
  if (first) os << "zero";
  return os.str();
}

inline std::vector<std::string> knownAliases(const KroneckerInvariants& inv,
                                             size_t m, size_t n, size_t rA) {
  std::vector<std::string> out;
  if (rA == 1) {
    if (m == 1)
      out.push_back("A:B:C");
    else
      out.push_back("A:BC-" + std::to_string(m - 1));
    return out;
  }
  if (m == 1 && n == 2 && inv.rightMinimalIndices == std::vector<size_t>{1})
    out.push_back("AC:B");
  if (m == 2 && n == 1 && inv.leftMinimalIndices == std::vector<size_t>{1})
    out.push_back("AB:C");
  if (m == 2 && n == 2 && inv.finiteDivisors.size() == 2) out.push_back("GHZ");
  if (m == 2 && n == 2 && inv.finiteDivisors.size() == 1 &&
      inv.finiteDivisors.begin()->second == std::vector<size_t>{2})
    out.push_back("W");
  return out;
}

// Descriptor from a regularized, zero-free invariant set in effective
// dimensions (m, n), with points relabeled to 0, 1, 2.
inline ClassDescriptor makeDescriptor(
    const std::vector<std::vector<size_t>>& signatures,
    std::vector<size_t> eps, std::vector<size_t> nu, size_t m, size_t n) {
  ClassDescriptor d;
  d.m = m;
  d.n = n;
  std::sort(eps.begin(), eps.end());
  std::sort(nu.begin(), nu.end());
  d.inv.rightMinimalIndices = std::move(eps);
  d.inv.leftMinimalIndices = std::move(nu);
  std::vector<std::vector<size_t>> groups = signatures;
  std::sort(groups.begin(), groups.end(), signatureBefore);
  for (size_t i = 0; i < groups.size(); ++i) {
    std::sort(groups[i].begin(), groups[i].end());
    d.inv.finiteDivisors[Scalar(long(i))] = groups[i];
  }
  d.inv.normalRank = d.inv.sumRight() + d.inv.sumLeft() + d.inv.regularSize();
  d.ranks.rB = m;
  d.ranks.rC = n;
  d.ranks.rA = structuralAliceRank(d.inv, m, n);
  d.tensorRank = tensorRankFromInvariants(d.inv);
  d.label = buildLabel(d.inv);
  d.aliases = knownAliases(d.inv, m, n, d.ranks.rA);
  return d;
}

}  // namespace detail

// Normalized descriptor of an arbitrary state: regularize, strip the
// zero-block embedding, relabel eigenvalue points canonically.
inline ClassDescriptor classify(const State& s) {
  KroneckerInvariants inv = kroneckerInvariants(stateToPencil(s));
  KroneckerInvariants reg = transformInvariants(inv, regularizingLft(inv));
  if (reg.finiteDivisors.size() > 3)
    throw std::domain_error(
        "state has four or more distinct eigenvalues; its SLOCC class has a "
        "continuous modulus and no finite catalogue entry");
  std::vector<std::vector<size_t>> signatures;
  for (const auto& [x, degs] : reg.finiteDivisors) {
    (void)x;
    signatures.push_back(degs);
  }
  std::vector<size_t> eps, nu;
  for (size_t e : reg.rightMinimalIndices)
    if (e > 0) eps.push_back(e);
  for (size_t e : reg.leftMinimalIndices)
    if (e > 0) nu.push_back(e);
  size_t h = reg.transposeZeroIndexNumber(), g = reg.zeroIndexNumber();
  return detail::makeDescriptor(signatures, eps, nu, s.m() - h, s.n() - g);
}

struct Catalogue {
  bool finite = true;
  std::string infiniteWitness;  // structure admitting >= 4 distinct points
  std::vector<ClassDescriptor> classes;
};

namespace detail {

inline void partitionsInto(size_t total, size_t parts, size_t maxPart,
                           std::vector<size_t>& current,
                           std::vector<std::vector<size_t>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(current);
    return;
  }
  for (size_t first = 1; first <= std::min(total + 1 - parts, maxPart);
       ++first) {
    current.push_back(first);
    partitionsInto(total - first, parts - 1, first, current, out);
    current.pop_back();
  }
}

// Partitions of `total` into exactly `parts` positive parts, descending.
inline std::vector<std::vector<size_t>> partitions(size_t total, size_t parts) {
  std::vector<std::vector<size_t>> out;
  if (parts > total) return out;
  std::vector<size_t> current;
  partitionsInto(total, parts, total, current, out);
  return out;
}

inline std::vector<std::vector<size_t>> allPartitions(size_t total) {
  std::vector<std::vector<size_t>> out;
  for (size_t parts = 1; parts <= total; ++parts)
    for (auto& p : partitions(total, parts)) out.push_back(p);
  return out;
}

// Multisets of at most three nonempty signatures with the given total
// degree, generated in non-increasing signature order.
inline std::vector<std::vector<std::vector<size_t>>> signatureMultisets(
    size_t total) {
  std::vector<std::vector<std::vector<size_t>>> out;
  if (total == 0) {
    out.push_back({});
    return out;
  }
  std::vector<std::vector<size_t>> stack;
  auto recurse = [&](auto&& self, size_t remaining) -> void {
    if (remaining == 0) {
      out.push_back(stack);
      return;
    }
    if (stack.size() == 3) return;
    for (size_t t = 1; t <= remaining; ++t) {
      for (const auto& sig : allPartitions(t)) {
        if (!stack.empty() && signatureBefore(sig, stack.back())) continue;
        stack.push_back(sig);
        self(self, remaining - t);
        stack.pop_back();
      }
    }
  };
  recurse(recurse, total);
  return out;
}

}  // namespace detail

// All finite SLOCC classes with local ranks at most (2, m, n), each given
// in its effective dimensions. Returns an infinite-families report when
// some admissible structure carries four or more distinct eigenvalues.
inline Catalogue enumerateClasses(size_t m, size_t n) {
  Catalogue cat;
  if (std::min(m, n) >= 4) {
    cat.finite = false;
    cat.infiniteWitness =
        "regular 4x4 part M1(x1)+M1(x2)+M1(x3)+M1(x4) admits four distinct "
        "eigenvalues, a continuous cross-ratio modulus";
    return cat;
  }
  for (size_t em = 1; em <= m; ++em) {
    for (size_t en = 1; en <= std::min(n, 2 * em); ++en) {
      if (em > 2 * en) continue;
      // Full-local-rank structures in (em, en): no zero minimal indices;
      // block bookkeeping em = sum eps + sum (nu + 1) + l and
      // en = sum (eps + 1) + sum nu + l.
      size_t maxL = std::min(em, en);
      for (size_t l = 0; l <= maxL; ++l) {
        long rowRem = long(em - l), colRem = long(en - l);
        for (size_t p = 0; p <= size_t(std::max(rowRem, colRem)); ++p) {
          long q = long(p) - (colRem - rowRem);
          if (q < 0) continue;
          long sumBudget = rowRem - long(q) - long(q);  // sum eps + sum nu
          long needed = long(p) + q;                    // each index >= 1
          long sums = rowRem - long(q);                 // sum eps + sum nu
          if (sums < needed) continue;
          // Split sums between eps (p parts) and nu (q parts).
          (void)sumBudget;
          for (long se = p; se <= sums - q; ++se) {
            long sn = sums - se;
            if ((q == 0 && sn != 0) || (p == 0 && se != 0)) continue;
            auto epsParts = p == 0 ? std::vector<std::vector<size_t>>{{}}
                                   : detail::partitions(size_t(se), p);
            auto nuParts = q == 0 ? std::vector<std::vector<size_t>>{{}}
                                  : detail::partitions(size_t(sn), size_t(q));
            if (epsParts.empty() || nuParts.empty()) continue;
            for (const auto& eps : epsParts)
              for (const auto& nu : nuParts)
                for (const auto& sigs : detail::signatureMultisets(l)) {
                  ClassDescriptor d =
                      detail::makeDescriptor(sigs, eps, nu, em, en);
                  if (!d.inv.bookkeepingConsistent(em, en)) continue;
                  cat.classes.push_back(std::move(d));
                }
            if (p == 0) break;  // se loop degenerate
          }
        }
      }
    }
  }
  return cat;
}

// Deterministic exact representative: the canonical pencil of the
// descriptor, read back as a state.
inline State representativeState(const ClassDescriptor& d) {
  return pencilToState(canonicalPencil(d.inv, d.m, d.n));
}

struct ConvertVerdict {
  enum class Tag { Convertible, Obstructed, Undecided };
  Tag tag = Tag::Undecided;
  std::string reason;  // "local-rank" | "tensor-rank" | "budget exhausted"
  // Witness (Convertible only): singular local maps taking the source
  // representative to a state of the target class, plus the residual
  // invertible equivalence onto the embedded target representative.
  Matrix aliceOp, bobOp, charlieOp;
  std::optional<SloccWitness> residual;
};

namespace detail {

// Column/row modification candidates: a deleted-index subset plus
// coefficients adding multiples of deleted lines to the kept ones.
struct LineModification {
  std::vector<size_t> deleted;
  // coeff[kept position][deleted position]
  std::vector<std::vector<Scalar>> coeff;
};

inline std::vector<std::vector<size_t>> subsetsOfSize(size_t n, size_t k) {
  std::vector<std::vector<size_t>> out;
  std::vector<size_t> idx(k);
  if (k == 0) {
    out.push_back({});
    return out;
  }
  if (k > n) return out;
  std::iota(idx.begin(), idx.end(), 0);
  out.push_back(idx);
  while (nextCombination(idx, n)) out.push_back(idx);
  return out;
}

// The structured value grid of the search; known hand-built witnesses use
// small half-integers.
inline const std::vector<Scalar>& gridValues() {
  static const std::vector<Scalar> values = {
      Scalar(1),      Scalar(-1),     Scalar(2),     Scalar(-2),
      Scalar(1, 2),   Scalar(-1, 2),  Scalar(3, 2),  Scalar(-3, 2)};
  return values;
}

// Enumerate coefficient tuples of the given length: zero tuple, then
// tuples with 1, 2, ... nonzero grid entries, then seeded random
// rationals. Returns at most `cap` tuples.
inline std::vector<std::vector<Scalar>> coefficientTuples(size_t length,
                                                          size_t cap,
                                                          std::mt19937& rng) {
  std::vector<std::vector<Scalar>> out;
  out.push_back(std::vector<Scalar>(length, Scalar(0)));
  const auto& grid = gridValues();
  for (size_t nz = 1; nz <= length && out.size() < cap; ++nz) {
    for (const auto& positions : subsetsOfSize(length, nz)) {
      std::vector<size_t> choice(nz, 0);
      while (out.size() < cap) {
        std::vector<Scalar> tuple(length, Scalar(0));
        for (size_t i = 0; i < nz; ++i) tuple[positions[i]] = grid[choice[i]];
        out.push_back(std::move(tuple));
        size_t pos = nz;
        while (pos > 0 && ++choice[pos - 1] == grid.size())
          choice[--pos] = 0;
        if (pos == 0) break;
      }
      if (out.size() >= cap) break;
    }
  }
  while (out.size() < cap) {
    std::vector<Scalar> tuple(length);
    for (auto& v : tuple) {
      long num = long(rng() % 9) - 4;
      long den = 1 + long(rng() % 3);
      v = Scalar(num, den);
    }
    out.push_back(std::move(tuple));
  }
  return out;
}

// Singular transformation matrix: identity on kept lines, coefficients
// feeding deleted lines into kept ones, deleted lines zeroed.
inline Matrix modificationMatrix(size_t n, const LineModification& mod) {
  Matrix t(n, n);
  std::vector<bool> gone(n, false);
  for (size_t i : mod.deleted) gone[i] = true;
  size_t keptPos = 0;
  for (size_t j = 0; j < n; ++j) {
    if (gone[j]) continue;
    t(j, j) = Scalar(1);
    for (size_t k = 0; k < mod.deleted.size(); ++k)
      t(mod.deleted[k], j) = mod.coeff[keptPos][k];
    ++keptPos;
  }
  return t;
}

inline std::vector<LineModification> lineCandidates(size_t n, size_t drop,
                                                    size_t cap,
                                                    std::mt19937& rng) {
  std::vector<LineModification> out;
  if (drop == 0) {
    out.push_back({{}, {}});
    return out;
  }
  auto subsets = subsetsOfSize(n, drop);
  size_t kept = n - drop;
  size_t perSubset = std::max<size_t>(1, cap / std::max<size_t>(1, subsets.size()));
  for (const auto& deleted : subsets) {
    for (auto& tuple : coefficientTuples(kept * drop, perSubset, rng)) {
      LineModification mod;
      mod.deleted = deleted;
      mod.coeff.resize(kept);
      for (size_t i = 0; i < kept; ++i)
        mod.coeff[i] = std::vector<Scalar>(tuple.begin() + long(i * drop),
                                           tuple.begin() + long((i + 1) * drop));
      out.push_back(std::move(mod));
    }
  }
  return out;
}

inline State embeddedRepresentative(const ClassDescriptor& d, size_t m,
                                    size_t n) {
  State rep = representativeState(d);
  Matrix r(m, n), s(m, n);
  for (size_t i = 0; i < rep.m(); ++i)
    for (size_t j = 0; j < rep.n(); ++j) {
      r(i, j) = rep.R(i, j);
      s(i, j) = rep.S(i, j);
    }
  return {std::move(r), std::move(s)};
}

}  // namespace detail

// Semi-decision for non-invertible conversion: obstruction checks, then a budgeted
// search over column/row modifications (and an Alice projection when her
// rank must drop). Soundness is absolute: every Convertible verdict
// carries an end-to-end verified witness. Undecided is an honest verdict.
inline ConvertVerdict convertibility(const ClassDescriptor& src,
                                     const ClassDescriptor& dst, size_t budget,
                                     unsigned seed,
                                     bool tensorRankObstruction = true) {
  if (src == dst)
    throw std::invalid_argument("convertibility needs distinct classes");
  ConvertVerdict out;
  if (dst.ranks.rA > src.ranks.rA || dst.ranks.rB > src.ranks.rB ||
      dst.ranks.rC > src.ranks.rC) {
    out.tag = ConvertVerdict::Tag::Obstructed;
    out.reason = "local-rank";
    return out;
  }
  if (dst.ranks == src.ranks) {
    // A conversion preserving all local ranks would be invertible, hence
    // an equivalence; distinct classes cannot be related that way.
    out.tag = ConvertVerdict::Tag::Obstructed;
    out.reason = "local-rank";
    return out;
  }
  if (tensorRankObstruction && dst.tensorRank > src.tensorRank) {
    out.tag = ConvertVerdict::Tag::Obstructed;
    out.reason = "tensor-rank";
    return out;
  }

  State source = representativeState(src);
  size_t m1 = src.m, n1 = src.n;
  std::mt19937 rng(seed);
  size_t spent = 0;

  auto finish = [&](Matrix alice, Matrix bob, Matrix charlie,
                    const State& produced) -> bool {
    ClassDescriptor got;
    try {
      got = classify(produced);
    } catch (const IrrationalSpectrum&) {
      return false;
    } catch (const std::domain_error&) {
      return false;
    }
    if (got != dst) return false;
    EquivVerdict residual =
        sloccEquivalent(produced, detail::embeddedRepresentative(dst, m1, n1));
    if (!residual.equivalent) return false;  // cannot happen; same class
    out.tag = ConvertVerdict::Tag::Convertible;
    out.aliceOp = std::move(alice);
    out.bobOp = std::move(bob);
    out.charlieOp = std::move(charlie);
    out.residual = std::move(residual.witness);
    return true;
  };

  if (dst.ranks.rA < src.ranks.rA) {
    // Alice projects; the class of |0>(alpha R + beta S) is fixed by the
    // matrix rank, which must equal dst's Schmidt rank.
    size_t target = dst.m;
    std::vector<std::pair<Scalar, Scalar>> dirs = {{Scalar(1), Scalar(0)},
                                                   {Scalar(0), Scalar(1)}};
    for (const Scalar& v : detail::gridValues()) dirs.push_back({Scalar(1), v});
    while (spent < budget) {
      std::pair<Scalar, Scalar> ab;
      if (spent < dirs.size()) {
        ab = dirs[spent];
      } else {
        ab = {Scalar(1), Scalar(long(rng() % 9) - 4, 1 + long(rng() % 3))};
      }
      ++spent;
      Matrix mat(m1, n1);
      for (size_t i = 0; i < m1; ++i)
        for (size_t j = 0; j < n1; ++j)
          mat(i, j) = ab.first * source.R(i, j) + ab.second * source.S(i, j);
      Matrix work = mat;
      std::vector<size_t> pivots = rrefInPlace(work);
      if (pivots.size() < target) continue;
      // Keep the first `target` pivot columns, zero the rest.
      Matrix charlieT(n1, n1);
      for (size_t k = 0; k < target; ++k)
        charlieT(pivots[k], pivots[k]) = Scalar(1);
      Matrix projected = mat * charlieT;
      if (projected.isZero()) continue;
      Matrix alice(2, 2);
      alice(0, 0) = ab.first;
      alice(1, 0) = ab.second;
      State produced{projected, Matrix(m1, n1)};
      if (finish(std::move(alice), Matrix::identity(m1),
                 charlieT.transpose(), produced))
        return out;
    }
    out.tag = ConvertVerdict::Tag::Undecided;
    out.reason = "budget exhausted";
    return out;
  }

  size_t dropRows = m1 - dst.m, dropCols = n1 - dst.n;
  auto colMods = detail::lineCandidates(n1, dropCols, budget, rng);
  auto rowMods = detail::lineCandidates(m1, dropRows, budget, rng);
  Pencil p = stateToPencil(source);
  // Diagonal sweep so cheap candidates on both sides come first.
  for (size_t total = 0;
       total < colMods.size() + rowMods.size() && spent < budget; ++total) {
    for (size_t ci = std::min(total, colMods.size() - 1);; --ci) {
      size_t ri = total - ci;
      if (ri >= rowMods.size()) {
        if (ci == 0) break;
        continue;
      }
      if (++spent > budget) break;
      Matrix charlieT = detail::modificationMatrix(n1, colMods[ci]);
      Matrix bob = detail::modificationMatrix(m1, rowMods[ri]).transpose();
      Pencil modified{bob * p.R * charlieT, bob * p.S * charlieT};
      if (!modified.isZero()) {
        State produced = pencilToState(modified);
        if (finish(Matrix::identity(2), bob, charlieT.transpose(), produced))
          return out;
      }
      if (ci == 0) break;
    }
  }
  out.tag = ConvertVerdict::Tag::Undecided;
  out.reason = "budget exhausted";
  return out;
}

struct Hierarchy {
  Catalogue catalogue;
  struct Edge {
    size_t src, dst;  // indices into catalogue.classes
    ConvertVerdict verdict;
  };
  std::vector<Edge> edges;
  std::vector<std::pair<size_t, size_t>> undecided;
};

inline Hierarchy hierarchy(size_t m, size_t n, size_t budget, unsigned seed,
                           bool tensorRankObstruction = true) {
  Hierarchy h;
  h.catalogue = enumerateClasses(m, n);
  if (!h.catalogue.finite) return h;
  const auto& classes = h.catalogue.classes;
  for (size_t i = 0; i < classes.size(); ++i)
    for (size_t j = 0; j < classes.size(); ++j) {
      if (i == j) continue;
      ConvertVerdict v = convertibility(classes[i], classes[j], budget, seed,
                                        tensorRankObstruction);
      if (v.tag == ConvertVerdict::Tag::Convertible)
        h.edges.push_back({i, j, std::move(v)});
      else if (v.tag == ConvertVerdict::Tag::Undecided)
        h.undecided.push_back({i, j});
    }
  return h;
}

}  // namespace pencils
