#include <catch2/catch_amalgamated.hpp>

#include "pencils/invariants.hpp"
#include "pencils/kronecker.hpp"
#include "test_util.hpp"

using namespace pencils;

namespace {

Pencil ghzPencil() {
  Matrix r(2, 2), s(2, 2);
  r(0, 0) = Scalar(1);
  s(1, 1) = Scalar(1);
  return {std::move(r), std::move(s)};
}

Pencil wPencil() {
  Matrix r(2, 2), s(2, 2);
  r(0, 1) = Scalar(1);
  r(1, 0) = Scalar(1);
  s(0, 0) = Scalar(1);
  return {std::move(r), std::move(s)};
}

// L_1 = [lambda mu]
Pencil l1Pencil() {
  Matrix r(1, 2), s(1, 2);
  r(0, 1) = Scalar(1);
  s(0, 0) = Scalar(1);
  return {std::move(r), std::move(s)};
}

}  // namespace

TEST_CASE("normal rank") {
  CHECK(normalRank(ghzPencil()) == 2);
  CHECK(normalRank(Pencil{Matrix(3, 4), Matrix(3, 4)}) == 0);
  CHECK(normalRank(l1Pencil()) == 1);
}

TEST_CASE("invariant polynomials") {
  auto e = invariantPolynomials(ghzPencil());
  REQUIRE(e.size() == 2);
  CHECK(e[0] == HomoPoly2::one());
  CHECK(e[1] == HomoPoly2::mu() * HomoPoly2::lambda());

  e = invariantPolynomials(wPencil());
  REQUIRE(e.size() == 2);
  CHECK(e[0] == HomoPoly2::one());
  CHECK(e[1] == HomoPoly2::mu() * HomoPoly2::mu());

  // 1x1 pencil [mu + lambda]
  Matrix r(1, 1), s(1, 1);
  r(0, 0) = Scalar(1);
  s(0, 0) = Scalar(1);
  e = invariantPolynomials(Pencil{r, s});
  REQUIRE(e.size() == 1);
  CHECK(e[0] == HomoPoly2(1, {Scalar(1), Scalar(1)}));
}

TEST_CASE("elementary divisors on small examples") {
  ElementaryDivisors d = elementaryDivisors(ghzPencil());
  REQUIRE(d.finite.size() == 1);
  CHECK(d.finite.at(Scalar(0)) == std::vector<size_t>{1});
  CHECK(d.infinite == std::vector<size_t>{1});

  d = elementaryDivisors(wPencil());
  CHECK(d.finite.empty());
  CHECK(d.infinite == std::vector<size_t>{2});

  // M-block (mu 3 + lambda) I2 + mu H2
  Matrix r(2, 2), s(2, 2);
  r(0, 0) = r(1, 1) = Scalar(3);
  r(0, 1) = Scalar(1);
  s(0, 0) = s(1, 1) = Scalar(1);
  d = elementaryDivisors(Pencil{r, s});
  REQUIRE(d.finite.size() == 1);
  CHECK(d.finite.at(Scalar(3)) == std::vector<size_t>{2});
  CHECK(d.infinite.empty());
}

TEST_CASE("minimal indices on small examples") {
  auto [right, left] = minimalIndices(l1Pencil());
  CHECK(right == std::vector<size_t>{1});
  CHECK(left.empty());

  std::tie(right, left) = minimalIndices(ghzPencil());
  CHECK(right.empty());
  CHECK(left.empty());

  std::tie(right, left) = minimalIndices(Pencil{Matrix(1, 1), Matrix(1, 1)});
  CHECK(right == std::vector<size_t>{0});
  CHECK(left == std::vector<size_t>{0});
}

TEST_CASE("full invariants of block direct sums") {
  KroneckerInvariants inv = kroneckerInvariants(ghzPencil());
  CHECK(inv.normalRank == 2);
  CHECK(inv.rightMinimalIndices.empty());
  CHECK(inv.leftMinimalIndices.empty());
  REQUIRE(inv.finiteDivisors.size() == 1);
  CHECK(inv.finiteDivisors.at(Scalar(0)) == std::vector<size_t>{1});
  CHECK(inv.infiniteDivisorDegrees == std::vector<size_t>{1});

  // [lambda mu] (+) [lambda; mu] as a 3x3 block diagonal.
  Matrix r(3, 3), s(3, 3);
  r(0, 1) = Scalar(1);
  s(0, 0) = Scalar(1);
  s(1, 2) = Scalar(1);
  r(2, 2) = Scalar(1);
  inv = kroneckerInvariants(Pencil{r, s});
  CHECK(inv.normalRank == 2);
  CHECK(inv.rightMinimalIndices == std::vector<size_t>{1});
  CHECK(inv.leftMinimalIndices == std::vector<size_t>{1});
  CHECK(inv.finiteDivisors.empty());
  CHECK(inv.infiniteDivisorDegrees.empty());
}

TEST_CASE("zero index numbers recovered from a canonical pencil") {
  std::mt19937 rng(31);
  KroneckerInvariants gen = testutil::randomInvariants(4, 5, rng);
  Pencil k = canonicalPencil(gen, 4, 5);
  KroneckerInvariants inv = kroneckerInvariants(k);
  CHECK(inv == gen);
  CHECK(inv.zeroIndexNumber() == gen.zeroIndexNumber());
  CHECK(inv.transposeZeroIndexNumber() == gen.transposeZeroIndexNumber());
}

TEST_CASE("invariance under strict equivalence and bookkeeping") {
  std::mt19937 rng(32);
  for (int t = 0; t < 25; ++t) {
    size_t m = 1 + rng() % 5, n = 1 + rng() % 6;
    KroneckerInvariants gen = testutil::randomInvariants(m, n, rng);
    Pencil k = canonicalPencil(gen, m, n);
    Matrix b = testutil::randomInvertible(m, rng);
    Matrix c = testutil::randomInvertible(n, rng);
    Pencil p = conjugate(k, b, c);
    KroneckerInvariants inv = kroneckerInvariants(p);
    CHECK(inv == gen);
    CHECK(inv.bookkeepingConsistent(m, n));
    CHECK(inv.rightMinimalIndices.size() == n - inv.normalRank);
    CHECK(inv.leftMinimalIndices.size() == m - inv.normalRank);
  }
}

TEST_CASE("transpose duality of minimal indices") {
  std::mt19937 rng(33);
  for (int t = 0; t < 15; ++t) {
    size_t m = 1 + rng() % 4, n = 1 + rng() % 5;
    Pencil p = testutil::randomPencil(m, n, rng);
    auto [right, left] = minimalIndices(p);
    auto [rightT, leftT] = minimalIndices(p.transpose());
    CHECK(right == leftT);
    CHECK(left == rightT);
  }
}

TEST_CASE("minor gcd chain divides upward") {
  std::mt19937 rng(34);
  for (int t = 0; t < 10; ++t) {
    size_t m = 2 + rng() % 2, n = 2 + rng() % 3;
    KroneckerInvariants gen = testutil::randomInvariants(m, n, rng);
    Pencil p = conjugate(canonicalPencil(gen, m, n),
                         testutil::randomInvertible(m, rng),
                         testutil::randomInvertible(n, rng));
    size_t r = normalRank(p);
    std::vector<Matrix> evals;
    for (size_t k = 0; k <= r; ++k)
      evals.push_back(p.eval(Scalar(1), Scalar(long(k))));
    HomoPoly2 prev = HomoPoly2::one();
    for (size_t i = 1; i <= r; ++i) {
      HomoPoly2 di = detail::minorGcd(p, i, evals);
      CHECK_NOTHROW(hpolyDivExact(di, prev));
      prev = di;
    }
  }
}

TEST_CASE("fast divisor route agrees with the minor-gcd route") {
  std::mt19937 rng(35);
  for (int t = 0; t < 20; ++t) {
    size_t m = 1 + rng() % 5, n = 1 + rng() % 5;
    KroneckerInvariants gen = testutil::randomInvariants(m, n, rng);
    Pencil p = conjugate(canonicalPencil(gen, m, n),
                         testutil::randomInvertible(m, rng),
                         testutil::randomInvertible(n, rng));
    ElementaryDivisors fast = elementaryDivisors(p);
    ElementaryDivisors slow = elementaryDivisorsByInvariantPolynomials(p);
    CHECK(fast.finite == slow.finite);
    CHECK(fast.infinite == slow.infinite);
  }
}

TEST_CASE("irrational spectrum is a loud error") {
  // det(mu I + lambda S) = mu^2 + 2 lambda^2, irreducible over the
  // Gaussian rationals.
  Matrix r(2, 2), s(2, 2);
  r(0, 0) = r(1, 1) = Scalar(1);
  s(0, 1) = Scalar(2);
  s(1, 0) = Scalar(-1);
  CHECK_THROWS_AS(kroneckerInvariants(Pencil{r, s}), IrrationalSpectrum);
}
