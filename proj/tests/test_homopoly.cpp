#include <catch2/catch_amalgamated.hpp>

#include "pencils/homopoly.hpp"
#include "test_util.hpp"

using namespace pencils;

namespace {

HomoPoly2 rebuild(const LinearFactorization& f) {
  HomoPoly2 p(f.scale);
  for (size_t k = 0; k < f.muPower; ++k) p = p * HomoPoly2::mu();
  for (const auto& [x, mult] : f.roots)
    for (size_t k = 0; k < mult; ++k) p = p * HomoPoly2::linearAt(x);
  return p * f.residual;
}

}  // namespace

TEST_CASE("construction and evaluation") {
  HomoPoly2 mu = HomoPoly2::mu(), lam = HomoPoly2::lambda();
  CHECK(mu.degree() == 1);
  CHECK((mu * lam).degree() == 2);
  CHECK(HomoPoly2().isZero());
  CHECK((Scalar(0) * mu).isZero());

  // (mu 2 + lambda) at (3, 5) = 11.
  CHECK(HomoPoly2::linearAt(Scalar(2)).eval(Scalar(3), Scalar(5)) ==
        Scalar(11));
  CHECK((mu * mu).eval(Scalar(3), Scalar(7)) == Scalar(9));
}

TEST_CASE("exact division") {
  HomoPoly2 mu = HomoPoly2::mu(), lam = HomoPoly2::lambda();
  HomoPoly2 sum(1, {Scalar(1), Scalar(1)});   // mu + lambda
  HomoPoly2 diff(1, {Scalar(1), Scalar(-1)});  // mu - lambda
  CHECK(hpolyDivExact(sum * diff, sum) == diff);
  CHECK(hpolyDivExact(mu * lam, lam) == mu);
  CHECK_THROWS(hpolyDivExact(mu * mu, sum));
  CHECK_THROWS_AS(hpolyDivExact(mu, HomoPoly2()), ZeroPolynomial);
}

TEST_CASE("gcd on small examples") {
  HomoPoly2 mu = HomoPoly2::mu(), lam = HomoPoly2::lambda();
  CHECK(hpolyGcd(mu * lam, lam * lam) == lam);

  HomoPoly2 p = Scalar(3) * (mu * lam);
  CHECK(hpolyGcd(p, HomoPoly2()) == p.normalized());
  CHECK(hpolyGcd(HomoPoly2(), p) == p.normalized());

  HomoPoly2 sum(1, {Scalar(1), Scalar(1)});
  HomoPoly2 sqDiff(2, {Scalar(1), Scalar(0), Scalar(-1)});  // mu^2 - lambda^2
  HomoPoly2 g = hpolyGcd(sqDiff, sum);
  CHECK(g == sum.normalized());
  // Division oracle: the gcd divides both arguments exactly.
  CHECK_NOTHROW(hpolyDivExact(sqDiff, g));
  CHECK_NOTHROW(hpolyDivExact(sum, g));
}

TEST_CASE("linear factorization on small examples") {
  HomoPoly2 mu = HomoPoly2::mu(), lam = HomoPoly2::lambda();

  LinearFactorization f = hpolyLinearFactorization(mu * lam);
  CHECK(f.muPower == 1);
  REQUIRE(f.roots.size() == 1);
  CHECK(f.roots[0] == std::pair<Scalar, size_t>{Scalar(0), 1});
  CHECK(f.fullyFactored);

  // lambda (mu + lambda) (2 mu + lambda): points 0, 1, 2.
  HomoPoly2 p = lam * HomoPoly2::linearAt(Scalar(1)) *
                HomoPoly2::linearAt(Scalar(2));
  f = hpolyLinearFactorization(p);
  CHECK(f.muPower == 0);
  REQUIRE(f.roots.size() == 3);
  CHECK(f.roots[0] == std::pair<Scalar, size_t>{Scalar(0), 1});
  CHECK(f.roots[1] == std::pair<Scalar, size_t>{Scalar(1), 1});
  CHECK(f.roots[2] == std::pair<Scalar, size_t>{Scalar(2), 1});
  CHECK(f.fullyFactored);

  // mu^2 + 2 lambda^2 has no Gaussian-rational roots.
  HomoPoly2 irr(2, {Scalar(1), Scalar(0), Scalar(2)});
  f = hpolyLinearFactorization(irr);
  CHECK_FALSE(f.fullyFactored);
  CHECK(f.roots.empty());
  CHECK(f.residual.degree() == 2);

  CHECK_THROWS_AS(hpolyLinearFactorization(HomoPoly2()), ZeroPolynomial);
}

TEST_CASE("factorization round trip on random products") {
  std::mt19937 rng(21);
  for (int t = 0; t < 40; ++t) {
    HomoPoly2 p(testutil::randomNonzeroScalar(rng));
    size_t factors = 1 + rng() % 4;
    for (size_t k = 0; k < factors; ++k) {
      switch (rng() % 3) {
        case 0:
          p = p * HomoPoly2::mu();
          break;
        case 1:
          p = p * HomoPoly2::lambda();
          break;
        default:
          p = p * HomoPoly2::linearAt(testutil::randomScalar(rng));
          break;
      }
    }
    LinearFactorization f = hpolyLinearFactorization(p);
    CHECK(f.fullyFactored);
    CHECK(rebuild(f) == p);
  }
}

TEST_CASE("gcd divides both and leaves coprime quotients") {
  std::mt19937 rng(22);
  auto randomProduct = [&](size_t factors) {
    HomoPoly2 p(testutil::randomNonzeroScalar(rng));
    for (size_t k = 0; k < factors; ++k) {
      if (rng() % 4 == 0)
        p = p * HomoPoly2::mu();
      else
        p = p * HomoPoly2::linearAt(Scalar(long(rng() % 4)));
    }
    return p;
  };
  for (int t = 0; t < 30; ++t) {
    HomoPoly2 p = randomProduct(1 + rng() % 4);
    HomoPoly2 q = randomProduct(1 + rng() % 4);
    HomoPoly2 g = hpolyGcd(p, q);
    HomoPoly2 pg = hpolyDivExact(p, g);
    HomoPoly2 qg = hpolyDivExact(q, g);
    CHECK(hpolyGcd(pg, qg).isConstant());
  }
}
