#pragma once
// Homogeneous bivariate polynomials in (mu, lambda) over the Gaussian
// rationals: GCD, exact division, and factorization into mu-powers and
// linear factors (mu*x + lambda) with Gaussian-rational x.

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pencils/gaussint.hpp"
#include "pencils/scalar.hpp"

namespace pencils {

struct ZeroPolynomial : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// coeffs[j] multiplies mu^(degree-j) * lambda^j. The zero polynomial is
// represented uniquely as degree 0 with a single zero coefficient.
class HomoPoly2 {
 public:
  HomoPoly2() : c_{Scalar(0)} {}
  explicit HomoPoly2(Scalar constant) : c_{std::move(constant)} {}
  HomoPoly2(size_t degree, std::vector<Scalar> coeffs) : c_(std::move(coeffs)) {
    if (c_.size() != degree + 1)
      throw std::invalid_argument("coefficient count != degree + 1");
    if (isZero()) c_ = {Scalar(0)};
  }

  static HomoPoly2 one() { return HomoPoly2(Scalar(1)); }
  static HomoPoly2 mu() { return {1, {Scalar(1), Scalar(0)}}; }
  static HomoPoly2 lambda() { return {1, {Scalar(0), Scalar(1)}}; }
  // mu*x + lambda
  static HomoPoly2 linearAt(const Scalar& x) { return {1, {x, Scalar(1)}}; }

  size_t degree() const { return c_.size() - 1; }
  const Scalar& coeff(size_t j) const { return c_[j]; }

  bool isZero() const {
    return std::all_of(c_.begin(), c_.end(),
                       [](const Scalar& s) { return s.isZero(); });
  }
  bool isConstant() const { return degree() == 0; }

  // Largest j with coeffs[j] != 0, i.e. the degree in lambda.
  size_t lambdaDegree() const {
    for (size_t j = c_.size(); j-- > 0;)
      if (!c_[j].isZero()) return j;
    return 0;
  }
  // Multiplicity of mu as a factor.
  size_t muMultiplicity() const {
    if (isZero()) throw ZeroPolynomial("muMultiplicity of zero polynomial");
    return degree() - lambdaDegree();
  }

  Scalar eval(const Scalar& mu, const Scalar& lambda) const {
    // Horner in lambda/mu hybrid: sum c_j mu^(d-j) lambda^j.
    Scalar acc(0), muPow(1);
    std::vector<Scalar> lamPows(c_.size());
    Scalar lp(1);
    for (size_t j = 0; j < c_.size(); ++j) {
      lamPows[j] = lp;
      lp *= lambda;
    }
    for (size_t j = c_.size(); j-- > 0;) {
      if (!c_[j].isZero()) acc += c_[j] * muPow * lamPows[j];
      muPow *= mu;
    }
    return acc;
  }

  friend HomoPoly2 operator*(const HomoPoly2& p, const HomoPoly2& q) {
    if (p.isZero() || q.isZero()) return HomoPoly2();
    std::vector<Scalar> c(p.degree() + q.degree() + 1);
    for (size_t i = 0; i <= p.degree(); ++i) {
      if (p.c_[i].isZero()) continue;
      for (size_t j = 0; j <= q.degree(); ++j)
        if (!q.c_[j].isZero()) c[i + j] += p.c_[i] * q.c_[j];
    }
    return {p.degree() + q.degree(), std::move(c)};
  }
  friend HomoPoly2 operator*(const Scalar& s, const HomoPoly2& p) {
    if (s.isZero() || p.isZero()) return HomoPoly2();
    std::vector<Scalar> c = p.c_;
    for (auto& x : c) x *= s;
    return {p.degree(), std::move(c)};
  }

  friend bool operator==(const HomoPoly2& p, const HomoPoly2& q) {
    return p.c_ == q.c_;
  }
  friend bool operator!=(const HomoPoly2& p, const HomoPoly2& q) {
    return !(p == q);
  }

  // Monic in lambda when lambda appears, else monic in mu.
  HomoPoly2 normalized() const {
    if (isZero()) return HomoPoly2();
    std::vector<Scalar> c = c_;
    Scalar inv = c[lambdaDegree()].inverse();
    for (auto& x : c) x *= inv;
    return {degree(), std::move(c)};
  }

  std::string str() const {
    if (isZero()) return "0";
    std::ostringstream os;
    bool first = true;
    size_t d = degree();
    for (size_t j = 0; j <= d; ++j) {
      if (c_[j].isZero()) continue;
      if (!first) os << " + ";
      first = false;
      bool unit = c_[j].isOne() && !(d == 0);
      if (!unit) os << "(" << c_[j] << ")";
      if (d - j > 0) os << "mu" << (d - j > 1 ? "^" + std::to_string(d - j) : "");
      if (j > 0) os << (d - j > 0 ? "*" : "") << "lambda"
                    << (j > 1 ? "^" + std::to_string(j) : "");
    }
    return os.str();
  }

 private:
  std::vector<Scalar> c_;
};

// Exact division p / q; throws if q does not divide p.
inline HomoPoly2 hpolyDivExact(const HomoPoly2& p, const HomoPoly2& q) {
  if (q.isZero()) throw ZeroPolynomial("division by zero polynomial");
  if (p.isZero()) return HomoPoly2();
  if (p.degree() < q.degree())
    throw std::domain_error("inexact polynomial division");
  size_t dq = q.degree(), dr = p.degree() - dq;
  // Long division treating coeffs as a univariate in lambda with the mu
  // grading implied by homogeneity. Divide from the lambda-leading end.
  size_t lq = q.lambdaDegree();
  std::vector<Scalar> rem(p.degree() + 1), quo(dr + 1);
  for (size_t j = 0; j <= p.degree(); ++j) rem[j] = p.coeff(j);
  Scalar lead = q.coeff(lq).inverse();
  for (size_t j = dr + 1; j-- > 0;) {
    // Target coefficient of lambda^(j + lq).
    Scalar f = rem[j + lq] * lead;
    quo[j] = f;
    if (f.isZero()) continue;
    for (size_t k = 0; k <= dq; ++k) {
      if (j + k >= rem.size()) break;
      rem[j + k] -= f * q.coeff(k);
    }
  }
  for (const auto& x : rem)
    if (!x.isZero()) throw std::domain_error("inexact polynomial division");
  return {dr, std::move(quo)};
}

// Monic-normalized GCD; gcd(p, 0) = normalize(p).
inline HomoPoly2 hpolyGcd(const HomoPoly2& p, const HomoPoly2& q) {
  if (p.isZero()) return q.isZero() ? HomoPoly2() : q.normalized();
  if (q.isZero()) return p.normalized();
  size_t muPow = std::min(p.muMultiplicity(), q.muMultiplicity());
  // Dehomogenize at mu = 1: univariate polynomials in lambda.
  auto univ = [](const HomoPoly2& h) {
    std::vector<Scalar> u(h.lambdaDegree() + 1);
    for (size_t j = 0; j < u.size(); ++j) u[j] = h.coeff(j);
    return u;
  };
  std::vector<Scalar> a = univ(p), b = univ(q);
  auto degOf = [](const std::vector<Scalar>& v) -> long {
    for (size_t j = v.size(); j-- > 0;)
      if (!v[j].isZero()) return static_cast<long>(j);
    return -1;
  };
  while (degOf(b) >= 0) {
    long da = degOf(a), db = degOf(b);
    if (da < db) {
      std::swap(a, b);
      continue;
    }
    Scalar f = a[da] / b[db];
    for (long k = 0; k <= db; ++k) a[da - db + k] -= f * b[k];
    // a now has degree < da; loop continues until remainder vanishes.
    if (degOf(a) < db) std::swap(a, b);
  }
  long dg = degOf(a);
  std::vector<Scalar> g(a.begin(), a.begin() + dg + 1);
  // Re-homogenize and attach the common mu power.
  std::vector<Scalar> c(muPow + dg + 1);
  for (long j = 0; j <= dg; ++j) c[j] = g[j];
  HomoPoly2 result(muPow + dg, std::move(c));
  return result.normalized();
}

// p = scale * mu^muPower * prod (mu x_i + lambda)^mult_i * residual.
struct LinearFactorization {
  size_t muPower = 0;
  std::vector<std::pair<Scalar, size_t>> roots;  // (x_i, multiplicity)
  HomoPoly2 residual;                            // monic, no linear factors
  Scalar scale;
  bool fullyFactored = false;
};

namespace detail {

// Lambda-roots of a univariate polynomial (Gaussian-rational coefficients)
// found by exact rational-root search in Z[i]; deflates as it goes.
inline void rationalRoots(std::vector<Scalar>& u,
                          std::vector<std::pair<Scalar, size_t>>& out) {
  auto degOf = [](const std::vector<Scalar>& v) -> long {
    for (size_t j = v.size(); j-- > 0;)
      if (!v[j].isZero()) return static_cast<long>(j);
    return -1;
  };
  auto evalAt = [&](const std::vector<Scalar>& v, const Scalar& x) {
    Scalar acc(0);
    for (size_t j = v.size(); j-- > 0;) acc = acc * x + v[j];
    return acc;
  };
  auto deflate = [&](std::vector<Scalar>& v, const Scalar& root) {
    long d = degOf(v);
    std::vector<Scalar> q(d);
    Scalar carry(0);
    for (long j = d; j-- > 0;) {
      carry = v[j + 1] + carry * root;
      q[j] = carry;
    }
    v = std::move(q);
  };

  // Strip lambda = 0 roots (divisor point x = 0).
  size_t zeros = 0;
  while (degOf(u) > 0 && u[0].isZero()) {
    u.erase(u.begin());
    ++zeros;
  }
  if (zeros > 0) out.push_back({Scalar(0), zeros});
  if (degOf(u) <= 0) return;

  // Scale to Gaussian-integer coefficients.
  mpz_class lcm = 1;
  for (const auto& s : u) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), s.re().get_den().get_mpz_t());
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), s.im().get_den().get_mpz_t());
  }
  long d = degOf(u);
  auto toGauss = [&](const Scalar& s) -> GaussInt {
    Rational re = s.re() * Rational(lcm), im = s.im() * Rational(lcm);
    return {re.get_num(), im.get_num()};
  };
  GaussInt trailing = toGauss(u[0]), leading = toGauss(u[d]);

  const GaussInt units[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  std::vector<Scalar> candidates;
  for (const auto& num : gaussDivisors(trailing))
    for (const auto& den : gaussDivisors(leading))
      for (const auto& unit : units) {
        GaussInt n = num * unit;
        Scalar root = Scalar(Rational(n.a), Rational(n.b)) /
                      Scalar(Rational(den.a), Rational(den.b));
        candidates.push_back(root);
      }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  for (const auto& root : candidates) {
    if (degOf(u) == 0) break;
    size_t mult = 0;
    while (degOf(u) > 0 && evalAt(u, root).isZero()) {
      deflate(u, root);
      ++mult;
    }
    if (mult > 0) out.push_back({-root, mult});  // lambda-root r <-> x = -r
  }
}

}  // namespace detail

inline LinearFactorization hpolyLinearFactorization(const HomoPoly2& p) {
  if (p.isZero()) throw ZeroPolynomial("factorization of zero polynomial");
  LinearFactorization f;
  f.muPower = p.muMultiplicity();
  std::vector<Scalar> u(p.lambdaDegree() + 1);
  for (size_t j = 0; j < u.size(); ++j) u[j] = p.coeff(j);
  detail::rationalRoots(u, f.roots);
  std::sort(f.roots.begin(), f.roots.end());
  // u is now the residual univariate factor.
  size_t dr = 0;
  for (size_t j = u.size(); j-- > 0;)
    if (!u[j].isZero()) {
      dr = j;
      break;
    }
  f.scale = u[dr];
  std::vector<Scalar> rc(dr + 1);
  Scalar inv = f.scale.inverse();
  for (size_t j = 0; j <= dr; ++j) rc[j] = u[j] * inv;
  f.residual = HomoPoly2(dr, std::move(rc));
  f.fullyFactored = (dr == 0);
  return f;
}

}  // namespace pencils
