#pragma once
// Gaussian integers: just enough arithmetic to enumerate divisors, which
// drives the exact rational-root search for linear factors.

#include <gmpxx.h>

#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pencils {

struct GaussInt {
  mpz_class a, b;  // a + b i

  bool isZero() const { return a == 0 && b == 0; }
  mpz_class norm() const { return a * a + b * b; }

  friend GaussInt operator*(const GaussInt& x, const GaussInt& y) {
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend bool operator<(const GaussInt& x, const GaussInt& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
  friend bool operator==(const GaussInt& x, const GaussInt& y) {
    return x.a == y.a && x.b == y.b;
  }
};

namespace detail {

// Exact quotient z / w in Z[i], or false if w does not divide z.
inline bool gaussDivide(const GaussInt& z, const GaussInt& w, GaussInt& out) {
  mpz_class n = w.norm();
  if (n == 0) return false;
  mpz_class ra = z.a * w.a + z.b * w.b;
  mpz_class rb = z.b * w.a - z.a * w.b;
  if (ra % n != 0 || rb % n != 0) return false;
  out = {ra / n, rb / n};
  return true;
}

inline bool isProbablePrime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

// Factor n > 1 into primes: trial division plus Pollard rho for large parts.
inline void factorInteger(mpz_class n, std::map<mpz_class, unsigned>& out) {
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  mpz_class d = 17;
  while (n > 1 && d * d <= n && d < 100000) {
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
    d += 2;
  }
  if (n == 1) return;
  if (isProbablePrime(n)) {
    ++out[n];
    return;
  }
  // Pollard rho (Brent variant would be faster; this suffices here).
  mpz_class x = 2, y = 2, c = 1, g = 1;
  while (true) {
    x = 2;
    y = 2;
    g = 1;
    while (g == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      mpz_class diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (g > 1 && g < n) break;
    c += 1;
  }
  factorInteger(g, out);
  factorInteger(n / g, out);
}

// A solution to a^2 + b^2 = p for prime p = 1 mod 4 (Cornacchia).
inline GaussInt sumOfTwoSquares(const mpz_class& p) {
  // Find x with x^2 = -1 mod p via a quadratic non-residue.
  mpz_class exp = (p - 1) / 4;
  mpz_class x = 0;
  for (mpz_class t = 2;; ++t) {
    mpz_class ls;
    mpz_powm(ls.get_mpz_t(), t.get_mpz_t(), mpz_class((p - 1) / 2).get_mpz_t(),
             p.get_mpz_t());
    if (ls == p - 1) {
      mpz_powm(x.get_mpz_t(), t.get_mpz_t(), exp.get_mpz_t(), p.get_mpz_t());
      break;
    }
  }
  mpz_class r0 = p, r1 = x, bound;
  mpz_sqrt(bound.get_mpz_t(), p.get_mpz_t());
  while (r1 > bound) {
    mpz_class r2 = r0 % r1;
    r0 = r1;
    r1 = r2;
  }
  mpz_class b2 = p - r1 * r1, b;
  mpz_sqrt(b.get_mpz_t(), b2.get_mpz_t());
  if (b * b != b2) throw std::logic_error("Cornacchia failed");
  return {r1, b};
}

}  // namespace detail

// All divisors of z up to unit multiples (each divisor appears with one
// representative; multiply by units at the call site if needed).
inline std::vector<GaussInt> gaussDivisors(const GaussInt& z) {
  if (z.isZero()) throw std::domain_error("divisors of zero");
  std::map<mpz_class, unsigned> nf;
  mpz_class n = z.norm();
  if (n > 1) detail::factorInteger(n, nf);

  // Gaussian prime divisors of z with multiplicities.
  std::vector<std::pair<GaussInt, unsigned>> primes;
  auto addPrime = [&](const GaussInt& pi) {
    GaussInt rem = z, q;
    unsigned mult = 0;
    while (detail::gaussDivide(rem, pi, q)) {
      rem = q;
      ++mult;
    }
    if (mult > 0) primes.push_back({pi, mult});
  };
  for (const auto& [p, e] : nf) {
    (void)e;
    if (p == 2) {
      addPrime({1, 1});
    } else if (p % 4 == 3) {
      addPrime({p, 0});
    } else {
      GaussInt pi = detail::sumOfTwoSquares(p);
      addPrime(pi);
      addPrime({pi.a, -pi.b});
    }
  }

  std::vector<GaussInt> divisors = {{1, 0}};
  for (const auto& [pi, mult] : primes) {
    std::vector<GaussInt> next;
    for (const auto& d : divisors) {
      GaussInt acc = d;
      next.push_back(acc);
      for (unsigned k = 0; k < mult; ++k) {
        acc = acc * pi;
        next.push_back(acc);
      }
    }
    divisors = std::move(next);
  }
  std::set<GaussInt> dedup(divisors.begin(), divisors.end());
  return {dedup.begin(), dedup.end()};
}

}  // namespace pencils
