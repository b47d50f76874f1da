#pragma once
// Exact Gaussian-rational scalar field: complex numbers with arbitrary
// precision rational real and imaginary parts, backed by GMP.

#include <gmpxx.h>

#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pencils {

using Rational = mpq_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Scalar {
 public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(std::move(re)), im_(0) {}
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  Scalar(long num, long den) : re_(num, den), im_(0) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    re_.canonicalize();
  }

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool isZero() const { return re_ == 0 && im_ == 0; }
  bool isOne() const { return re_ == 1 && im_ == 0; }
  bool isReal() const { return im_ == 0; }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar conj() const { return Scalar(re_, -im_); }

  // |z|^2 as a rational.
  Rational normSq() const { return re_ * re_ + im_ * im_; }

  Scalar inverse() const {
    if (isZero()) throw std::domain_error("division by zero Scalar");
    Rational n = normSq();
    return Scalar(re_ / n, -im_ / n);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return Scalar(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return Scalar(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return Scalar(a.re_ * b.re_ - a.im_ * b.im_,
                  a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    return a * b.inverse();
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) {
    return !(a == b);
  }
  // Lexicographic on (re, im); the canonical eigenvalue order.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    int c = cmp(a.re_, b.re_);
    if (c != 0) return c < 0;
    return cmp(a.im_, b.im_) < 0;
  }

  // Text format: "a/b" or "a/b+c/d i"; integers may omit "/1".
  std::string str() const {
    std::string s = ratStr(re_);
    if (im_ != 0) {
      s += (im_ >= 0 ? "+" : "");
      s += ratStr(im_);
      s += " i";
    }
    return s;
  }

  static Scalar parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.str();
  }

 private:
  static std::string ratStr(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
  }

  Rational re_, im_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

inline Rational parseRational(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw ParseError("empty rational");
  for (size_t k = 0; k < s.size(); ++k) {
    char ch = s[k];
    bool ok = std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' ||
              ((ch == '+' || ch == '-') && k == 0);
    if (!ok) throw ParseError("bad rational: " + std::string(s));
  }
  if (s.front() == '+') s.remove_prefix(1);
  if (s.empty()) throw ParseError("empty rational");
  try {
    Rational r{std::string(s)};
    if (r.get_den() == 0) throw ParseError("zero denominator: " + std::string(s));
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational: " + std::string(s));
  }
}

}  // namespace detail

inline Scalar Scalar::parse(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s.empty()) throw ParseError("empty scalar");
  bool imaginary = false;
  if (s.back() == 'i') {
    imaginary = true;
    s.remove_suffix(1);
    s = detail::trim(s);
    if (s.empty() || s == "+") return Scalar(Rational(0), Rational(1));
    if (s == "-") return Scalar(Rational(0), Rational(-1));
  }
  // Split at the last top-level +/- that is not a leading sign.
  size_t split = std::string_view::npos;
  for (size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  if (!imaginary) {
    if (split != std::string_view::npos)
      throw ParseError("bad scalar: " + std::string(text));
    return Scalar(detail::parseRational(s));
  }
  if (split == std::string_view::npos)
    return Scalar(Rational(0), detail::parseRational(s));
  std::string_view rePart = s.substr(0, split);
  std::string_view imPart = s.substr(split);  // keeps the sign
  return Scalar(detail::parseRational(rePart), detail::parseRational(imPart));
}

}  // namespace pencils
