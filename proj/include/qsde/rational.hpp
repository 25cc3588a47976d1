#pragma once

#include <cstdint>
#include <string>

#include "qsde/errors.hpp"

namespace qsde {

using int128 = __int128;

namespace detail {

inline int128 checked_add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("rational: add overflow");
  return r;
}

inline int128 checked_sub(int128 a, int128 b) {
  int128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("rational: sub overflow");
  return r;
}

inline int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("rational: mul overflow");
  return r;
}

inline int128 checked_neg(int128 a) { return checked_sub(0, a); }

inline int128 abs128(int128 a) { return a < 0 ? checked_neg(a) : a; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string i128_to_string(int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  // Peel digits from |v|; the loop below works on the negated value to
  // sidestep -INT128_MIN.
  std::string digits;
  int128 w = v;
  if (!neg) w = -w;
  while (w != 0) {
    int d = static_cast<int>(-(w % 10));
    digits.push_back(static_cast<char>('0' + d));
    w /= 10;
  }
  if (neg) digits.push_back('-');
  return std::string(digits.rbegin(), digits.rend());
}

}  // namespace detail

// Exact rational number with 128-bit numerator and denominator.
// Stored in canonical reduced form with positive denominator; every
// operation is overflow-checked and throws OverflowError rather than wrap.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d) { assign(n, d); }

  static Rational make(int128 n, int128 d) {
    Rational r;
    r.assign(n, d);
    return r;
  }

  int128 num() const { return num_; }
  int128 den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

  Rational operator-() const { return make(detail::checked_neg(num_), den_); }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  Rational inv() const {
    if (num_ == 0) throw Error("rational: division by zero");
    return make(den_, num_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    using namespace detail;
    int128 g = gcd128(a.den_, b.den_);
    int128 da = a.den_ / g;
    int128 db = b.den_ / g;
    int128 n = checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da));
    int128 d = checked_mul(checked_mul(da, g), db);
    return make(n, d);
  }

  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    using namespace detail;
    int128 g1 = gcd128(a.num_, b.den_);
    int128 g2 = gcd128(b.num_, a.den_);
    int128 n = checked_mul(a.num_ / g1, b.num_ / g2);
    int128 d = checked_mul(a.den_ / g2, b.den_ / g1);
    return make(n, d);
  }

  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inv(); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  std::string str() const {
    std::string s = detail::i128_to_string(num_);
    if (den_ != 1) s += "/" + detail::i128_to_string(den_);
    return s;
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

 private:
  void assign(int128 n, int128 d) {
    if (d == 0) throw Error("rational: zero denominator");
    if (d < 0) {
      n = detail::checked_neg(n);
      d = detail::checked_neg(d);
    }
    int128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = n;
    den_ = d;
  }

  int128 num_;
  int128 den_;
};

}  // namespace qsde
