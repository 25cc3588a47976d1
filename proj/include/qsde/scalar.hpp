#pragma once

#include <complex>
#include <string>

#include "qsde/rational.hpp"

namespace qsde {

// Complex number with exact rational real and imaginary parts.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long n) : re_(n) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re, Rational im) : re_(re), im_(im) {}

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  bool is_imaginary() const { return re_.is_zero() && !im_.is_zero(); }

  Scalar conj() const { return Scalar(re_, -im_); }

  Scalar operator-() const { return Scalar(-re_, -im_); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return Scalar(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return Scalar(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return Scalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    Rational n2 = b.re_ * b.re_ + b.im_ * b.im_;
    if (n2.is_zero()) throw Error("scalar: division by zero");
    Scalar num = a * b.conj();
    return Scalar(num.re_ / n2, num.im_ / n2);
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Canonical text form: "a/b", "c/d*i", or "a/b + c/d*i" with unit
  // imaginary parts collapsed to "i".
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    if (!re_.is_zero()) out = re_.str();
    if (!im_.is_zero()) {
      Rational mag = im_.abs();
      std::string imtxt = mag.is_one() ? "i" : mag.str() + "*i";
      if (out.empty()) {
        out = (im_.sign() < 0 ? "-" : "") + imtxt;
      } else {
        out += (im_.sign() < 0 ? " - " : " + ") + imtxt;
      }
    }
    return out;
  }

  std::complex<double> to_complex() const {
    return {re_.to_double(), im_.to_double()};
  }

 private:
  Rational re_;
  Rational im_;
};

inline Scalar half() { return Scalar(Rational(1, 2)); }

}  // namespace qsde
