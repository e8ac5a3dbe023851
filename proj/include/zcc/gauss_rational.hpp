#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace zcc {

using Complex = std::complex<double>;

/// Exact element of Q(i): re + im*i with GMP rationals kept in canonical form.
class GaussRational {
public:
  GaussRational() = default;
  GaussRational(long value) : re_(value), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class re, mpq_class im = 0);

  /// Parses `a`, `a/b`, `c/di`, `a/b+c/di` (optional signs, bare `i` allowed).
  /// Decimal and exponent literals are rejected so inputs stay exact.
  static GaussRational parse(std::string_view text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string to_string() const;

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

private:
  mpq_class re_;
  mpq_class im_;
};

inline bool is_zero(const GaussRational& x) { return x.is_zero(); }

}  // namespace zcc
