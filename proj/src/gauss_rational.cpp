#include "zcc/gauss_rational.hpp"

#include <cctype>
#include <stdexcept>

#include "zcc/error.hpp"

namespace zcc {

namespace {

[[noreturn]] void bad_literal(std::string_view text, const char* why) {
  throw Error(ErrorCode::InvalidInput,
              "bad coefficient literal '" + std::string(text) + "': " + why);
}

std::string format_rational(const mpq_class& q) { return q.get_str(); }

}  // namespace

GaussRational::GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRational GaussRational::parse(std::string_view text) {
  auto trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
    trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
    trimmed.remove_suffix(1);
  if (trimmed.empty()) bad_literal(text, "empty");

  for (char ch : trimmed) {
    if (ch == '.' || ch == 'e' || ch == 'E')
      bad_literal(text, "floating-point literals are not accepted");
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '+' || ch == '-' ||
          ch == 'i'))
      bad_literal(text, "unexpected character");
  }

  mpq_class re = 0;
  mpq_class im = 0;
  bool seen_re = false;
  bool seen_im = false;
  std::size_t pos = 0;
  while (pos < trimmed.size()) {
    int sign = 1;
    if (trimmed[pos] == '+' || trimmed[pos] == '-') {
      sign = trimmed[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      bad_literal(text, "terms must be separated by a sign");
    }

    std::string num;
    while (pos < trimmed.size() && std::isdigit(static_cast<unsigned char>(trimmed[pos])))
      num += trimmed[pos++];
    std::string den = "1";
    if (pos < trimmed.size() && trimmed[pos] == '/') {
      if (num.empty()) bad_literal(text, "missing numerator");
      ++pos;
      den.clear();
      while (pos < trimmed.size() && std::isdigit(static_cast<unsigned char>(trimmed[pos])))
        den += trimmed[pos++];
      if (den.empty()) bad_literal(text, "missing denominator");
    }
    bool imaginary = false;
    if (pos < trimmed.size() && trimmed[pos] == 'i') {
      imaginary = true;
      ++pos;
      if (num.empty()) num = "1";
    }
    if (num.empty()) bad_literal(text, "missing number");

    mpz_class d(den);
    if (d == 0) bad_literal(text, "zero denominator");
    mpq_class value(mpz_class(num), d);
    value.canonicalize();
    if (sign < 0) value = -value;

    if (imaginary) {
      if (seen_im) bad_literal(text, "two imaginary terms");
      seen_im = true;
      im = value;
    } else {
      if (seen_re || seen_im) bad_literal(text, "real term must come first");
      seen_re = true;
      re = value;
    }
  }
  return {re, im};
}

std::string GaussRational::to_string() const {
  if (sgn(im_) == 0) return format_rational(re_);
  std::string out;
  if (sgn(re_) != 0) out = format_rational(re_);
  mpq_class mag = abs(im_);
  if (sgn(im_) < 0)
    out += "-";
  else if (!out.empty())
    out += "+";
  if (mag != 1) out += format_rational(mag);
  out += "i";
  return out;
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw std::domain_error("GaussRational division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class n = o.norm();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

}  // namespace zcc
