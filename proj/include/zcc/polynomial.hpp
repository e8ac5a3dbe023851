#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zcc/gauss_rational.hpp"

namespace zcc {

namespace detail {
template <class K>
bool coeff_is_zero(const K& c) {
  return is_zero(c);
}
}  // namespace detail

/// Dense univariate polynomial over an exact field K, coefficients ascending.
///
/// K must be constructible from `long`, support field arithmetic, and provide
/// a free `is_zero(const K&)`. The coefficient list never carries a zero
/// leading term; the zero polynomial is the empty list.
template <class K>
class BasicPolynomial {
public:
  BasicPolynomial() = default;
  explicit BasicPolynomial(std::vector<K> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  BasicPolynomial(std::initializer_list<K> coeffs) : coeffs_(coeffs) { trim(); }

  static BasicPolynomial constant(K c) { return BasicPolynomial(std::vector<K>{std::move(c)}); }
  static BasicPolynomial monomial(K c, std::size_t k) {
    std::vector<K> v(k + 1, K(0));
    v[k] = std::move(c);
    return BasicPolynomial(std::move(v));
  }
  static BasicPolynomial x() { return monomial(K(1), 1); }

  const std::vector<K>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of x^k, zero beyond the degree.
  K coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : K(0); }
  const K& leading() const {
    if (coeffs_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return coeffs_.back();
  }

  K operator()(const K& x) const {
    K acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  BasicPolynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<K> out;
    out.reserve(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) out.push_back(coeffs_[k] * K(static_cast<long>(k)));
    return BasicPolynomial(std::move(out));
  }

  BasicPolynomial monic() const {
    if (is_zero()) return {};
    return *this * (K(1) / leading());
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), K(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), K(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
  friend BasicPolynomial operator-(BasicPolynomial a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<K> out(a.coeffs_.size() + b.coeffs_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (detail::coeff_is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return BasicPolynomial(std::move(out));
  }
  friend BasicPolynomial operator*(BasicPolynomial a, const K& s) {
    for (auto& c : a.coeffs_) c *= s;
    a.trim();
    return a;
  }
  friend BasicPolynomial operator*(const K& s, BasicPolynomial a) { return std::move(a) * s; }

  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Euclidean division: returns (q, r) with a = q*b + r and deg r < deg b.
  friend std::pair<BasicPolynomial, BasicPolynomial> divmod(const BasicPolynomial& a,
                                                            const BasicPolynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {BasicPolynomial{}, a};
    std::vector<K> rem = a.coeffs_;
    const std::size_t db = b.coeffs_.size() - 1;
    std::vector<K> quo(rem.size() - db, K(0));
    const K inv_lead = K(1) / b.coeffs_.back();
    for (std::size_t k = quo.size(); k-- > 0;) {
      K q = rem[k + db] * inv_lead;
      if (detail::coeff_is_zero(q)) continue;
      for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs_[j];
      quo[k] = std::move(q);
    }
    rem.resize(db);
    return {BasicPolynomial(std::move(quo)), BasicPolynomial(std::move(rem))};
  }

  /// Monic gcd (zero when both inputs are zero).
  friend BasicPolynomial gcd(BasicPolynomial a, BasicPolynomial b) {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

private:
  void trim() {
    while (!coeffs_.empty() && detail::coeff_is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<K> coeffs_;
};

/// outer(inner(x)) by Horner's scheme in the polynomial ring.
template <class K>
BasicPolynomial<K> compose(const BasicPolynomial<K>& outer, const BasicPolynomial<K>& inner) {
  BasicPolynomial<K> acc;
  const auto& c = outer.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    acc = acc * inner + BasicPolynomial<K>::constant(*it);
  return acc;
}

template <class K>
BasicPolynomial<K> pow(const BasicPolynomial<K>& base, unsigned e) {
  BasicPolynomial<K> out = BasicPolynomial<K>::constant(K(1));
  BasicPolynomial<K> b = base;
  while (e) {
    if (e & 1u) out = out * b;
    e >>= 1u;
    if (e) b = b * b;
  }
  return out;
}

using Polynomial = BasicPolynomial<GaussRational>;

/// Floating copy of the coefficients (ascending).
std::vector<Complex> to_complex(const Polynomial& p);

/// Horner evaluation of an ascending float coefficient list.
inline Complex horner(std::span<const Complex> coeffs, Complex z) {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

/// Horner evaluation at a floating point; exact evaluation uses operator().
Complex eval(const Polynomial& p, Complex z);

/// Human-readable form in the variable `var`, e.g. `1/2z^4+z^2+1/3`.
std::string to_string(const Polynomial& p, const std::string& var = "z");

/// Builds a polynomial from ascending coefficient literals.
Polynomial parse_coefficients(std::span<const std::string> literals);

/// Coefficient literals (ascending), the inverse of parse_coefficients.
std::vector<std::string> coefficient_strings(const Polynomial& p);

}  // namespace zcc
