#pragma once

#include <optional>
#include <vector>

#include "zcc/gauss_rational.hpp"
#include "zcc/polynomial.hpp"

namespace zcc {

/// F(z, eps) = f(z) + eps*g(z). Immutable once built.
class Deformation {
public:
  Deformation(Polynomial f, Polynomial g);

  const Polynomial& f() const { return f_; }
  const Polynomial& g() const { return g_; }

  /// Fiber cardinality off the bad set: max(deg f, deg g).
  int n() const { return n_; }

  /// Exact F(., eps).
  Polynomial at(const GaussRational& eps) const;
  /// Floating coefficients of F(., eps), padded to n+1 entries.
  std::vector<Complex> at(Complex eps) const;
  /// Floating coefficients of dF/dz(., eps), n entries.
  std::vector<Complex> derivative_at(Complex eps) const;

  /// c(eps), the coefficient of z^n.
  GaussRational leading(const GaussRational& eps) const;
  Complex leading(Complex eps) const;

  const std::vector<Complex>& f_complex() const { return fc_; }
  const std::vector<Complex>& g_complex() const { return gc_; }

private:
  Polynomial f_;
  Polynomial g_;
  int n_ = 0;
  std::vector<Complex> fc_;  // padded to n+1
  std::vector<Complex> gc_;  // padded to n+1
};

/// Exact bivariate polynomial sum c[i][j] t^i eps^j.
class BivariatePolynomial {
public:
  BivariatePolynomial() = default;
  explicit BivariatePolynomial(std::vector<std::vector<GaussRational>> coeffs);

  const std::vector<std::vector<GaussRational>>& coeffs() const { return c_; }
  int degree_t() const;
  int degree_eps() const;
  bool is_zero() const { return degree_t() < 0; }

  GaussRational operator()(const GaussRational& t, const GaussRational& eps) const;
  Complex operator()(Complex t, Complex eps) const;

  /// Exact restriction to a fixed eps, as a polynomial in t.
  Polynomial at_eps(const GaussRational& eps) const;
  /// Floating coefficients in t at a fixed eps.
  std::vector<Complex> at_eps(Complex eps) const;
  /// The coefficient of t^i as a polynomial in eps.
  Polynomial t_coefficient(std::size_t i) const;

private:
  std::vector<std::vector<GaussRational>> c_;
};

struct BadEpsilonSet {
  std::vector<GaussRational> leading_vanishing;
  std::vector<Complex> degenerate;

  /// Distance from eps to the nearest listed point (infinity when empty).
  double distance(Complex eps) const;
};

/// Every normalized right factor h (monic, h(0) = 0, 1 < deg h < deg p) with
/// p in C[h], one per admissible degree, sorted by degree.
std::vector<Polynomial> right_factors(const Polynomial& p);

/// The outer factor q with p = q(h), when it exists.
std::optional<Polynomial> express_in(const Polynomial& p, const Polynomial& h);

/// Normalized h with deg h > 1 such that both f and g lie in C[h], sorted by
/// degree. Includes h = f (normalized) when g lies in C[f].
std::vector<Polynomial> common_right_factors(const Polynomial& f, const Polynomial& g);

/// Monic, zero-constant representative of the affine class of p (deg p >= 1).
Polynomial normalize_factor(const Polynomial& p);

/// Res_z(F(z,eps) - t, dF/dz(z,eps)) from the Sylvester matrix with the formal
/// degree n. Raw resultant: no sign or unit normalization.
BivariatePolynomial discriminant_t(const Deformation& d);

/// Exact determinant by fraction-carrying Gaussian elimination.
GaussRational determinant(std::vector<std::vector<GaussRational>> m);

/// Exact resultant of two polynomials over Q(i) via the Sylvester matrix.
GaussRational resultant(const Polynomial& a, const Polynomial& b);

/// Unique polynomial of degree < xs.size() through (xs[k], ys[k]).
Polynomial interpolate(const std::vector<GaussRational>& xs, const std::vector<GaussRational>& ys);

/// Squarefree part p / gcd(p, p'), monic.
Polynomial squarefree_part(const Polynomial& p);

BadEpsilonSet bad_epsilons(const Deformation& d);

/// Polynomial in eps whose roots contain every eps where the number of
/// distinct roots in t of D(., eps) can drop (exact, squarefree).
Polynomial degeneracy_polynomial(const Deformation& d);

}  // namespace zcc
