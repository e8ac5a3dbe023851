#include "zcc/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zcc/error.hpp"
#include "zcc/numerics.hpp"

namespace zcc {

namespace {

std::vector<GaussRational> descending(const Polynomial& p, std::size_t formal_degree) {
  std::vector<GaussRational> out(formal_degree + 1, GaussRational(0));
  for (std::size_t k = 0; k <= formal_degree; ++k) out[formal_degree - k] = p.coeff(k);
  return out;
}

// Sylvester matrix of a (formal degree m) and b (formal degree n).
std::vector<std::vector<GaussRational>> sylvester(const Polynomial& a, std::size_t m,
                                                  const Polynomial& b, std::size_t n) {
  const std::size_t size = m + n;
  std::vector<std::vector<GaussRational>> s(size, std::vector<GaussRational>(size, GaussRational(0)));
  auto da = descending(a, m);
  auto db = descending(b, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = da[k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = db[k];
  return s;
}

}  // namespace

// ---------------------------------------------------------------- Deformation

Deformation::Deformation(Polynomial f, Polynomial g) : f_(std::move(f)), g_(std::move(g)) {
  n_ = std::max(f_.degree(), g_.degree());
  if (n_ < 1) throw Error(ErrorCode::InvalidInput, "deformation needs deg f >= 1 or deg g >= 1");
  fc_ = to_complex(f_);
  gc_ = to_complex(g_);
  fc_.resize(static_cast<std::size_t>(n_) + 1, Complex{});
  gc_.resize(static_cast<std::size_t>(n_) + 1, Complex{});
}

Polynomial Deformation::at(const GaussRational& eps) const { return f_ + g_ * eps; }

std::vector<Complex> Deformation::at(Complex eps) const {
  std::vector<Complex> out(fc_.size());
  for (std::size_t k = 0; k < fc_.size(); ++k) out[k] = fc_[k] + eps * gc_[k];
  return out;
}

std::vector<Complex> Deformation::derivative_at(Complex eps) const {
  std::vector<Complex> out(fc_.size() - 1);
  for (std::size_t k = 1; k < fc_.size(); ++k)
    out[k - 1] = static_cast<double>(k) * (fc_[k] + eps * gc_[k]);
  return out;
}

GaussRational Deformation::leading(const GaussRational& eps) const {
  const auto k = static_cast<std::size_t>(n_);
  return f_.coeff(k) + eps * g_.coeff(k);
}

Complex Deformation::leading(Complex eps) const { return fc_.back() + eps * gc_.back(); }

// ------------------------------------------------------- BivariatePolynomial

BivariatePolynomial::BivariatePolynomial(std::vector<std::vector<GaussRational>> coeffs)
    : c_(std::move(coeffs)) {
  for (auto& row : c_)
    while (!row.empty() && row.back().is_zero()) row.pop_back();
  while (!c_.empty() && c_.back().empty()) c_.pop_back();
}

int BivariatePolynomial::degree_t() const { return static_cast<int>(c_.size()) - 1; }

int BivariatePolynomial::degree_eps() const {
  int d = -1;
  for (const auto& row : c_) d = std::max(d, static_cast<int>(row.size()) - 1);
  return d;
}

GaussRational BivariatePolynomial::operator()(const GaussRational& t, const GaussRational& eps) const {
  return at_eps(eps)(t);
}

Complex BivariatePolynomial::operator()(Complex t, Complex eps) const {
  auto coeffs = at_eps(eps);
  return horner(coeffs, t);
}

Polynomial BivariatePolynomial::t_coefficient(std::size_t i) const {
  if (i >= c_.size()) return {};
  return Polynomial(c_[i]);
}

Polynomial BivariatePolynomial::at_eps(const GaussRational& eps) const {
  std::vector<GaussRational> out;
  out.reserve(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out.push_back(t_coefficient(i)(eps));
  return Polynomial(std::move(out));
}

std::vector<Complex> BivariatePolynomial::at_eps(Complex eps) const {
  std::vector<Complex> out;
  out.reserve(c_.size());
  for (const auto& row : c_) {
    std::vector<Complex> rc;
    rc.reserve(row.size());
    for (const auto& q : row) rc.push_back(q.to_complex());
    out.push_back(horner(rc, eps));
  }
  return out;
}

double BadEpsilonSet::distance(Complex eps) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : leading_vanishing) best = std::min(best, std::abs(e.to_complex() - eps));
  for (const auto& e : degenerate) best = std::min(best, std::abs(e - eps));
  return best;
}

// -------------------------------------------------------------- decomposition

std::optional<Polynomial> express_in(const Polynomial& p, const Polynomial& h) {
  if (h.degree() < 1) throw Error(ErrorCode::InvalidInput, "express_in needs deg h >= 1");
  std::vector<GaussRational> outer;
  Polynomial q = p;
  while (!q.is_zero()) {
    auto [quo, rem] = divmod(q, h);
    if (rem.degree() > 0) return std::nullopt;
    outer.push_back(rem.coeff(0));
    q = std::move(quo);
  }
  return Polynomial(std::move(outer));
}

Polynomial normalize_factor(const Polynomial& p) {
  if (p.degree() < 1) throw Error(ErrorCode::InvalidInput, "cannot normalize a constant factor");
  std::vector<GaussRational> c = p.coeffs();
  c[0] = GaussRational(0);
  return Polynomial(std::move(c)).monic();
}

std::vector<Polynomial> right_factors(const Polynomial& p) {
  std::vector<Polynomial> out;
  const int total = p.degree();
  if (total < 2) return out;
  const Polynomial target = p.monic();
  for (int r = 2; r < total; ++r) {
    if (total % r != 0) continue;
    const auto s = static_cast<unsigned>(total / r);
    // Top r coefficients of target agree with h^s; solve for h's coefficients
    // from the top down, each one entering linearly with factor s.
    std::vector<GaussRational> hc(static_cast<std::size_t>(r) + 1, GaussRational(0));
    hc[static_cast<std::size_t>(r)] = GaussRational(1);
    for (int k = 1; k < r; ++k) {
      Polynomial h(hc);
      const auto idx = static_cast<std::size_t>(total - k);
      GaussRational have = pow(h, s).coeff(idx);
      hc[static_cast<std::size_t>(r - k)] = (target.coeff(idx) - have) / GaussRational(static_cast<long>(s));
    }
    Polynomial h(std::move(hc));
    if (express_in(p, h)) out.push_back(std::move(h));
  }
  return out;
}

std::vector<Polynomial> common_right_factors(const Polynomial& f, const Polynomial& g) {
  if (f.degree() < 1) throw Error(ErrorCode::InvalidInput, "common_right_factors needs deg f >= 1");
  std::vector<Polynomial> out;
  auto member = [&](const Polynomial& h) { return g.degree() < 1 || express_in(g, h).has_value(); };
  for (auto& h : right_factors(f))
    if (member(h)) out.push_back(h);
  if (f.degree() >= 2) {
    Polynomial hf = normalize_factor(f);
    if (member(hf)) out.push_back(std::move(hf));
  }
  return out;
}

// ---------------------------------------------------------------- resultants

GaussRational determinant(std::vector<std::vector<GaussRational>> m) {
  const std::size_t n = m.size();
  GaussRational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return GaussRational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const GaussRational inv = GaussRational(1) / m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      const GaussRational factor = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

GaussRational resultant(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return GaussRational(0);
  const auto m = static_cast<std::size_t>(a.degree());
  const auto n = static_cast<std::size_t>(b.degree());
  if (m + n == 0) return GaussRational(1);
  return determinant(sylvester(a, m, b, n));
}

Polynomial interpolate(const std::vector<GaussRational>& xs, const std::vector<GaussRational>& ys) {
  // Newton divided differences, then expansion of the Newton form.
  const std::size_t n = xs.size();
  std::vector<GaussRational> dd = ys;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t k = n - 1; k >= level; --k) {
      dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - level]);
      if (k == level) break;
    }
  Polynomial out;
  for (std::size_t k = n; k-- > 0;) {
    out = out * Polynomial{-xs[k], GaussRational(1)} + Polynomial::constant(dd[k]);
  }
  return out;
}

BivariatePolynomial discriminant_t(const Deformation& d) {
  const auto n = static_cast<std::size_t>(d.n());
  const Polynomial& f = d.f();
  const Polynomial& g = d.g();
  // deg_t D <= n-1 and the total degree is <= 2n-1, so n t-samples and 2n
  // eps-samples determine D exactly.
  const std::size_t t_samples = n;
  const std::size_t e_samples = 2 * n;
  std::vector<GaussRational> ts, es;
  for (std::size_t a = 0; a < t_samples; ++a) ts.emplace_back(static_cast<long>(a));
  for (std::size_t b = 0; b < e_samples; ++b) es.emplace_back(static_cast<long>(b));

  // coefficient of t^i evaluated at es[b]
  std::vector<std::vector<GaussRational>> by_eps(t_samples, std::vector<GaussRational>(e_samples));
  for (std::size_t b = 0; b < e_samples; ++b) {
    const Polynomial fe = f + g * es[b];
    const Polynomial dfe = fe.derivative();
    std::vector<GaussRational> values;
    for (std::size_t a = 0; a < t_samples; ++a) {
      Polynomial shifted = fe - Polynomial::constant(ts[a]);
      values.push_back(n == 1 ? dfe.coeff(0)
                              : determinant(sylvester(shifted, n, dfe, n - 1)));
    }
    const Polynomial in_t = interpolate(ts, values);
    for (std::size_t i = 0; i < t_samples; ++i) by_eps[i][b] = in_t.coeff(i);
  }
  std::vector<std::vector<GaussRational>> coeffs(t_samples);
  for (std::size_t i = 0; i < t_samples; ++i) coeffs[i] = interpolate(es, by_eps[i]).coeffs();
  return BivariatePolynomial(std::move(coeffs));
}

namespace {

// Polynomials over Z[i], ascending, for fraction-free gcd.
struct GaussInt {
  mpz_class re, im;
};
using IntPoly = std::vector<GaussInt>;

bool is_zero(const GaussInt& x) { return sgn(x.re) == 0 && sgn(x.im) == 0; }

GaussInt mul(const GaussInt& a, const GaussInt& b) {
  if (sgn(a.im) == 0 && sgn(b.im) == 0) return {a.re * b.re, 0};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

void trim(IntPoly& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

IntPoly to_int_poly(const Polynomial& p) {
  mpz_class den = 1;
  for (const auto& c : p.coeffs()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.re().get_den_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.im().get_den_mpz_t());
  }
  IntPoly out;
  for (const auto& c : p.coeffs()) {
    const mpq_class re = c.re() * den, im = c.im() * den;
    out.push_back({re.get_num(), im.get_num()});
  }
  return out;
}

// Divides out the integer content.
void make_primitive(IntPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.re.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.im.get_mpz_t());
    if (g == 1) return;
  }
  if (g == 0) return;
  for (auto& c : p) {
    mpz_divexact(c.re.get_mpz_t(), c.re.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(c.im.get_mpz_t(), c.im.get_mpz_t(), g.get_mpz_t());
  }
}

// lc(b)^k a mod b, then made primitive.
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  const GaussInt& lb = b.back();
  while (a.size() > db) {
    const GaussInt la = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) c = mul(c, lb);
    for (std::size_t j = 0; j <= db; ++j) {
      const GaussInt t = mul(la, b[j]);
      a[shift + j].re -= t.re;
      a[shift + j].im -= t.im;
    }
    a.pop_back();
    trim(a);
  }
  make_primitive(a);
  return a;
}

}  // namespace

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() < 1) return p.is_zero() ? p : Polynomial::constant(1);
  // primitive PRS over Z[i]; Euclid over Q(i) blows up on the long degeneracy polynomials
  IntPoly a = to_int_poly(p), b = to_int_poly(p.derivative());
  make_primitive(a);
  make_primitive(b);
  while (!b.empty()) {
    IntPoly r = pseudo_remainder(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  std::vector<GaussRational> gc;
  for (const auto& c : a) gc.emplace_back(mpq_class(c.re), mpq_class(c.im));
  return divmod(p, Polynomial(std::move(gc))).first.monic();
}

namespace {

struct Degeneracy {
  Polynomial candidates;
  int generic_count = 0;  // distinct roots in t of D(., eps) for generic eps
};

// j-th principal subresultant coefficient of a (degree m) and b (degree n):
// the Sylvester matrix without the last j rows of each block and the last 2j columns.
GaussRational principal_subresultant(const Polynomial& a, std::size_t m, const Polynomial& b, std::size_t n,
                                     std::size_t j) {
  const std::size_t size = m + n - 2 * j;
  if (size == 0) return GaussRational(1);
  std::vector<std::vector<GaussRational>> s(size, std::vector<GaussRational>(size, GaussRational(0)));
  const auto da = descending(a, m);
  const auto db = descending(b, n);
  for (std::size_t r = 0; r < n - j; ++r)
    for (std::size_t k = 0; k <= m && r + k < size; ++k) s[r][r + k] = da[k];
  for (std::size_t r = 0; r < m - j; ++r)
    for (std::size_t k = 0; k <= n && r + k < size; ++k) s[n - j + r][r + k] = db[k];
  return determinant(std::move(s));
}

// D(t, eps) has k distinct roots in t for generic eps exactly when the first
// principal subresultant coefficient of (D, D_t) that is not identically zero
// has index m - k. Its zeros, with those of the leading coefficient, are the
// eps where roots can merge. Everything is evaluated at sample eps and
// interpolated, which keeps the arithmetic in Q(i).
Degeneracy degeneracy(const Deformation& d) {
  const BivariatePolynomial disc = discriminant_t(d);
  const int m = disc.degree_t();
  if (m < 1) return {Polynomial::constant(1), 0};
  const auto um = static_cast<std::size_t>(m);
  const int e = std::max(disc.degree_eps(), 0);

  const auto psc_at = [&](const GaussRational& eps, std::size_t j) {
    const Polynomial at = disc.at_eps(eps);
    return principal_subresultant(at, um, at.derivative(), um - 1, j);
  };
  // Probes at two unremarkable Gaussian rationals decide which index is generic.
  const GaussRational probes[] = {GaussRational::parse("3/7+2/11i"), GaussRational::parse("-5/13+1/3i")};
  std::size_t j = 0;
  for (; j + 1 < um; ++j) {
    bool nonzero = false;
    for (const auto& eps : probes) nonzero = nonzero || !psc_at(eps, j).is_zero();
    if (nonzero) break;
  }

  const std::size_t bound = (2 * um - 1 - 2 * j) * static_cast<std::size_t>(e);
  std::vector<GaussRational> xs, ys;
  for (std::size_t k = 0; k <= bound; ++k) {
    xs.emplace_back(static_cast<long>(k));
    ys.push_back(psc_at(xs.back(), j));
  }
  Polynomial candidates = interpolate(xs, ys) * disc.t_coefficient(um);
  const int generic = m - static_cast<int>(j);
  if (candidates.is_zero()) return {Polynomial::constant(1), generic};
  return {squarefree_part(candidates), generic};
}

}  // namespace

Polynomial degeneracy_polynomial(const Deformation& d) { return degeneracy(d).candidates; }

BadEpsilonSet bad_epsilons(const Deformation& d) {
  BadEpsilonSet out;
  const auto n = static_cast<std::size_t>(d.n());
  const GaussRational fn = d.f().coeff(n);
  const GaussRational gn = d.g().coeff(n);
  if (!gn.is_zero()) out.leading_vanishing.push_back(-fn / gn);

  const Degeneracy deg = degeneracy(d);
  const Polynomial& cand = deg.candidates;
  if (cand.degree() < 1) return out;
  const auto generic = static_cast<std::size_t>(std::max(deg.generic_count, 0));

  auto roots = all_roots(to_complex(cand));
  std::vector<Complex> kept;
  for (const auto& r : roots) {
    bool near_leading = false;
    for (const auto& lv : out.leading_vanishing)
      if (std::abs(lv.to_complex() - r) < 1e-9 * std::max(1.0, std::abs(r))) near_leading = true;
    if (near_leading) continue;
    // Critical values at an exact collision are computed to far better than
    // 1e-7, while distinct ones at a candidate stay separated.
    std::vector<Complex> cv;
    try {
      auto raw = critical_values(d, r);
      cv = dedupe(raw, 1e-7);
    } catch (const Error&) {
      continue;
    }
    if (cv.size() < generic) kept.push_back(r);
  }
  kept = dedupe(kept, 1e-9);
  std::sort(kept.begin(), kept.end(), [](Complex a, Complex b) {
    if (std::abs(a.real() - b.real()) > 1e-12) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  out.degenerate = std::move(kept);
  return out;
}

}  // namespace zcc
