#include <random>

#include "doctest.h"
#include "zcc/algebra.hpp"
#include "zcc/error.hpp"
#include "zcc/numerics.hpp"

using namespace zcc;

namespace {

Polynomial P(std::initializer_list<long> c) {
  std::vector<GaussRational> v;
  for (long x : c) v.emplace_back(x);
  return Polynomial(std::move(v));
}

GaussRational Q(long n, long d = 1) { return {mpq_class(n, d)}; }

Polynomial random_poly(std::mt19937& rng, int deg, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<GaussRational> v;
  for (int k = 0; k <= deg; ++k) v.emplace_back(dist(rng));
  if (v.back().is_zero()) v.back() = GaussRational(1);
  return Polynomial(std::move(v));
}

}  // namespace

TEST_CASE("coefficient literals parse exactly") {
  CHECK(GaussRational::parse("1/2") == Q(1, 2));
  CHECK(GaussRational::parse("-3/6") == Q(-1, 2));
  CHECK(GaussRational::parse("7") == Q(7));
  CHECK(GaussRational::parse("1/2+3/4i") == GaussRational(mpq_class(1, 2), mpq_class(3, 4)));
  CHECK(GaussRational::parse("-i") == GaussRational(0, -1));
  CHECK(GaussRational::parse("2i") == GaussRational(0, 2));
  CHECK(GaussRational::parse(" -1/3-i ") == GaussRational(mpq_class(-1, 3), -1));
  CHECK(GaussRational::parse("1/2+3/4i").to_string() == "1/2+3/4i");

  for (const char* bad : {"0.5", "1e3", "1/0", "", "1/2i+3", "i+i", "abc", "1//2"})
    CHECK_THROWS_AS(GaussRational::parse(bad), Error);
}

TEST_CASE("eval") {
  const Polynomial p = P({1, 0, 1});
  CHECK(p(GaussRational(2)) == GaussRational(5));
  CHECK(p(GaussRational(0, 1)).is_zero());
  CHECK(P({0, 0, 0, 0, 0, 0, 1})(GaussRational(1)) == GaussRational(1));
  CHECK(std::abs(eval(p, Complex{2.0, 0.0}) - 5.0) < 1e-15);
}

TEST_CASE("derivative") {
  CHECK(P({0, 0, 0, 0, 0, 0, 1}).derivative() == P({0, 0, 0, 0, 0, 6}));
  CHECK(P({5}).derivative().is_zero());
  CHECK(P({0, 0, 1, 1}).derivative() == P({0, 2, 3}));
}

TEST_CASE("compose") {
  CHECK(compose(P({0, 0, 1}), P({0, 0, 0, 1})) == P({0, 0, 0, 0, 0, 0, 1}));
  const Polynomial p = P({3, -1, 4, 1});
  CHECK(compose(P({0, 1}), p) == p);
  // a z^2 + b z + c composed with z^2
  const GaussRational a = Q(1, 2), b = Q(1), c = Q(1, 3);
  const Polynomial outer({c, b, a});
  const Polynomial expected({c, 0, b, 0, a});
  CHECK(compose(outer, P({0, 0, 1})) == expected);
}

TEST_CASE("right_factors") {
  auto z6 = right_factors(P({0, 0, 0, 0, 0, 0, 1}));
  REQUIRE(z6.size() == 2);
  CHECK(z6[0] == P({0, 0, 1}));
  CHECK(z6[1] == P({0, 0, 0, 1}));

  auto z4 = right_factors(P({0, 0, 0, 0, 1}));
  REQUIRE(z4.size() == 1);
  CHECK(z4[0] == P({0, 0, 1}));

  CHECK(right_factors(P({0, 1, 0, 0, 0, 1})).empty());

  // (2w^2 - w + 3) o (3z^3 + z^2 - 5z + 7): the normalized factor is z^3 + z^2/3 - 5z/3
  const Polynomial inner = P({7, -5, 1, 3});
  const Polynomial p = compose(P({3, -1, 2}), inner);
  auto rf = right_factors(p);
  REQUIRE(rf.size() == 1);
  CHECK(rf[0] == normalize_factor(inner));
}

TEST_CASE("express_in") {
  const GaussRational a = Q(2), b = Q(-1, 5), c = Q(3, 7);
  const Polynomial g({c, 0, b, 0, a});
  auto outer = express_in(g, P({0, 0, 1}));
  REQUIRE(outer.has_value());
  CHECK(*outer == Polynomial({c, b, a}));

  auto sq = express_in(P({0, 0, 0, 0, 0, 0, 1}), P({0, 0, 0, 1}));
  REQUIRE(sq.has_value());
  CHECK(*sq == P({0, 0, 1}));

  CHECK_FALSE(express_in(P({0, 0, 1, 1}), P({0, 0, 1})).has_value());
  CHECK_THROWS_AS(express_in(P({1, 2}), P({3})), Error);
}

TEST_CASE("common_right_factors") {
  CHECK(common_right_factors(P({0, 0, 0, 0, 0, 0, 1}), P({0, 0, 1, 1})).empty());

  auto a = common_right_factors(P({0, 0, 0, 0, 1}), P({1, 0, 1, 0, 1}));
  REQUIRE(a.size() == 1);
  CHECK(a[0] == P({0, 0, 1}));

  // g = 2f + 3 admits h = f itself
  auto b = common_right_factors(P({0, 0, 0, 0, 1}), P({3, 0, 0, 0, 2}));
  REQUIRE(b.size() == 2);
  CHECK(b[0] == P({0, 0, 1}));
  CHECK(b[1] == P({0, 0, 0, 0, 1}));

  // constant g passes vacuously
  auto c = common_right_factors(P({0, 0, 0, 0, 1}), P({5}));
  CHECK(c.size() == 2);
}

TEST_CASE("decomposition invariants on random compositions") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int d_outer = 2 + static_cast<int>(rng() % 2);
    const int d_inner = 2 + static_cast<int>(rng() % 2);
    const Polynomial outer = random_poly(rng, d_outer, -3, 3);
    const Polynomial inner = random_poly(rng, d_inner, -3, 3);
    const Polynomial p = compose(outer, inner);
    REQUIRE(p.degree() == d_outer * d_inner);

    const auto factors = right_factors(p);
    bool found = false;
    for (const auto& h : factors) {
      CHECK(p.degree() % h.degree() == 0);
      CHECK(h.degree() > 1);
      CHECK(h.degree() < p.degree());
      CHECK(h.leading() == GaussRational(1));
      CHECK(h.coeff(0).is_zero());
      auto q = express_in(p, h);
      REQUIRE(q.has_value());
      CHECK(compose(*q, h) == p);
      if (h == normalize_factor(inner)) found = true;
    }
    CHECK(found);
    // one factor per degree
    for (std::size_t i = 1; i < factors.size(); ++i) CHECK(factors[i - 1].degree() < factors[i].degree());
  }
}

TEST_CASE("chain rule holds exactly") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial a = random_poly(rng, 1 + static_cast<int>(rng() % 4), -5, 5);
    const Polynomial b = random_poly(rng, 1 + static_cast<int>(rng() % 4), -5, 5);
    CHECK(compose(a, b).derivative() == compose(a.derivative(), b) * b.derivative());
  }
}

TEST_CASE("determinant and interpolation") {
  std::vector<std::vector<GaussRational>> m = {{Q(2), Q(1)}, {Q(1), Q(3)}};
  CHECK(determinant(m) == Q(5));
  std::vector<std::vector<GaussRational>> sing = {{Q(1), Q(2)}, {Q(2), Q(4)}};
  CHECK(determinant(sing).is_zero());

  const Polynomial p = P({4, -1, 0, 2});
  std::vector<GaussRational> xs, ys;
  for (long x = -2; x <= 1; ++x) {
    xs.emplace_back(x);
    ys.push_back(p(GaussRational(x)));
  }
  CHECK(interpolate(xs, ys) == p);
}

TEST_CASE("discriminant_t") {
  SUBCASE("z^2 gives -4t") {
    const auto d = discriminant_t(Deformation(P({0, 0, 1}), Polynomial{}));
    CHECK(d.degree_t() == 1);
    CHECK(d.degree_eps() == 0);
    CHECK(d.t_coefficient(1) == P({-4}));
    CHECK(d.t_coefficient(0).is_zero());
  }
  SUBCASE("z^3 - 3z vanishes exactly at t = +-2") {
    const auto d = discriminant_t(Deformation(P({0, -3, 0, 1}), Polynomial{}));
    CHECK(d(GaussRational(2), GaussRational(0)).is_zero());
    CHECK(d(GaussRational(-2), GaussRational(0)).is_zero());
    CHECK_FALSE(d(GaussRational(0), GaussRational(0)).is_zero());
    CHECK_FALSE(d(GaussRational(1), GaussRational(0)).is_zero());
    CHECK(d.at_eps(GaussRational(0)).degree() == 2);
  }
  SUBCASE("z^4 + eps z^2 vanishes at (0, 0)") {
    const auto d = discriminant_t(Deformation(P({0, 0, 0, 0, 1}), P({0, 0, 1})));
    CHECK(d(GaussRational(0), GaussRational(0)).is_zero());
  }
}

TEST_CASE("discriminant vanishes iff the fiber has a repeated root") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> small(-4, 4);
  int checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    // generic samples
    const Deformation def(random_poly(rng, 3, -3, 3), random_poly(rng, 2, -3, 3));
    const auto disc = discriminant_t(def);
    const GaussRational t(small(rng), small(rng));
    const GaussRational e(mpq_class(small(rng), 7));
    const Polynomial fe = def.at(e) - Polynomial::constant(t);
    const bool repeated = gcd(fe, fe.derivative()).degree() > 0;
    CHECK(disc(t, e).is_zero() == repeated);
    ++checked;
  }
  for (int trial = 0; trial < 10; ++trial) {
    // designed samples: F - t0 = (z-a)^2 (q + eps r) for every eps
    const GaussRational a(small(rng));
    const GaussRational t0(small(rng), small(rng));
    const Polynomial sq = pow(Polynomial{-a, GaussRational(1)}, 2);
    const Polynomial q = random_poly(rng, 2, -3, 3);
    const Polynomial r = random_poly(rng, 1, -3, 3);
    const Deformation def(sq * q + Polynomial::constant(t0), sq * r);
    const auto disc = discriminant_t(def);
    const GaussRational e(mpq_class(small(rng), 5));
    const Polynomial fe = def.at(e) - Polynomial::constant(t0);
    CHECK(gcd(fe, fe.derivative()).degree() > 0);
    CHECK(disc(t0, e).is_zero());
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("bad_epsilons") {
  SUBCASE("z^4 with g = z^4 + z^2") {
    const auto bad = bad_epsilons(Deformation(P({0, 0, 0, 0, 1}), P({0, 0, 1, 0, 1})));
    REQUIRE(bad.leading_vanishing.size() == 1);
    CHECK(bad.leading_vanishing[0] == Q(-1));
    bool has_zero = false;
    for (auto e : bad.degenerate) has_zero |= std::abs(e) < 1e-9;
    CHECK(has_zero);
  }
  SUBCASE("z^2 alone has no bad eps") {
    const auto bad = bad_epsilons(Deformation(P({0, 0, 1}), Polynomial{}));
    CHECK(bad.leading_vanishing.empty());
    CHECK(bad.degenerate.empty());
  }
  SUBCASE("z^3 - 3z + eps z: critical values collide at eps = 3") {
    const auto bad = bad_epsilons(Deformation(P({0, -3, 0, 1}), P({0, 1})));
    CHECK(bad.leading_vanishing.empty());
    REQUIRE(bad.degenerate.size() == 1);
    CHECK(std::abs(bad.degenerate[0] - Complex{3.0, 0.0}) < 1e-9);
    // and the collision is real: below/above 3 there are two values, at 3 one
    CHECK(critical_values(Deformation(P({0, -3, 0, 1}), P({0, 1})), GaussRational(3)).size() == 1);
  }
  SUBCASE("leading coefficient of f vanishing in eps") {
    const auto bad = bad_epsilons(Deformation(P({0, 0, 2}), P({1, 0, 1})));
    REQUIRE(bad.leading_vanishing.size() == 1);
    CHECK(bad.leading_vanishing[0] == Q(-2));
  }
}
