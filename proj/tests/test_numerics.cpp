#include <algorithm>
#include <numbers>
#include <random>

#include "doctest.h"
#include "zcc/error.hpp"
#include "zcc/numerics.hpp"

using namespace zcc;

namespace {

Polynomial P(std::initializer_list<long> c) {
  std::vector<GaussRational> v;
  for (long x : c) v.emplace_back(x);
  return Polynomial(std::move(v));
}

constexpr double pi = std::numbers::pi;

Complex unit(double theta) { return std::polar(1.0, theta); }

// closed circle |t| = r at fixed eps, starting and ending at t = r
PathSpec circle(double r, Complex eps, double sweep = 2 * pi) {
  return PathSpec({Segment::arc_t({0.0, 0.0}, r, 0.0, sweep, eps)});
}

}  // namespace

TEST_CASE("all_roots of simple polynomials") {
  SUBCASE("z^2 - 1") {
    std::vector<Complex> c = {-1.0, 0.0, 1.0};
    auto r = all_roots(c);
    sort_canonical(r);
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0] - 1.0) < 1e-12);
    CHECK(std::abs(r[1] + 1.0) < 1e-12);
  }
  SUBCASE("z^6 - 1 gives the sixth roots of unity") {
    std::vector<Complex> c(7, 0.0);
    c[0] = -1.0;
    c[6] = 1.0;
    auto r = all_roots(c);
    sort_canonical(r);
    REQUIRE(r.size() == 6);
    for (int k = 0; k < 6; ++k) CHECK(std::abs(r[k] - unit(2 * pi * k / 6)) < 1e-12);
  }
  SUBCASE("(z-2)^2 (z+1) keeps the cluster near 2") {
    // z^3 - 3z^2 + 4
    std::vector<Complex> c = {4.0, 0.0, -3.0, 1.0};
    auto r = all_roots(c);
    REQUIRE(r.size() == 3);
    int near2 = 0, near_m1 = 0;
    for (auto z : r) {
      if (std::abs(z - 2.0) < 1e-6) ++near2;
      if (std::abs(z + 1.0) < 1e-12) ++near_m1;
    }
    CHECK(near2 == 2);
    CHECK(near_m1 == 1);
  }
  SUBCASE("exact zero roots are kept") {
    std::vector<Complex> c = {0.0, {0.10437030071329682, 0.04566735516358772}, 0.0,
                              {4.1043703007132972, 0.04566735516358772}};
    auto r = all_roots(c);
    REQUIRE(r.size() == 3);
    CHECK(std::count(r.begin(), r.end(), Complex{}) == 1);
    for (auto z : r) CHECK(std::abs(horner(c, z)) < 1e-14);
  }
  SUBCASE("random residual check") {
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 2 + trial % 9;
      std::vector<Complex> c(n + 1);
      for (auto& x : c) x = {nd(rng), nd(rng)};
      auto r = all_roots(c);
      REQUIRE(r.size() == static_cast<std::size_t>(n));
      double scale = 0.0;
      for (auto z : r) {
        double s = 0.0;
        for (int k = 0; k <= n; ++k) s += std::abs(c[k]) * std::pow(std::abs(z), k);
        scale = std::max(scale, s);
        CHECK(std::abs(horner(c, z)) <= 1e-10 * s);
      }
    }
  }
}

TEST_CASE("fiber") {
  const Deformation z2(P({0, 0, 1}), Polynomial{});
  SUBCASE("z^2 at t = 4") {
    auto fb = fiber(z2, 4.0, 0.0);
    REQUIRE(fb.size() == 2);
    CHECK(std::abs(fb.roots[0] - 2.0) < 1e-12);
    CHECK(std::abs(fb.roots[1] + 2.0) < 1e-12);
  }
  SUBCASE("critical fiber raises") { CHECK_THROWS_AS(fiber(z2, 0.0, 0.0), Error); }
  SUBCASE("canonical order for z^6 at t = 1") {
    const Deformation z6(P({0, 0, 0, 0, 0, 0, 1}), Polynomial{});
    auto fb = fiber(z6, 1.0, 0.0);
    for (int k = 0; k < 6; ++k) CHECK(std::abs(fb.roots[k] - unit(2 * pi * k / 6)) < 1e-12);
  }
  SUBCASE("fiber_from_roots validates") {
    auto fb = fiber_from_roots(z2, {4.0, 0.0}, {Complex{-2.0, 0.0}, Complex{2.0, 0.0}});
    CHECK(std::abs(fb.roots[0] + 2.0) < 1e-14);
    CHECK_THROWS_AS(fiber_from_roots(z2, {4.0, 0.0}, {Complex{2.0, 0.0}}), Error);
    CHECK_THROWS_AS(fiber_from_roots(z2, {4.0, 0.0}, {Complex{2.0, 0.0}, Complex{3.0, 0.0}}), Error);
  }
}

TEST_CASE("tracking around loops") {
  SUBCASE("square root swaps its two values") {
    const Deformation z2(P({0, 0, 1}), Polynomial{});
    auto start = fiber(z2, 1.0, 0.0);
    auto end = track_fiber(z2, circle(1.0, 0.0), start);
    CHECK(std::abs(end.roots[0] - start.roots[1]) < 1e-10);
    CHECK(std::abs(end.roots[1] - start.roots[0]) < 1e-10);
  }
  SUBCASE("z^6 shifts labels by one on a ccw circle") {
    const Deformation z6(P({0, 0, 0, 0, 0, 0, 1}), Polynomial{});
    auto start = fiber(z6, 2.0, 0.0);
    auto end = track_fiber(z6, circle(2.0, 0.0), start);
    auto perm = match_roots(end.roots, start.roots);
    for (int i = 0; i < 6; ++i) CHECK(perm[i] == (i + 1) % 6);
  }
  SUBCASE("a quarter turn on z^4 matches the analytic continuation") {
    const Deformation z4(P({0, 0, 0, 0, 1}), Polynomial{});
    auto start = fiber(z4, 1.0, 0.0);
    auto end = track_fiber(z4, circle(1.0, 0.0, pi / 2), start);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(end.roots[i] - start.roots[i] * unit(pi / 8)) < 1e-10);
  }
  SUBCASE("eps segment on z^2 + eps") {
    const Deformation d(P({0, 0, 1}), P({1}));
    auto start = fiber(d, 4.0, 0.0);
    PathSpec path({Segment::line({4.0, 0.0}, {4.0, 3.0})});
    auto end = track_fiber(d, path, start);
    CHECK(std::abs(end.roots[0] - 1.0) < 1e-10);
    CHECK(std::abs(end.roots[1] + 1.0) < 1e-10);
  }
  SUBCASE("collision on a path through a critical value") {
    const Deformation z2(P({0, 0, 1}), Polynomial{});
    auto start = fiber(z2, 1.0, 0.0);
    PathSpec path({Segment::line({1.0, 0.0}, {-1.0, 0.0})});
    CHECK_THROWS_AS(track_fiber(z2, path, start), Error);
  }
}

TEST_CASE("round trip along random loops") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_real_distribution<double> ang(0.0, 2 * pi);
  int done = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<GaussRational> fc, gc;
    const int deg = 2 + trial % 4;
    for (int k = 0; k <= deg; ++k) fc.emplace_back(coef(rng));
    fc.back() = GaussRational(1);
    for (int k = 0; k < deg; ++k) gc.emplace_back(coef(rng));
    const Deformation d{Polynomial(fc), Polynomial(gc)};
    const Complex eps{0.05, 0.01};
    const auto cv = critical_values(d, eps);
    double rmax = 0.0;
    for (auto v : cv) rmax = std::max(rmax, std::abs(v));
    const double r = 2.0 * (1.0 + rmax);
    const Complex target = std::polar(r, ang(rng));
    PathSpec loop = radial_arc_path(r, target, eps);
    loop.append(loop.reversed());
    auto start = fiber(d, r, eps);
    auto end = track_fiber(d, loop, start);
    for (std::size_t i = 0; i < start.size(); ++i)
      CHECK(std::abs(end.roots[i] - start.roots[i]) < 1e-10 * std::max(1.0, std::abs(start.roots[i])));
    ++done;
  }
  CHECK(done == 20);
}

TEST_CASE("critical values") {
  SUBCASE("z^3 - 3z") {
    const Deformation d(P({0, -3, 0, 1}), Polynomial{});
    auto cv = critical_values(d, GaussRational(0));
    REQUIRE(cv.size() == 2);
    CHECK(std::abs(cv[0] + 2.0) < 1e-12);
    CHECK(std::abs(cv[1] - 2.0) < 1e-12);
    auto cvf = critical_values(d, Complex{0.0, 0.0});
    REQUIRE(cvf.size() == 2);
  }
  SUBCASE("z^6 has only 0") {
    const Deformation d(P({0, 0, 0, 0, 0, 0, 1}), Polynomial{});
    auto cv = critical_values(d, GaussRational(0));
    REQUIRE(cv.size() == 1);
    CHECK(std::abs(cv[0]) < 1e-12);
  }
}

TEST_CASE("match_roots and dedupe") {
  std::vector<Complex> a = {1.0, 2.0, 3.0};
  std::vector<Complex> b = {3.0, 1.0, 2.0};
  auto m = match_roots(a, b);
  CHECK(m == std::vector<int>{1, 2, 0});
  std::vector<Complex> far = {5.0, 1.0, 2.0};
  CHECK_THROWS_AS(match_roots(a, far), Error);

  std::vector<Complex> v = {1.0, 1.0 + 1e-12, 2.0};
  CHECK(dedupe(v, 1e-9).size() == 2);
}

TEST_CASE("tracker config validation") {
  TrackerConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.min_step = 1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}
