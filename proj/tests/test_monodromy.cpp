#include <random>

#include "doctest.h"
#include "support.hpp"
#include "zcc/error.hpp"
#include "zcc/monodromy.hpp"

using namespace zcc;
using test::P;

namespace {

Permutation C(int n, std::vector<int> cyc) { return Permutation::cycle(n, cyc); }

Partition parts(std::initializer_list<std::vector<int>> blocks) { return Partition(blocks); }

}  // namespace

TEST_CASE("permutation basics") {
  const Permutation s = C(4, {0, 1, 2, 3});
  CHECK(s.images() == std::vector<int>{1, 2, 3, 0});
  CHECK(compose(s, s.inverse()).is_identity());
  CHECK(s.cycle_type() == std::vector<int>{4});
  // compose applies the inner permutation first
  const Permutation a = C(3, {0, 1}), b = C(3, {1, 2});
  CHECK(compose(a, b)[1] == 2);
  CHECK(compose(a, b)[2] == 0);
  CHECK_THROWS_AS(Permutation({0, 0, 1}), Error);
}

TEST_CASE("loop_basis") {
  SUBCASE("single value") {
    auto lb = loop_basis({Complex{0.0, 0.0}});
    CHECK(std::abs(lb.base_t - 2.0) < 1e-15);
    REQUIRE(lb.petals.size() == 1);
    CHECK(std::abs(lb.petals[0].start().t - lb.base_t) < 1e-15);
    CHECK(std::abs(lb.petals[0].end().t - lb.base_t) < 1e-12);
  }
  SUBCASE("two values on the real axis: 2 comes first") {
    auto lb = loop_basis({Complex{-2.0, 0.0}, Complex{2.0, 0.0}});
    REQUIRE(lb.values.size() == 2);
    CHECK(std::abs(lb.values[0] - 2.0) < 1e-15);
    CHECK(std::abs(lb.values[1] + 2.0) < 1e-15);
  }
  SUBCASE("empty") {
    auto lb = loop_basis({});
    CHECK(lb.petals.empty());
  }
  SUBCASE("coinciding values") {
    CHECK_THROWS_AS(loop_basis({Complex{1.0, 0.0}, Complex{1.0, 1e-12}}), Error);
  }
}

TEST_CASE("closure") {
  CHECK(*closure(make_group(4, {C(4, {0, 1, 2, 3})})).order() == 4);
  CHECK(*closure(make_group(3, {C(3, {0, 1}), C(3, {1, 2})})).order() == 6);
  CHECK(*closure(make_group(6, {C(6, {0, 1, 2, 3, 4, 5}), C(6, {0, 1})})).order() == 720);
  CHECK_THROWS_AS(closure(make_group(10, {Permutation::identity(10)})), Error);
  auto g = closure(make_group(3, {C(3, {0, 1, 2})}));
  CHECK(g.contains(Permutation::identity(3)));
  CHECK(g.contains(C(3, {0, 2, 1})));
  CHECK_FALSE(g.contains(C(3, {0, 1})));
}

TEST_CASE("transitivity") {
  const auto c4 = make_group(4, {C(4, {0, 1, 2, 3})});
  CHECK(is_transitive(c4));
  CHECK_FALSE(is_two_transitive(c4));
  const auto s4 = make_group(4, {C(4, {0, 1, 2, 3}), C(4, {0, 1})});
  CHECK(is_transitive(s4));
  CHECK(is_two_transitive(s4));
  CHECK_FALSE(is_transitive(make_group(3, {C(3, {0, 1})})));
}

TEST_CASE("block_systems") {
  CHECK(block_systems(make_group(4, {C(4, {0, 1, 2, 3})})) == std::vector<Partition>{parts({{0, 2}, {1, 3}})});
  CHECK(block_systems(make_group(4, {C(4, {0, 1, 2, 3}), C(4, {0, 1})})).empty());
  CHECK(block_systems(make_group(6, {C(6, {0, 1, 2, 3, 4, 5})})) ==
        std::vector<Partition>{parts({{0, 2, 4}, {1, 3, 5}}), parts({{0, 3}, {1, 4}, {2, 5}})});
  // C8: only the finest system survives
  CHECK(block_systems(make_group(8, {C(8, {0, 1, 2, 3, 4, 5, 6, 7})})) ==
        std::vector<Partition>{parts({{0, 4}, {1, 5}, {2, 6}, {3, 7}})});
}

TEST_CASE("monodromy_at") {
  SUBCASE("z^5 is a 5-cycle") {
    auto g = monodromy_at(Deformation(test::monomial(5), Polynomial{}), 0.0);
    REQUIRE(g.generators.size() == 1);
    CHECK(g.generators[0].cycle_type() == std::vector<int>{5});
    CHECK(*closure(g).order() == 5);
  }
  SUBCASE("Chebyshev T3 gives two transpositions") {
    const Polynomial t3 = test::chebyshev(3);
    CHECK(t3 == P({0, -3, 0, 4}));
    auto g = monodromy_at(Deformation(t3, Polynomial{}), 0.0);
    REQUIRE(g.generators.size() == 2);
    for (const auto& s : g.generators) CHECK(s.cycle_type() == std::vector<int>{2, 1});
    CHECK(*closure(g).order() == 6);
    CHECK(g.infinity.cycle_type() == std::vector<int>{3});
  }
  SUBCASE("z^4 + z gives S4") {
    auto g = monodromy_at(Deformation(P({0, 1, 0, 0, 1}), Polynomial{}), 0.0);
    CHECK(g.generators.size() == 3);
    CHECK(*closure(g).order() == 24);
  }
  SUBCASE("the loop at infinity is an n-cycle for deformations") {
    auto g = monodromy_at(Deformation(test::monomial(6), P({0, 0, 1, 1})), {1.0 / 7.0, 0.0});
    CHECK(g.infinity.cycle_type() == std::vector<int>{6});
    CHECK(is_transitive(g));
  }
  SUBCASE("leading coefficient vanishing") {
    CHECK_THROWS_AS(monodromy_at(Deformation(test::monomial(4), test::monomial(4)), -1.0), Error);
  }
}

TEST_CASE("classify") {
  SUBCASE("z^5") {
    auto c = classify(monodromy_at(Deformation(test::monomial(5), Polynomial{}), 0.0));
    CHECK(c.tag == GroupClass::Tag::CyclicPrime);
    CHECK(c.p == 5);
  }
  SUBCASE("T5") {
    auto g = monodromy_at(Deformation(test::chebyshev(5), Polynomial{}), 0.0);
    auto c = classify(g);
    CHECK(c.tag == GroupClass::Tag::DihedralChebyshev);
    CHECK(c.p == 5);
    CHECK(*closure(g).order() == 10);
  }
  SUBCASE("z^4") {
    auto c = classify(monodromy_at(Deformation(test::monomial(4), Polynomial{}), 0.0));
    CHECK(c.tag == GroupClass::Tag::Imprimitive);
    CHECK(c.blocks == parts({{0, 2}, {1, 3}}));
  }
  SUBCASE("z^4 + z") {
    auto c = classify(monodromy_at(Deformation(P({0, 1, 0, 0, 1}), Polynomial{}), 0.0));
    CHECK(c.tag == GroupClass::Tag::TwoTransitive);
  }
  SUBCASE("primitive group outside the trichotomy") {
    // C7 extended by x -> 2x: order 21, neither 2-transitive nor dihedral
    auto g = make_group(7, {C(7, {0, 1, 2, 3, 4, 5, 6}), compose(C(7, {1, 2, 4}), C(7, {3, 6, 5}))});
    CHECK(*closure(g).order() == 21);
    CHECK_THROWS_AS(classify(g), Error);
  }
  SUBCASE("invariant under relabeling") {
    std::mt19937 rng(8);
    auto g = monodromy_at(Deformation(test::chebyshev(5), Polynomial{}), 0.0);
    const auto base = classify(g);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> v{0, 1, 2, 3, 4};
      std::shuffle(v.begin(), v.end(), rng);
      const Permutation r(v);
      std::vector<Permutation> gens;
      for (const auto& s : g.generators) gens.push_back(compose(compose(r, s), r.inverse()));
      CHECK(classify(make_group(5, gens)).tag == base.tag);
    }
  }
}

TEST_CASE("epsilon samples") {
  auto s = epsilon_samples(5);
  CHECK(s[0] == GaussRational(mpq_class(1, 7)));
  CHECK(s[1] == GaussRational(mpq_class(1, 5)));
  CHECK(s[2] == GaussRational(mpq_class(1, 11)));
  CHECK(s[3] == GaussRational(mpq_class(1, 13)));
  CHECK(s[4] == GaussRational(mpq_class(1, 17)));
}

TEST_CASE("deformation_group") {
  SUBCASE("z^6 + eps (z^3 + z^2) is two-transitive") {
    auto g = deformation_group(Deformation(test::monomial(6), P({0, 0, 1, 1})));
    CHECK(classify(g).tag == GroupClass::Tag::TwoTransitive);
  }
  SUBCASE("z^4 + eps (z^4 + z^2 + 1) has blocks of size 2") {
    auto g = deformation_group(Deformation(test::monomial(4), P({1, 0, 1, 0, 1})));
    auto c = classify(g);
    REQUIRE(c.tag == GroupClass::Tag::Imprimitive);
    for (const auto& b : c.blocks) CHECK(b.size() == 2);
  }
  SUBCASE("z^5 + eps z^5 is cyclic") {
    auto c = classify(deformation_group(Deformation(test::monomial(5), test::monomial(5))));
    CHECK(c.tag == GroupClass::Tag::CyclicPrime);
    CHECK(c.p == 5);
  }
  SUBCASE("z^4 + z^2 + eps z^3 agrees at two samples") {
    auto g = deformation_group(Deformation(P({0, 0, 1, 0, 1}), test::monomial(3)));
    CHECK(is_transitive(g));
    CHECK(g.order().has_value());
  }
}

TEST_CASE("transport round trip") {
  const Deformation d(test::monomial(6), P({0, 0, 1, 1}));
  const auto f1 = fiber(d, 2.5, 1.0 / 7.0);
  const auto moved = transport(d, f1, {Complex{0.0, 3.0}, 1.0 / 5.0});
  const auto back = transport(d, moved, f1.base);
  for (std::size_t i = 0; i < f1.size(); ++i) CHECK(std::abs(back.roots[i] - f1.roots[i]) < 1e-10);
}
