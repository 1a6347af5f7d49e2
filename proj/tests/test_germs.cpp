#include "catch_amalgamated.hpp"

#include "helpers.hpp"

using namespace boolinv;
using testing::id;
using testing::partial_identity;
using testing::pb;

TEST_CASE("ultrafilters", "[germs]") {
  CHECK(ultrafilters(testing::symmetric_inverse_monoid(3)).size() == 3);
  CHECK(ultrafilters(testing::z2_with_zero()).size() == 1);
  CHECK(ultrafilters(testing::zero_one()).size() == 1);
  CHECK_THROWS_AS(ultrafilters(testing::five_element()), StructureError);
}

TEST_CASE("theta is the standard action", "[germs]") {
  auto S    = testing::symmetric_inverse_monoid(3);
  auto swap = id(S, pb(3, {{0, 1}, {1, 0}, {2, 2}}));
  auto a0   = id(S, partial_identity(3, {0}));
  auto a1   = id(S, partial_identity(3, {1}));
  CHECK(theta(S, swap, a0) == a1);
  CHECK(theta(S, S.identity(), a0) == a0);
  CHECK_THROWS_AS(theta(S, id(S, pb(3, {{1, 2}})), a0), ArgumentError);
  CHECK_THROWS_AS(theta(S, swap, S.zero()), ArgumentError);

  for (auto const& T : testing::random_boolean_monoids(10, 8)) {
    auto atom_list = atoms(T);
    for (ElementId s = 0; s < T.size(); ++s) {
      for (ElementId a : atom_list) {
        if (T.product(T.source(s), a) != a) {
          continue;
        }
        auto b = theta(T, s, a);
        CHECK(theta(T, T.star(s), b) == a);
        for (ElementId t = 0; t < T.size(); ++t) {
          if (T.product(T.source(t), b) == b) {
            CHECK(theta(T, T.product(t, s), a) == theta(T, t, b));
          }
        }
      }
    }
  }
}

TEST_CASE("tight groupoids of the named examples", "[germs]") {
  SECTION("I(3) gives the full relation on three points") {
    auto S = testing::symmetric_inverse_monoid(3);
    auto G = tight_groupoid(S);
    CHECK(G.groupoid.unit_count() == 3);
    CHECK(G.groupoid.arrow_count() == 9);
    CHECK(G.groupoid.orbits().size() == 1);
    CHECK(G.groupoid.is_principal());
    CHECK(G.groupoid.is_minimal());
    CHECK(find_isomorphism(G.groupoid, FiniteGroupoid::full_relation(3)).has_value());
  }
  SECTION("Z2 with zero has isotropy Z2") {
    auto S = testing::z2_with_zero();
    auto G = tight_groupoid(S);
    CHECK(G.groupoid.unit_count() == 1);
    CHECK(G.groupoid.arrow_count() == 2);
    CHECK(G.groupoid.isotropy(0).order() == 2);
    CHECK_FALSE(G.groupoid.is_principal());
    CHECK(G.groupoid.is_minimal());
    CHECK(G.groupoid.isotropy_witness() == UnitId{0});
  }
  SECTION("{0, 1}") {
    auto G = tight_groupoid(testing::zero_one());
    CHECK(G.groupoid.unit_count() == 1);
    CHECK(G.groupoid.arrow_count() == 1);
  }
  SECTION("non-Boolean input") {
    CHECK_THROWS_AS(tight_groupoid(testing::five_element()), StructureError);
    CHECK_THROWS_AS(tight_groupoid(closure(testing::singleton_maps(3), 3, true)),
                    StructureError);
  }
}

TEST_CASE("germ quotient agrees with the restriction construction", "[germs][property]") {
  auto monoids = testing::random_boolean_monoids(15, 17);
  monoids.push_back(testing::symmetric_inverse_monoid(3));
  monoids.push_back(testing::z2_with_zero());
  monoids.push_back(testing::two_plus_two());
  for (auto const& S : monoids) {
    auto G = germ_groupoid(S, true);
    auto Q = germ_quotient_groupoid(S);
    CHECK(find_isomorphism(G.groupoid, Q).has_value());
    // the germ of (s, a) is the germ of (sa, a)
    for (ElementId s = 0; s < S.size(); ++s) {
      for (std::size_t x = 0; x < G.units.size(); ++x) {
        auto a = G.units[x];
        if (S.product(S.source(s), a) == a) {
          auto arrow = G.arrow_of(S.product(s, a));
          REQUIRE(arrow);
          CHECK(G.groupoid.src(*arrow) == x);
        }
      }
    }
    // principal iff u*u = uu* = atom forces u to be that atom
    bool algebraic = true;
    for (ElementId u : G.arrows) {
      if (S.source(u) == S.range(u) && u != S.source(u)) {
        algebraic = false;
      }
    }
    CHECK(algebraic == G.groupoid.is_principal());
  }
}

TEST_CASE("orbits, isotropy and minimality", "[germs][groupoid]") {
  auto two  = FiniteGroupoid::full_relation(2);
  auto both = FiniteGroupoid::disjoint_union(two, two);
  CHECK(both.orbits().size() == 2);
  CHECK_FALSE(both.is_minimal());
  CHECK(both.is_principal());
  auto bundle = FiniteGroupoid::group_bundle(GroupTable::cyclic(3));
  CHECK_FALSE(bundle.is_principal());
  CHECK(bundle.isotropy_arrows(0).size() == 3);
  for (ArrowId b = 0; b < both.arrow_count(); ++b) {
    for (ArrowId a = 0; a < both.arrow_count(); ++a) {
      if (!both.composable(b, a)) {
        CHECK_THROWS_AS(both.compose(b, a), ArgumentError);
      }
    }
  }
}

TEST_CASE("group tables", "[germs][groupoid]") {
  auto c4 = GroupTable::cyclic(4);
  CHECK(c4.order() == 4);
  CHECK(c4.element_order(1) == 4);
  CHECK(c4.mul(c4.inverse(3), 3) == 0);
  CHECK_THROWS_AS(GroupTable(2, {0, 1, 1, 1}), ValidationError);
  CHECK_THROWS_AS(GroupTable(2, {0, 1}), ArgumentError);
  // Z4 and Z2 x Z2 differ
  GroupTable klein(4, {0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0});
  CHECK_FALSE(group_isomorphism(c4, klein).has_value());
  CHECK(group_isomorphism(c4, GroupTable::cyclic(4)).has_value());
}

TEST_CASE("algebraic predicates", "[germs]") {
  SECTION("I(3)") {
    auto p = algebraic_predicates(testing::symmetric_inverse_monoid(3));
    CHECK(p.hausdorff);
    CHECK(p.essentially_principal);
    CHECK(p.minimal);
  }
  SECTION("Z2 with zero") {
    auto p = algebraic_predicates(testing::z2_with_zero());
    CHECK(p.hausdorff);
    CHECK_FALSE(p.essentially_principal);
    CHECK(p.minimal);
  }
  SECTION("{0, 1}") {
    auto p = algebraic_predicates(testing::zero_one());
    CHECK(p.hausdorff);
    CHECK(p.essentially_principal);
    CHECK(p.minimal);
  }
  SECTION("agreement with the groupoid side") {
    auto monoids = testing::random_boolean_monoids(15, 29);
    monoids.push_back(testing::two_plus_two());
    for (auto const& S : monoids) {
      auto G = tight_groupoid(S);
      auto p = algebraic_predicates(S);
      CHECK(p.minimal == (G.groupoid.orbits().size() == 1));
      CHECK(p.essentially_principal == G.groupoid.is_principal());
      CHECK(p.hausdorff);
    }
  }
}

TEST_CASE("ample semigroups and the Stone roundtrip", "[germs]") {
  CHECK(ample_semigroup(FiniteGroupoid::full_relation(3)).size() == 34);
  CHECK(ample_semigroup(FiniteGroupoid::full_relation(1)).size() == 2);
  CHECK(ample_semigroup(FiniteGroupoid::group_bundle(GroupTable::cyclic(2))).size() == 3);
  CHECK(bisections(FiniteGroupoid::full_relation(3)).size() == 34);
  for (std::size_t k = 1; k <= 4; ++k) {
    CHECK(stone_roundtrip(FiniteGroupoid::full_relation(k)));
  }
  CHECK(stone_roundtrip(FiniteGroupoid::disjoint_union(FiniteGroupoid::full_relation(2),
                                                       FiniteGroupoid::full_relation(3))));
  CHECK(stone_roundtrip(FiniteGroupoid::group_bundle(GroupTable::cyclic(3))));
  // the plain closure R_3 has the same germs as I(3)
  auto R = closure(testing::singleton_maps(3), 3, true);
  CHECK(ample_semigroup(germ_groupoid(R).groupoid).size() == 34);
}

TEST_CASE("groupoid structure constructors", "[germs][groupoid]") {
  auto G = FiniteGroupoid::from_structure({2, 1}, {GroupTable(), GroupTable::cyclic(2)});
  CHECK(G.unit_count() == 3);
  CHECK(G.arrow_count() == 4 + 2);
  CHECK_FALSE(G.is_principal());
  for (ArrowId a = 0; a < G.arrow_count(); ++a) {
    CHECK(G.compose(G.inverse(a), a) == G.unit_arrow(G.src(a)));
    CHECK(G.compose(a, G.unit_arrow(G.src(a))) == a);
  }
}
