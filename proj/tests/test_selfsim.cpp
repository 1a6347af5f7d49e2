#include "catch_amalgamated.hpp"

#include "helpers.hpp"

using namespace boolinv;

namespace {

  using T = Triple<Odometer>;

  Rational q(long p, long d = 1) {
    return make_rational(p, d);
  }

  Word w(std::string const& s) {
    Word out;
    for (char c : s) {
      out.push_back(static_cast<Letter>(c - '0'));
    }
    return out;
  }

  std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    auto d = a / b;
    return (a % b != 0 && (a < 0) != (b < 0)) ? d - 1 : d;
  }

  // the odometer written as a two-state automaton
  AutomatonGroup odometer_automaton() {
    return AutomatonGroup(2, {"z", "e"}, {{1, 0}, {0, 1}}, {{1, 0}, {1, 1}});
  }

  T random_triple(std::mt19937_64& rng, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t>  len(0, max_len);
    std::uniform_int_distribution<std::int64_t> power(-3, 3);
    std::uniform_int_distribution<Letter>       bit(0, 1);
    auto                                        random_word = [&](std::size_t n) {
      Word out(n);
      for (auto& x : out) {
        x = bit(rng);
      }
      return out;
    };
    return {false, random_word(len(rng)), power(rng), random_word(len(rng))};
  }

}  // namespace

TEST_CASE("odometer action", "[selfsim]") {
  Odometer a;
  CHECK(act(a, a.generator(), w("011")) == w("111"));
  CHECK(act(a, a.generator(), w("111")) == w("000"));
  CHECK(restrict(a, a.generator(), w("111")) == 1);
  CHECK(restrict(a, a.generator(), w("011")) == 0);
  CHECK(a.to_string(0) == "e");
  CHECK(a.to_string(1) == "z");
  CHECK(a.to_string(-2) == "z^-2");
  CHECK_THROWS_AS(a.act(1, 2), ArgumentError);

  SECTION("binary addition oracle") {
    for (std::size_t n = 1; n <= 6; ++n) {
      std::int64_t size = std::int64_t(1) << n;
      for (std::int64_t k = -9; k <= 9; ++k) {
        for (auto const& x : words(n, 2)) {
          auto v = static_cast<std::int64_t>(word_index(x, 2)) + k;
          CHECK(static_cast<std::int64_t>(word_index(act(a, k, x), 2)) == v - size * floor_div(v, size));
          CHECK(restrict(a, k, x) == floor_div(v, size));
        }
      }
    }
  }
}

TEST_CASE("self-similarity identities", "[selfsim][property]") {
  Odometer a;
  auto     b = odometer_automaton();
  auto     z = b.state(0);
  std::vector<AutomatonGroup::element_type> elems{b.identity(), z, b.inverse(z),
                                                  b.multiply(z, z), b.multiply(b.state(1), z)};
  for (std::size_t n = 0; n <= 6; ++n) {
    auto all = words(n, 2);
    for (std::int64_t g = -4; g <= 4; ++g) {
      std::set<Word> image;
      for (auto const& x : all) {
        image.insert(act(a, g, x));
        for (std::int64_t h = -2; h <= 2; ++h) {
          CHECK(act(a, a.multiply(g, h), x) == act(a, g, act(a, h, x)));
          CHECK(restrict(a, a.multiply(g, h), x)
                == a.multiply(restrict(a, g, act(a, h, x)), restrict(a, h, x)));
        }
        for (std::size_t cut = 0; cut <= n; ++cut) {
          Word u(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(cut));
          Word v(x.begin() + static_cast<std::ptrdiff_t>(cut), x.end());
          auto lhs = act(a, g, u);
          auto tail = act(a, restrict(a, g, u), v);
          lhs.insert(lhs.end(), tail.begin(), tail.end());
          CHECK(act(a, g, x) == lhs);
        }
      }
      CHECK(image.size() == all.size());
    }
    for (auto const& g : elems) {
      for (auto const& h : elems) {
        for (auto const& x : all) {
          CHECK(act(b, b.multiply(g, h), x) == act(b, g, act(b, h, x)));
          CHECK(act(b, b.restrict(b.multiply(g, h), 0), x)
                == act(b, b.multiply(b.restrict(g, b.act(h, 0)), b.restrict(h, 0)), x));
        }
      }
    }
  }
}

TEST_CASE("automaton groups", "[selfsim]") {
  auto b = odometer_automaton();
  Odometer a;
  CHECK(b.state_count() == 2);
  CHECK(b.to_string(b.multiply(b.state(0), b.inverse(b.state(1)))) == "z e^-1");
  CHECK(b.multiply(b.state(0), b.inverse(b.state(0))) == b.identity());
  for (std::size_t n = 1; n <= 5; ++n) {
    for (auto const& x : words(n, 2)) {
      CHECK(act(b, b.state(0), x) == act(a, 1, x));
      CHECK(act(b, b.inverse(b.state(0)), x) == act(a, -1, x));
      CHECK(act(b, b.multiply(b.state(0), b.state(0)), x) == act(a, 2, x));
    }
  }
  CHECK_THROWS_AS(AutomatonGroup(2, {"a"}, {{0, 0}}, {{0, 0}}), ArgumentError);
  CHECK_THROWS_AS(AutomatonGroup(2, {"a"}, {{1, 0}}, {{0, 3}}), ArgumentError);
  CHECK_THROWS_AS(AutomatonGroup(2, {"a"}, {{1, 0}}, {}), ArgumentError);
  CHECK_THROWS_AS(AutomatonGroup(0, {}, {}, {}), ArgumentError);
  CHECK_THROWS_AS(b.state(2), ArgumentError);
  CHECK_THROWS_AS(b.act(b.state(0), 2), ArgumentError);

  auto report_a = odometer_unique_mean(3);
  std::vector<Triple<AutomatonGroup>> gens{{false, {}, b.state(0), {}}};
  for (std::size_t k = 1; k <= 3; ++k) {
    gens.push_back({false, Word(k, 0), b.identity(), Word(k, 0)});
  }
  auto report_b = unique_mean_check(b, 3, gens);
  CHECK(report_b.size == report_a.size);
  CHECK(report_b.ok());
  CHECK(report_b.word_weights == report_a.word_weights);
}

TEST_CASE("word indexing", "[selfsim]") {
  CHECK(word_index(w("011"), 2) == 6);
  CHECK(word_of(6, 3, 2) == w("011"));
  CHECK(word_to_string({}) == "ε");
  CHECK(word_to_string(w("10")) == "10");
  CHECK(words(3, 2).size() == 8);
  for (std::size_t i = 0; i < 27; ++i) {
    CHECK(word_index(word_of(i, 3, 3), 3) == i);
  }
  CHECK_THROWS_AS(word_index(w("2"), 2), ArgumentError);
}

TEST_CASE("triple products", "[selfsim]") {
  Odometer a;
  T        e01{false, w("0"), 0, w("1")};
  CHECK(triple_product(a, e01, T{false, w("1"), 1, w("0")}) == T{false, w("0"), 1, w("0")});
  CHECK(triple_product(a, e01, T{false, w("0"), 1, w("1")}) == T::make_zero());
  CHECK(triple_product(a, T::make_zero(), e01) == T::make_zero());
  CHECK(to_string(a, e01) == "(0, e, 1)");
  CHECK(to_string(a, T{false, {}, 1, {}}) == "(ε, z, ε)");
  CHECK(to_string(a, T::make_zero()) == "0");
  CHECK(triple_star(a, T{false, w("0"), 1, w("11")}) == T{false, w("11"), -1, w("0")});

  SECTION("associativity") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 3000; ++i) {
      auto r = random_triple(rng, 3);
      auto s = random_triple(rng, 3);
      auto t = random_triple(rng, 3);
      CHECK(triple_product(a, triple_product(a, r, s), t)
            == triple_product(a, r, triple_product(a, s, t)));
    }
  }
  SECTION("inverse semigroup laws") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 1000; ++i) {
      auto s  = random_triple(rng, 3);
      auto t  = random_triple(rng, 3);
      auto ss = triple_star(a, s);
      CHECK(triple_product(a, triple_product(a, s, ss), s) == s);
      CHECK(triple_star(a, triple_product(a, s, t)) == triple_product(a, triple_star(a, t), ss));
    }
  }
  SECTION("realization is a homomorphism") {
    std::mt19937_64 rng(31);
    std::size_t     n = 4;
    for (int i = 0; i < 1000; ++i) {
      auto s = random_triple(rng, 3);
      auto t = random_triple(rng, 3);
      s.beta.resize(s.alpha.size(), 1);
      t.beta.resize(t.alpha.size(), 0);
      auto st = triple_product(a, s, t);
      CHECK(realize(a, st, n) == compose(realize(a, s, n), realize(a, t, n)));
      CHECK(realize(a, triple_star(a, s), n) == realize(a, s, n).inverse());
    }
  }
  SECTION("realize errors") {
    CHECK_THROWS_AS(realize(a, T{false, w("0"), 0, w("01")}, 3), ArgumentError);
    CHECK_THROWS_AS(realize(a, T{false, w("0101"), 0, w("0101")}, 3), ArgumentError);
    CHECK(realize(a, T::make_zero(), 2).rank() == 0);
    CHECK(realize(a, T{false, w("1"), 0, w("0")}, 2).graph()
          == std::vector<std::pair<Point, Point>>{{0, 1}, {2, 3}});
  }
}

TEST_CASE("odometer truncations", "[selfsim]") {
  Odometer a;
  SECTION("small examples") {
    auto g = depth_truncation(a, 1, std::vector<T>{{false, {}, 1, {}}});
    CHECK(g.size() == 3);
    CHECK(depth_truncation(a, 1, odometer_generators(1)).size() == 7);
    CHECK(odometer_generators(3).size() == 4);
    CHECK(cylinder_idempotents(a, 2).size() == 6);
    CHECK_THROWS_AS(depth_truncation(a, 0, odometer_generators(1)), ArgumentError);
    CHECK_THROWS_AS(depth_truncation(a, 5, odometer_generators(5), 100), SizeLimitError);
  }
  SECTION("unique mean at each depth") {
    for (std::size_t n = 1; n <= 5; ++n) {
      auto r = odometer_unique_mean(n);
      CHECK(r.ok());
      CHECK(r.orbit_count == 1);
      CHECK(r.dimension == 0);
      CHECK(r.atom_count == (std::size_t(1) << n));
      CHECK(r.word_weights == std::vector<Rational>(std::size_t(1) << n, q(1, 1L << n)));
      auto S = depth_truncation(a, n, odometer_generators(n));
      CHECK(verify_inverse_axioms(S));
      for (auto const& c : cylinder_idempotents(a, n)) {
        CHECK(S.find(realize(a, c, n)).has_value());
      }
    }
  }
  SECTION("without the generator the mean is far from unique") {
    auto r = unique_mean_check(a, 3, cylinder_idempotents(a, 3));
    CHECK_FALSE(r.unique);
    CHECK(r.orbit_count == 8);
    CHECK(r.dimension == 7);
    CHECK(r.word_weights.empty());
  }
}
