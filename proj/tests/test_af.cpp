#include "catch_amalgamated.hpp"

#include <cmath>
#include <numeric>

#include "helpers.hpp"

using namespace boolinv;

namespace {

  Rational q(long p, long d = 1) {
    return make_rational(p, d);
  }

  std::size_t fib(std::size_t n) {
    std::size_t a = 0, b = 1;
    for (std::size_t i = 0; i < n; ++i) {
      auto t = a + b;
      a      = b;
      b      = t;
    }
    return a;
  }

  std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e-- > 0) {
      r *= b;
    }
    return r;
  }

  bool has_item(BratteliDiagram const& B, std::string const& prefix) {
    for (auto const& v : B.violations()) {
      if (v.rfind(prefix, 0) == 0) {
        return true;
      }
    }
    return false;
  }

  double as_double(Rational const& r) {
    return r.get_d();
  }

}  // namespace

TEST_CASE("path counts", "[af]") {
  SECTION("Fibonacci") {
    auto B = BratteliDiagram::fibonacci(12);
    for (std::size_t i = 1; i <= 12; ++i) {
      CHECK(B.dims(i) == std::vector<std::size_t>{fib(i + 1), fib(i)});
    }
    CHECK(B.dims(0) == std::vector<std::size_t>{1});
  }
  SECTION("two power") {
    auto B = BratteliDiagram::two_power(10);
    for (std::size_t i = 0; i <= 10; ++i) {
      CHECK(B.dims(i) == std::vector<std::size_t>{ipow(2, i)});
    }
  }
  SECTION("two towers") {
    auto B = BratteliDiagram::two_towers(5);
    CHECK(B.dims(5) == std::vector<std::size_t>{1, 1});
  }
  SECTION("multiplicities") {
    BratteliDiagram B({1, 2, 1}, {{0, 0, 0, 1}, {0, 0, 1, 2}, {1, 0, 0, 3}, {1, 1, 0, 1}});
    CHECK(B.dims(1) == std::vector<std::size_t>{1, 2});
    CHECK(B.dims(2) == std::vector<std::size_t>{5});
    PathSpace P(B, 2);
    CHECK(P.size() == 5);
  }
  SECTION("errors") {
    auto B = BratteliDiagram::two_power(3);
    CHECK_THROWS_AS(B.dims(4), ArgumentError);
    CHECK_THROWS_AS(PathSpace(B, 4), ArgumentError);
  }
}

TEST_CASE("diagram validation", "[af]") {
  CHECK(BratteliDiagram::fibonacci(4).is_valid());
  CHECK(has_item(BratteliDiagram({}, {}), "item 1"));
  CHECK(has_item(BratteliDiagram({2, 1}, {{0, 0, 0, 1}, {0, 1, 0, 1}}), "item 1"));
  CHECK(has_item(BratteliDiagram({1, 0}, {}), "item 2"));
  CHECK(has_item(BratteliDiagram({1, 1}, {{0, 0, 3, 1}}), "item 3"));
  CHECK(has_item(BratteliDiagram({1, 1}, {{1, 0, 0, 1}}), "item 3"));
  CHECK(has_item(BratteliDiagram({1, 1}, {{0, 0, 0, 0}}), "item 3"));
  CHECK(has_item(BratteliDiagram({1, 2}, {{0, 0, 0, 1}}), "item 4"));
  CHECK(has_item(BratteliDiagram({1, 1, 2}, {{0, 0, 0, 1}, {1, 0, 0, 1}}), "item 4"));
  BratteliDiagram bad({1, 2}, {{0, 0, 0, 1}});
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  CHECK_THROWS_AS(bad.dims(1), ValidationError);
  CHECK_THROWS_AS(coherent_means(bad, 1), ValidationError);
}

TEST_CASE("path spaces", "[af]") {
  auto      B = BratteliDiagram::fibonacci(5);
  PathSpace P(B, 5);
  auto      k = B.dims(5);
  CHECK(P.size() == k[0] + k[1]);
  CHECK(P.block(0).size() == k[0]);
  CHECK(P.block(1).size() == k[1]);
  for (std::size_t p = 0; p < P.size(); ++p) {
    CHECK(P.index(P.path(p)) == p);
    CHECK(P.path(p).size() == 5);
    if (p > 0) {
      CHECK(P.path(p - 1) < P.path(p));
    }
  }
  CHECK_THROWS_AS(P.index({0}), ArgumentError);
}

TEST_CASE("truncation monoids", "[af]") {
  std::vector<std::size_t> sizes{1, 2, 7, 34, 209, 1546, 13327};
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    CHECK(symmetric_inverse_monoid_size(k) == sizes[k]);
  }
  auto two = BratteliDiagram::two_power(4);
  CHECK(truncation_monoid(two, 1).size() == 7);
  CHECK(truncation_monoid(two, 2).size() == 209);
  auto fibo = BratteliDiagram::fibonacci(4);
  auto S2   = truncation_monoid(fibo, 2);
  CHECK(S2.size() == 7 * 2);
  auto S3 = truncation_monoid(fibo, 3);
  CHECK(S3.size() == 34 * 7);
  CHECK(S3.idempotents().size() == ipow(2, 3) * ipow(2, 2));
  CHECK(verify_inverse_axioms(S3));
  CHECK(atoms(S3).size() == 5);
  CHECK_THROWS_AS(truncation_monoid(two, 0), ArgumentError);
  CHECK_THROWS_AS(truncation_monoid(two, 3, 1000), SizeLimitError);
  CHECK_THROWS_AS(truncation_monoid(BratteliDiagram::two_power(4), 4), SizeLimitError);

  auto R = matrix_unit_monoid(fibo, 3);
  CHECK(R.size() == 9 + 4 + 2);
  CHECK(verify_inverse_axioms(R));
  CHECK(find_isomorphism(germ_groupoid(R).groupoid, germ_groupoid(S3).groupoid).has_value());

  bool full = true;
  auto L    = level_monoid(two, 3, full, 1000);
  CHECK_FALSE(full);
  CHECK(L.size() == 64 + 2);
  level_monoid(two, 1, full);
  CHECK(full);
}

TEST_CASE("the connecting maps are unital embeddings", "[af][property]") {
  std::vector<BratteliDiagram> diagrams{BratteliDiagram::two_power(3),
                                        BratteliDiagram::fibonacci(4),
                                        BratteliDiagram::two_towers(3),
                                        BratteliDiagram({1, 2, 1, 2},
                                                        {{0, 0, 0, 1},
                                                         {0, 0, 1, 2},
                                                         {1, 0, 0, 1},
                                                         {1, 1, 0, 1},
                                                         {2, 0, 0, 1},
                                                         {2, 0, 1, 1}})};
  for (auto const& B : diagrams) {
    for (std::size_t i = 1; i + 1 <= B.depth(); ++i) {
      auto k = B.dims(i + 1);
      if (std::accumulate(k.begin(), k.end(), std::size_t{0}) > 5) {
        break;
      }
      auto Si = truncation_monoid(B, i);
      auto Sj = truncation_monoid(B, i + 1);
      auto f  = embed(B, i, Si, Sj);
      CHECK(f[Si.zero()] == Sj.zero());
      CHECK(f[Si.identity()] == Sj.identity());
      std::set<ElementId> image(f.begin(), f.end());
      CHECK(image.size() == Si.size());
      for (ElementId s = 0; s < Si.size(); ++s) {
        CHECK(f[Si.star(s)] == Sj.star(f[s]));
        for (ElementId t = 0; t < Si.size(); ++t) {
          CHECK(f[Si.product(s, t)] == Sj.product(f[s], f[t]));
        }
      }
    }
  }
  Embedding phi(BratteliDiagram::fibonacci(3), 1);
  CHECK_THROWS_AS(phi(PartialBijection::identity(5)), ArgumentError);
  CHECK_THROWS_AS(phi(PartialBijection::from_pairs(2, {{0, 1}})), ArgumentError);
}

TEST_CASE("level means", "[af]") {
  SECTION("two power levels have a unique mean") {
    auto B = BratteliDiagram::two_power(6);
    for (std::size_t i = 1; i <= 6; ++i) {
      auto L = level_means(B, i);
      REQUIRE(L.vertices.size() == 1);
      CHECK(L.dimension == 0);
      for (auto const& w : L.vertices[0]) {
        CHECK(w == q(1, static_cast<long>(ipow(2, i))));
      }
    }
  }
  SECTION("Fibonacci levels are segments") {
    auto B = BratteliDiagram::fibonacci(5);
    for (std::size_t i = 1; i <= 5; ++i) {
      auto L = level_means(B, i);
      CHECK(L.vertices.size() == 2);
      CHECK(L.dimension == 1);
      PathSpace P(B, i);
      for (auto const& w : L.vertices) {
        // a vertex is uniform on one block and zero on the other
        std::set<Rational> on0, on1;
        for (auto p : P.block(0)) {
          on0.insert(w[p]);
        }
        for (auto p : P.block(1)) {
          on1.insert(w[p]);
        }
        CHECK(on0.size() == 1);
        CHECK(on1.size() == 1);
        CHECK((*on0.begin() == 0) != (*on1.begin() == 0));
      }
    }
  }
  SECTION("pullback of a mean is a mean") {
    auto B = BratteliDiagram::fibonacci(4);
    for (std::size_t i = 1; i < 4; ++i) {
      Embedding phi(B, i);
      auto      upper = level_means(B, i + 1);
      for (auto const& w : upper.vertices) {
        auto down = pullback(phi, w);
        Rational total = 0;
        for (auto const& x : down) {
          total += x;
          CHECK(x >= 0);
        }
        CHECK(total == 1);
        // constant on each block
        for (std::size_t v = 0; v < 2; ++v) {
          auto b = phi.from().block(v);
          for (auto p : b) {
            CHECK(down[p] == down[b[0]]);
          }
        }
      }
      CHECK_THROWS_AS(pullback(phi, {1}), ArgumentError);
    }
    Embedding two(BratteliDiagram::two_power(3), 2);
    CHECK(pullback(two, std::vector<Rational>(8, q(1, 8))) == std::vector<Rational>(4, q(1, 4)));
  }
}

TEST_CASE("coherent means", "[af]") {
  SECTION("two power") {
    auto C = coherent_means(BratteliDiagram::two_power(8), 8);
    REQUIRE(C.unique);
    for (std::size_t i = 1; i <= 8; ++i) {
      CHECK(C.vertices[0][i - 1] == std::vector<Rational>{q(1, static_cast<long>(ipow(2, i)))});
    }
  }
  SECTION("two towers") {
    auto C = coherent_means(BratteliDiagram::two_towers(4), 4);
    CHECK_FALSE(C.unique);
    CHECK(C.dimension == 1);
    CHECK(C.vertices.size() == 2);
  }
  SECTION("Fibonacci shrinks toward the golden ratio") {
    double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double width  = 1.0;
    for (std::size_t d = 1; d <= 7; ++d) {
      auto C = coherent_means(BratteliDiagram::fibonacci(d), d);
      CHECK(C.dimension == 1);
      REQUIRE(C.vertices.size() == 2);
      auto a = as_double(C.vertices[0][0][0]);
      auto b = as_double(C.vertices[1][0][0]);
      CHECK(std::min(a, b) <= golden);
      CHECK(std::max(a, b) >= golden);
      if (d > 1) {
        CHECK(std::abs(a - b) < width);
      }
      width = std::abs(a - b);
      for (auto const& v : C.vertices) {
        CHECK(v[0][0] + v[0][1] == 1);
      }
    }
  }
  SECTION("errors") {
    CHECK_THROWS_AS(coherent_means(BratteliDiagram::two_power(3), 0), ArgumentError);
    CHECK_THROWS_AS(coherent_means(BratteliDiagram::two_power(3), 4), ArgumentError);
    CHECK_THROWS_AS(coherent_means(BratteliDiagram::fibonacci(9), 9), SizeLimitError);
  }
}

TEST_CASE("orbits match the path counts", "[af]") {
  for (std::size_t i = 1; i <= 3; ++i) {
    auto r = block_dims_check(BratteliDiagram::fibonacci(4), i);
    CHECK(r.ok());
    auto t = block_dims_check(BratteliDiagram::two_power(4), i);
    CHECK(t.ok());
    CHECK(t.expected_span == ipow(4, i));
  }
  auto r = block_dims_check(BratteliDiagram::fibonacci(6), 6, 1000);
  CHECK(r.ok());
  CHECK(r.orbit_sizes == std::vector<std::size_t>{8, 13});
}
