#ifndef BOOLINV_TESTS_HELPERS_HPP_
#define BOOLINV_TESTS_HELPERS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "boolinv.hpp"

namespace testing {

  using boolinv::ElementId;
  using boolinv::InverseMonoid;
  using boolinv::PartialBijection;
  using boolinv::Point;

  inline PartialBijection pb(std::size_t ground, std::vector<std::pair<Point, Point>> pairs) {
    return PartialBijection::from_pairs(ground, pairs);
  }

  inline PartialBijection partial_identity(std::size_t ground, std::vector<Point> points) {
    std::vector<std::pair<Point, Point>> pairs;
    for (auto x : points) {
      pairs.emplace_back(x, x);
    }
    return pb(ground, pairs);
  }

  inline ElementId id(InverseMonoid const& S, PartialBijection const& p) {
    auto found = S.find(p);
    if (!found) {
      throw boolinv::ArgumentError("element not in the monoid: " + boolinv::to_string(p));
    }
    return *found;
  }

  /// Every partial injection of {0..n-1}, found by filtering all maps
  /// {0..n-1} -> {undefined, 0..n-1}.
  inline std::set<std::vector<Point>> brute_partial_injections(std::size_t n) {
    std::set<std::vector<Point>> out;
    std::size_t                  total = 1;
    for (std::size_t i = 0; i < n; ++i) {
      total *= n + 1;
    }
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<Point> image(n);
      auto               c = code;
      std::set<Point>    used;
      bool               injective = true;
      for (std::size_t x = 0; x < n; ++x) {
        image[x] = static_cast<Point>(c % (n + 1)) - 1;
        c /= n + 1;
        if (image[x] >= 0 && !used.insert(image[x]).second) {
          injective = false;
        }
      }
      if (injective) {
        out.insert(image);
      }
    }
    return out;
  }

  inline std::set<std::vector<Point>> element_set(InverseMonoid const& S) {
    std::set<std::vector<Point>> out;
    for (ElementId s = 0; s < S.size(); ++s) {
      auto img = S.images(s);
      out.emplace(img.begin(), img.end());
    }
    return out;
  }

  inline std::vector<PartialBijection> singleton_maps(std::size_t n) {
    std::vector<PartialBijection> out;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out.push_back(pb(n, {{static_cast<Point>(i), static_cast<Point>(j)}}));
      }
    }
    return out;
  }

  /// I(n), as the Boolean closure of the singleton maps.
  inline InverseMonoid symmetric_inverse_monoid(std::size_t n) {
    return boolinv::boolean_closure(singleton_maps(n), n);
  }

  /// {0, 1, g} with g^2 = 1.
  inline InverseMonoid z2_with_zero() {
    return boolinv::closure({pb(2, {{0, 1}, {1, 0}})}, 2, true);
  }

  inline InverseMonoid zero_one() {
    return boolinv::closure({}, 1, true);
  }

  /// {0, e, f, ef, 1} with e, f incomparable and no complement of e.
  inline InverseMonoid five_element() {
    return boolinv::closure({partial_identity(3, {0, 1}), partial_identity(3, {1, 2})}, 3, true);
  }

  /// I(2) + I(2) acting on {0,1} and {2,3} separately.
  inline InverseMonoid two_plus_two() {
    return boolinv::boolean_closure(
        {pb(4, {{0, 1}}), pb(4, {{1, 0}}), pb(4, {{2, 3}}), pb(4, {{3, 2}})}, 4);
  }

  /// Up to three random partial bijections on at most five points; null
  /// when the Boolean closure passes the cap.
  inline std::optional<InverseMonoid> random_boolean_monoid(std::mt19937_64& rng,
                                                            std::size_t      cap = 2000) {
    std::uniform_int_distribution<std::size_t> ground_dist(1, 5), count_dist(1, 3);
    auto                                       n = ground_dist(rng);
    auto                                       k = count_dist(rng);
    std::vector<PartialBijection>              gens;
    for (std::size_t g = 0; g < k; ++g) {
      std::vector<Point> targets(n);
      for (std::size_t x = 0; x < n; ++x) {
        targets[x] = static_cast<Point>(x);
      }
      std::shuffle(targets.begin(), targets.end(), rng);
      std::vector<Point> image(n, boolinv::kUndefined);
      std::bernoulli_distribution keep(0.6);
      for (std::size_t x = 0; x < n; ++x) {
        if (keep(rng)) {
          image[x] = targets[x];
        }
      }
      gens.push_back(PartialBijection::from_images(image));
    }
    try {
      return boolinv::boolean_closure(gens, n, cap);
    } catch (boolinv::SizeLimitError const&) {
      return std::nullopt;
    }
  }

  /// A fixed list of random Boolean monoids, the same on every run.
  inline std::vector<InverseMonoid> random_boolean_monoids(std::size_t count, std::uint64_t seed) {
    std::mt19937_64            rng(seed);
    std::vector<InverseMonoid> out;
    while (out.size() < count) {
      if (auto S = random_boolean_monoid(rng)) {
        out.push_back(std::move(*S));
      }
    }
    return out;
  }

}  // namespace testing

#endif  // BOOLINV_TESTS_HELPERS_HPP_
