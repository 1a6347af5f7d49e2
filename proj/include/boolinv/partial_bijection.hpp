#ifndef BOOLINV_PARTIAL_BIJECTION_HPP_
#define BOOLINV_PARTIAL_BIJECTION_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace boolinv {

  using Point = std::int32_t;

  inline constexpr Point kUndefined = -1;

  /// Lexicographic order on the graphs of two image arrays, where a graph is
  /// the list of (source, target) pairs sorted by source.
  inline bool graph_less(std::span<Point const> a, std::span<Point const> b) {
    std::size_t i = 0, j = 0;
    while (true) {
      while (i < a.size() && a[i] == kUndefined) {
        ++i;
      }
      while (j < b.size() && b[j] == kUndefined) {
        ++j;
      }
      bool a_done = i == a.size(), b_done = j == b.size();
      if (a_done || b_done) {
        return a_done && !b_done;
      }
      if (i != j) {
        return i < j;
      }
      if (a[i] != b[j]) {
        return a[i] < b[j];
      }
      ++i;
      ++j;
    }
  }

  /// An injective partial map on the ground set {0, ..., n-1}, stored as a
  /// dense image array with kUndefined off the domain.
  ///
  /// Composition follows the usual convention for partial functions:
  /// compose(s, t) applies t first, so that compose(s, t)(x) = s(t(x)).
  class PartialBijection {
   public:
    PartialBijection() = default;

    explicit PartialBijection(std::size_t ground)
        : _image(ground, kUndefined) {}

    /// Builds from an image array, validating range and injectivity.
    static PartialBijection from_images(std::vector<Point> images) {
      PartialBijection  p;
      std::vector<bool> hit(images.size(), false);
      for (Point y : images) {
        if (y == kUndefined) {
          continue;
        }
        if (y < 0 || static_cast<std::size_t>(y) >= images.size()) {
          throw ArgumentError("partial bijection: image " + std::to_string(y)
                              + " outside ground set of size "
                              + std::to_string(images.size()));
        }
        if (hit[y]) {
          throw ArgumentError("partial bijection: target "
                              + std::to_string(y) + " hit twice");
        }
        hit[y] = true;
      }
      p._image = std::move(images);
      return p;
    }

    static PartialBijection
    from_pairs(std::size_t ground, std::vector<std::pair<Point, Point>> const& pairs) {
      std::vector<Point> images(ground, kUndefined);
      for (auto [x, y] : pairs) {
        if (x < 0 || static_cast<std::size_t>(x) >= ground) {
          throw ArgumentError("partial bijection: source " + std::to_string(x)
                              + " outside ground set of size "
                              + std::to_string(ground));
        }
        if (images[x] != kUndefined) {
          throw ArgumentError("partial bijection: source " + std::to_string(x)
                              + " repeated");
        }
        images[x] = y;
      }
      return from_images(std::move(images));
    }

    static PartialBijection identity(std::size_t ground) {
      PartialBijection p(ground);
      for (std::size_t i = 0; i < ground; ++i) {
        p._image[i] = static_cast<Point>(i);
      }
      return p;
    }

    static PartialBijection partial_identity(std::size_t              ground,
                                             std::vector<Point> const& points) {
      std::vector<std::pair<Point, Point>> pairs;
      for (Point x : points) {
        pairs.emplace_back(x, x);
      }
      return from_pairs(ground, pairs);
    }

    std::size_t ground() const noexcept {
      return _image.size();
    }

    Point operator[](std::size_t x) const noexcept {
      return _image[x];
    }

    std::span<Point const> images() const noexcept {
      return _image;
    }

    bool defined(std::size_t x) const noexcept {
      return _image[x] != kUndefined;
    }

    std::size_t rank() const noexcept {
      return static_cast<std::size_t>(
          std::count_if(_image.begin(), _image.end(), [](Point y) {
            return y != kUndefined;
          }));
    }

    std::vector<Point> domain() const {
      std::vector<Point> out;
      for (std::size_t x = 0; x < _image.size(); ++x) {
        if (_image[x] != kUndefined) {
          out.push_back(static_cast<Point>(x));
        }
      }
      return out;
    }

    std::vector<Point> range() const {
      std::vector<Point> out;
      for (Point y : _image) {
        if (y != kUndefined) {
          out.push_back(y);
        }
      }
      std::sort(out.begin(), out.end());
      return out;
    }

    /// The graph as (source, target) pairs sorted by source.
    std::vector<std::pair<Point, Point>> graph() const {
      std::vector<std::pair<Point, Point>> out;
      for (std::size_t x = 0; x < _image.size(); ++x) {
        if (_image[x] != kUndefined) {
          out.emplace_back(static_cast<Point>(x), _image[x]);
        }
      }
      return out;
    }

    bool is_idempotent() const noexcept {
      for (std::size_t x = 0; x < _image.size(); ++x) {
        if (_image[x] != kUndefined && _image[x] != static_cast<Point>(x)) {
          return false;
        }
      }
      return true;
    }

    PartialBijection inverse() const {
      PartialBijection p(ground());
      for (std::size_t x = 0; x < _image.size(); ++x) {
        if (_image[x] != kUndefined) {
          p._image[_image[x]] = static_cast<Point>(x);
        }
      }
      return p;
    }

    friend PartialBijection compose(PartialBijection const& s,
                                    PartialBijection const& t) {
      PartialBijection p(t.ground());
      for (std::size_t x = 0; x < t._image.size(); ++x) {
        Point y = t._image[x];
        if (y != kUndefined) {
          p._image[x] = s._image[y];
        }
      }
      return p;
    }

    /// Graph intersection.
    friend PartialBijection intersection(PartialBijection const& s,
                                         PartialBijection const& t) {
      PartialBijection p(s.ground());
      for (std::size_t x = 0; x < s._image.size(); ++x) {
        if (s._image[x] == t._image[x]) {
          p._image[x] = s._image[x];
        }
      }
      return p;
    }

    /// Graph union, or nothing when the union is not injective / not a
    /// function (i.e. when s and t are not compatible).
    friend std::optional<PartialBijection> graph_union(PartialBijection const& s,
                                                       PartialBijection const& t) {
      PartialBijection  p(s.ground());
      std::vector<bool> hit(s.ground(), false);
      for (std::size_t x = 0; x < s._image.size(); ++x) {
        Point a = s._image[x], b = t._image[x];
        if (a != kUndefined && b != kUndefined && a != b) {
          return std::nullopt;
        }
        Point y = a != kUndefined ? a : b;
        if (y != kUndefined) {
          if (hit[y]) {
            return std::nullopt;
          }
          hit[y] = true;
        }
        p._image[x] = y;
      }
      return p;
    }

    /// Lexicographic order on graphs (sorted pair lists).
    friend bool graph_less(PartialBijection const& s, PartialBijection const& t) {
      return graph_less(s.images(), t.images());
    }

    friend bool operator==(PartialBijection const&, PartialBijection const&) = default;

    friend std::ostream& operator<<(std::ostream& os, PartialBijection const& p) {
      os << "{";
      bool first = true;
      for (auto [x, y] : p.graph()) {
        os << (first ? "" : ",") << x << "->" << y;
        first = false;
      }
      return os << "}";
    }

   private:
    std::vector<Point> _image;
  };

  inline std::size_t hash_images(std::span<Point const> images) noexcept {
    // FNV-1a over the image words
    std::uint64_t h = 1469598103934665603ULL;
    for (Point y : images) {
      h ^= static_cast<std::uint32_t>(y);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }

  inline std::string to_string(PartialBijection const& p) {
    std::string out = "{";
    bool        first = true;
    for (auto [x, y] : p.graph()) {
      out += (first ? "" : ",") + std::to_string(x) + "->" + std::to_string(y);
      first = false;
    }
    return out + "}";
  }

}  // namespace boolinv

template <>
struct std::hash<boolinv::PartialBijection> {
  std::size_t operator()(boolinv::PartialBijection const& p) const noexcept {
    return boolinv::hash_images(p.images());
  }
};

#endif  // BOOLINV_PARTIAL_BIJECTION_HPP_
