#ifndef BOOLINV_INVERSE_MONOID_HPP_
#define BOOLINV_INVERSE_MONOID_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "partial_bijection.hpp"

namespace boolinv {

  using ElementId = std::uint32_t;

  inline constexpr std::size_t kDefaultElementCap = 100000;

  /// Monoids up to this size get a dense product table at construction.
  inline constexpr std::size_t kDenseTableLimit = 2048;

  namespace detail {

    // Flat storage of partial bijections on a common ground set together
    // with a hash index from image arrays to ids.
    class RealizedStore {
     public:
      explicit RealizedStore(std::size_t ground) : _ground(ground) {}

      std::size_t ground() const noexcept {
        return _ground;
      }

      std::size_t size() const noexcept {
        return _size;
      }

      std::span<Point const> images(ElementId id) const noexcept {
        return {_flat.data() + static_cast<std::size_t>(id) * _ground, _ground};
      }

      std::optional<ElementId> find(std::span<Point const> images) const {
        auto [first, last] = _index.equal_range(hash_images(images));
        for (auto it = first; it != last; ++it) {
          auto cand = this->images(it->second);
          if (std::equal(cand.begin(), cand.end(), images.begin())) {
            return it->second;
          }
        }
        return std::nullopt;
      }

      // Returns the id and whether the element was new.
      std::pair<ElementId, bool> insert(std::span<Point const> images) {
        if (auto id = find(images)) {
          return {*id, false};
        }
        auto id = static_cast<ElementId>(_size++);
        _flat.insert(_flat.end(), images.begin(), images.end());
        _index.emplace(hash_images(images), id);
        return {id, true};
      }

      PartialBijection element(ElementId id) const {
        auto im = images(id);
        return PartialBijection::from_images({im.begin(), im.end()});
      }

      void compose_into(ElementId s, ElementId t, std::vector<Point>& out) const {
        auto a = images(s);
        auto b = images(t);
        out.resize(_ground);
        for (std::size_t x = 0; x < _ground; ++x) {
          out[x] = b[x] == kUndefined ? kUndefined : a[b[x]];
        }
      }

      void invert_into(ElementId s, std::vector<Point>& out) const {
        auto a = images(s);
        out.assign(_ground, kUndefined);
        for (std::size_t x = 0; x < _ground; ++x) {
          if (a[x] != kUndefined) {
            out[a[x]] = static_cast<Point>(x);
          }
        }
      }

     private:
      std::size_t                                     _ground;
      std::size_t                                     _size = 0;
      std::vector<Point>                              _flat;
      std::unordered_multimap<std::size_t, ElementId> _index;
    };

  }  // namespace detail

  /// A finite inverse monoid (or inverse semigroup with zero) given either
  /// by partial bijections on a ground set, or abstractly by a product
  /// table. Immutable after construction.
  ///
  /// Products of realized elements are read from a dense table when the
  /// monoid is small, and otherwise computed by composing the two maps and
  /// looking the result up.
  class InverseMonoid {
   public:
    /// Realized monoid from a complete list of distinct, closed elements.
    /// The empty map is appended if it is missing.
    static InverseMonoid from_elements(std::size_t                          ground,
                                       std::vector<PartialBijection> const& elements,
                                       std::size_t cap = kDefaultElementCap) {
      detail::RealizedStore store(ground);
      for (auto const& p : elements) {
        if (p.ground() != ground) {
          throw ArgumentError("element does not live on the ground set");
        }
        store.insert(p.images());
      }
      return InverseMonoid(std::move(store), cap);
    }

    /// Abstract monoid from a total product table (row-major, product[s*n+t]
    /// = st) and an involution table.
    static InverseMonoid from_tables(std::size_t            n,
                                     std::vector<ElementId> product,
                                     std::vector<ElementId> star) {
      if (product.size() != n * n || star.size() != n || n == 0) {
        throw ArgumentError("from_tables: table sizes do not match");
      }
      for (auto v : product) {
        if (v >= n) {
          throw ArgumentError("from_tables: product table entry out of range");
        }
      }
      for (auto v : star) {
        if (v >= n) {
          throw ArgumentError("from_tables: star table entry out of range");
        }
      }
      InverseMonoid m;
      m._size  = n;
      m._table = std::move(product);
      m._star  = std::move(star);
      m.finish();
      return m;
    }

    std::size_t size() const noexcept {
      return _size;
    }

    bool realized() const noexcept {
      return _store.has_value();
    }

    /// Size of the ground set for realized monoids, 0 otherwise.
    std::size_t ground() const noexcept {
      return _store ? _store->ground() : 0;
    }

    PartialBijection element(ElementId s) const {
      if (!_store) {
        throw StructureError("abstract monoid has no partial-bijection realization");
      }
      return _store->element(s);
    }

    std::span<Point const> images(ElementId s) const {
      if (!_store) {
        throw StructureError("abstract monoid has no partial-bijection realization");
      }
      return _store->images(s);
    }

    std::optional<ElementId> find(PartialBijection const& p) const {
      if (!_store || p.ground() != _store->ground()) {
        return std::nullopt;
      }
      return _store->find(p.images());
    }

    ElementId product(ElementId s, ElementId t) const {
      if (!_table.empty()) {
        return _table[static_cast<std::size_t>(s) * _size + t];
      }
      thread_local std::vector<Point> buf;
      _store->compose_into(s, t, buf);
      auto id = _store->find(buf);
      if (!id) {
        throw InternalError("monoid is not closed under products");
      }
      return *id;
    }

    ElementId product(ElementId s, ElementId t, ElementId u) const {
      return product(product(s, t), u);
    }

    ElementId star(ElementId s) const noexcept {
      return _star[s];
    }

    ElementId zero() const noexcept {
      return _zero;
    }

    std::optional<ElementId> one() const noexcept {
      return _one;
    }

    /// The identity, or a StructureError for semigroups without one.
    ElementId identity() const {
      if (!_one) {
        throw StructureError("inverse semigroup has no identity");
      }
      return *_one;
    }

    bool is_idempotent(ElementId s) const noexcept {
      return _is_idempotent[s];
    }

    std::vector<ElementId> const& idempotents() const noexcept {
      return _idempotents;
    }

    /// s*s
    ElementId source(ElementId s) const {
      return product(_star[s], s);
    }

    /// ss*
    ElementId range(ElementId s) const {
      return product(s, _star[s]);
    }

    std::string to_string(ElementId s) const {
      if (_store) {
        return boolinv::to_string(_store->element(s));
      }
      return "#" + std::to_string(s);
    }

    bool has_dense_table() const noexcept {
      return !_table.empty();
    }

   private:
    InverseMonoid() = default;

    InverseMonoid(detail::RealizedStore&& store, std::size_t cap)
        : _store(std::move(store)) {
      // the empty map is always present
      std::vector<Point> empty(_store->ground(), kUndefined);
      _store->insert(empty);
      _size = _store->size();
      if (_size > cap) {
        throw SizeLimitError("inverse monoid has " + std::to_string(_size)
                                 + " elements",
                             cap);
      }
      _star.resize(_size);
      std::vector<Point> buf;
      for (ElementId s = 0; s < _size; ++s) {
        _store->invert_into(s, buf);
        auto id = _store->find(buf);
        if (!id) {
          throw StructureError("element set is not closed under inverse");
        }
        _star[s] = *id;
      }
      if (_size <= kDenseTableLimit) {
        _table.resize(_size * _size);
        for (ElementId s = 0; s < _size; ++s) {
          for (ElementId t = 0; t < _size; ++t) {
            _store->compose_into(s, t, buf);
            auto id = _store->find(buf);
            if (!id) {
              throw StructureError("element set is not closed under products");
            }
            _table[static_cast<std::size_t>(s) * _size + t] = *id;
          }
        }
      }
      finish();
    }

    void finish() {
      _is_idempotent.assign(_size, false);
      _idempotents.clear();
      for (ElementId s = 0; s < _size; ++s) {
        if (product(s, s) == s && _star[s] == s) {
          _is_idempotent[s] = true;
          _idempotents.push_back(s);
        }
      }
      // zero: the idempotent below every idempotent; identity: above all.
      std::optional<ElementId> zero, one;
      for (ElementId e : _idempotents) {
        bool is_zero = true, is_one = true;
        for (ElementId f : _idempotents) {
          ElementId ef = product(e, f);
          is_zero      = is_zero && ef == e;
          is_one       = is_one && ef == f;
        }
        if (is_zero) {
          zero = e;
        }
        if (is_one) {
          one = e;
        }
      }
      if (!zero) {
        throw StructureError("inverse semigroup has no zero");
      }
      _zero = *zero;
      // an idempotent above all idempotents is the identity of an inverse
      // semigroup (s = s s*s <= ...); check it acts as one
      if (one) {
        for (ElementId s = 0; s < _size; ++s) {
          if (product(*one, s) != s || product(s, *one) != s) {
            one.reset();
            break;
          }
        }
      }
      _one = one;
    }

    std::optional<detail::RealizedStore> _store;
    std::size_t                          _size = 0;
    std::vector<ElementId>               _table;
    std::vector<ElementId>               _star;
    std::vector<bool>                    _is_idempotent;
    std::vector<ElementId>               _idempotents;
    ElementId                            _zero = 0;
    std::optional<ElementId>             _one;

    friend InverseMonoid closure(std::vector<PartialBijection> const&,
                                 std::size_t,
                                 bool,
                                 std::size_t);
  };

  ////////////////////////////////////////////////////////////////////////
  // Construction
  ////////////////////////////////////////////////////////////////////////

  /// The inverse monoid generated by partial bijections on {0..ground-1},
  /// always containing the empty map, and the identity when
  /// adjoin_identity is set.
  ///
  /// Element order: the (deduplicated) generators in the given order, then
  /// the elements found breadth-first by right multiplication with the
  /// generators and their inverses, each layer sorted lexicographically by
  /// graph; the empty map and the identity are appended last if they were
  /// not reached.
  inline InverseMonoid closure(std::vector<PartialBijection> const& generators,
                               std::size_t                          ground,
                               bool                                 adjoin_identity,
                               std::size_t cap = kDefaultElementCap) {
    if (ground == 0) {
      throw ArgumentError("ground set must be nonempty");
    }
    detail::RealizedStore store(ground);
    auto                  check_cap = [&] {
      if (store.size() > cap) {
        throw SizeLimitError("closure exceeded the element cap", cap);
      }
    };
    std::vector<ElementId> layer;
    for (auto const& g : generators) {
      if (g.ground() != ground) {
        throw ArgumentError("generator does not live on the ground set");
      }
      auto [id, fresh] = store.insert(g.images());
      if (fresh) {
        layer.push_back(id);
      }
      check_cap();
    }
    std::vector<PartialBijection> letters;
    for (auto const& g : generators) {
      letters.push_back(g);
      letters.push_back(g.inverse());
    }
    std::vector<Point> buf;

    auto sort_layer = [&](std::vector<std::vector<Point>>& fresh) {
      std::sort(fresh.begin(), fresh.end(), [](auto const& a, auto const& b) {
        return graph_less(std::span<Point const>(a), std::span<Point const>(b));
      });
    };

    bool first = true;
    while (!layer.empty()) {
      std::vector<std::vector<Point>> fresh;
      detail::RealizedStore           pending(ground);
      auto                            consider = [&](std::vector<Point> const& im) {
        if (!store.find(im) && pending.insert(im).second) {
          fresh.push_back(im);
          if (store.size() + fresh.size() > cap) {
            throw SizeLimitError("closure exceeded the element cap", cap);
          }
        }
      };
      if (first) {
        for (auto const& g : generators) {
          auto inv = g.inverse();
          consider({inv.images().begin(), inv.images().end()});
        }
        first = false;
      }
      for (ElementId x : layer) {
        for (auto const& a : letters) {
          auto xi = store.images(x);
          buf.resize(ground);
          auto ai = a.images();
          for (std::size_t p = 0; p < ground; ++p) {
            buf[p] = ai[p] == kUndefined ? kUndefined : xi[ai[p]];
          }
          consider(buf);
        }
      }
      sort_layer(fresh);
      layer.clear();
      for (auto const& im : fresh) {
        layer.push_back(store.insert(im).first);
      }
    }
    std::vector<std::vector<Point>> extra;
    std::vector<Point>              empty(ground, kUndefined);
    if (!store.find(empty)) {
      extra.push_back(empty);
    }
    if (adjoin_identity) {
      auto id = PartialBijection::identity(ground);
      if (!store.find(id.images())) {
        extra.emplace_back(id.images().begin(), id.images().end());
      }
    }
    for (auto const& im : extra) {
      store.insert(im);
    }
    check_cap();
    return InverseMonoid(std::move(store), cap);
  }

  /// The smallest Boolean inverse monoid inside I(ground) containing the
  /// generators and the identity: closed under products, inverses, unions of
  /// compatible pairs, and complements of idempotents.
  ///
  /// Element order: generators first, then everything else sorted
  /// lexicographically by graph.
  inline InverseMonoid boolean_closure(std::vector<PartialBijection> const& generators,
                                       std::size_t                          ground,
                                       std::size_t cap = kDefaultElementCap) {
    if (ground == 0) {
      throw ArgumentError("ground set must be nonempty");
    }
    // saturation: every new element is combined with everything found so far
    detail::RealizedStore store(ground);
    std::vector<ElementId> queue;
    auto add = [&](std::span<Point const> im) {
      auto [id, fresh] = store.insert(im);
      if (fresh) {
        if (store.size() > cap) {
          throw SizeLimitError("Boolean closure exceeded the element cap", cap);
        }
        queue.push_back(id);
      }
    };
    for (auto const& g : generators) {
      if (g.ground() != ground) {
        throw ArgumentError("generator does not live on the ground set");
      }
      add(g.images());
    }
    add(PartialBijection::identity(ground).images());
    add(std::vector<Point>(ground, kUndefined));
    std::vector<Point> buf(ground), xi(ground), yi(ground);
    auto compose = [&](std::vector<Point> const& a, std::vector<Point> const& b) {
      for (std::size_t p = 0; p < ground; ++p) {
        buf[p] = b[p] == kUndefined ? kUndefined : a[b[p]];
      }
      add(buf);
    };
    for (std::size_t next = 0; next < queue.size(); ++next) {
      auto x = queue[next];
      {
        auto im = store.images(x);
        xi.assign(im.begin(), im.end());
      }
      bool idempotent = true;
      std::fill(buf.begin(), buf.end(), kUndefined);
      for (std::size_t p = 0; p < ground; ++p) {
        if (xi[p] != kUndefined) {
          buf[xi[p]] = static_cast<Point>(p);
          idempotent = idempotent && xi[p] == static_cast<Point>(p);
        }
      }
      add(buf);
      if (idempotent) {
        for (std::size_t p = 0; p < ground; ++p) {
          buf[p] = xi[p] == kUndefined ? static_cast<Point>(p) : kUndefined;
        }
        add(buf);
      }
      for (ElementId y = 0; y <= x; ++y) {
        {
          auto im = store.images(y);
          yi.assign(im.begin(), im.end());
        }
        compose(xi, yi);
        compose(yi, xi);
        // graph union when compatible
        bool ok = true;
        std::vector<bool> hit(ground, false);
        for (std::size_t p = 0; p < ground && ok; ++p) {
          Point a = xi[p], b = yi[p];
          if (a != kUndefined && b != kUndefined && a != b) {
            ok = false;
            break;
          }
          buf[p] = a != kUndefined ? a : b;
          if (buf[p] != kUndefined) {
            ok = !hit[buf[p]];
            hit[buf[p]] = true;
          }
        }
        if (ok) {
          add(buf);
        }
      }
    }
    // final ordering: generators first, then the rest by graph
    std::vector<PartialBijection> ordered;
    detail::RealizedStore          placed(ground);
    for (auto const& g : generators) {
      if (placed.insert(g.images()).second) {
        ordered.push_back(g);
      }
    }
    std::vector<PartialBijection> rest;
    for (ElementId s = 0; s < store.size(); ++s) {
      if (!placed.find(store.images(s))) {
        rest.push_back(store.element(s));
      }
    }
    std::sort(rest.begin(), rest.end(), [](auto const& a, auto const& b) {
      return graph_less(a.images(), b.images());
    });
    ordered.insert(ordered.end(), rest.begin(), rest.end());
    return InverseMonoid::from_elements(ground, ordered, cap);
  }

  /// Checks the inverse-semigroup axioms on the full tables:
  /// s s* s = s, s* s s* = s*, (s*)* = s, (st)* = t* s*, idempotents commute.
  /// Associativity is checked exhaustively when exhaustive_associativity is set.
  inline bool verify_inverse_axioms(InverseMonoid const& S,
                                    bool exhaustive_associativity = false) {
    auto n = static_cast<ElementId>(S.size());
    for (ElementId s = 0; s < n; ++s) {
      if (S.product(S.product(s, S.star(s)), s) != s
          || S.product(S.product(S.star(s), s), S.star(s)) != S.star(s)
          || S.star(S.star(s)) != s) {
        return false;
      }
    }
    for (ElementId s = 0; s < n; ++s) {
      for (ElementId t = 0; t < n; ++t) {
        if (S.star(S.product(s, t)) != S.product(S.star(t), S.star(s))) {
          return false;
        }
      }
    }
    auto const& E = S.idempotents();
    for (ElementId e : E) {
      for (ElementId f : E) {
        if (S.product(e, f) != S.product(f, e)) {
          return false;
        }
      }
    }
    if (exhaustive_associativity) {
      for (ElementId s = 0; s < n; ++s) {
        for (ElementId t = 0; t < n; ++t) {
          ElementId st = S.product(s, t);
          for (ElementId u = 0; u < n; ++u) {
            if (S.product(st, u) != S.product(s, S.product(t, u))) {
              return false;
            }
          }
        }
      }
    }
    return true;
  }

}  // namespace boolinv

#endif  // BOOLINV_INVERSE_MONOID_HPP_
