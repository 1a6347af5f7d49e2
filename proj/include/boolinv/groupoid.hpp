#ifndef BOOLINV_GROUPOID_HPP_
#define BOOLINV_GROUPOID_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace boolinv {

  using UnitId  = std::uint32_t;
  using ArrowId = std::uint32_t;

  /// A finite group by its multiplication table; element 0 is the identity.
  /// mul(g, h) is g after h.
  class GroupTable {
   public:
    GroupTable() : _n(1), _mul{0}, _inv{0} {}

    GroupTable(std::size_t n, std::vector<std::uint32_t> table)
        : _n(n), _mul(std::move(table)) {
      if (n == 0 || _mul.size() != n * n) {
        throw ArgumentError("group table has the wrong size");
      }
      for (std::uint32_t g = 0; g < n; ++g) {
        if (_mul[g] != g || _mul[g * n] != g) {
          throw ValidationError("group table: element 0 is not the identity");
        }
      }
      _inv.assign(n, n);
      for (std::uint32_t g = 0; g < n; ++g) {
        for (std::uint32_t h = 0; h < n; ++h) {
          if (_mul[g * n + h] == 0) {
            _inv[g] = h;
          }
        }
        if (_inv[g] == n) {
          throw ValidationError("group table: element without inverse");
        }
      }
      for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = 0; b < n; ++b) {
          for (std::uint32_t c = 0; c < n; ++c) {
            if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
              throw ValidationError("group table is not associative");
            }
          }
        }
      }
    }

    static GroupTable cyclic(std::size_t n) {
      std::vector<std::uint32_t> mul(n * n);
      for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t h = 0; h < n; ++h) {
          mul[g * n + h] = static_cast<std::uint32_t>((g + h) % n);
        }
      }
      return GroupTable(n, std::move(mul));
    }

    std::size_t order() const noexcept {
      return _n;
    }

    std::uint32_t mul(std::uint32_t g, std::uint32_t h) const noexcept {
      return _mul[g * _n + h];
    }

    std::uint32_t inverse(std::uint32_t g) const noexcept {
      return _inv[g];
    }

    std::size_t element_order(std::uint32_t g) const noexcept {
      std::size_t   k = 1;
      std::uint32_t x = g;
      while (x != 0) {
        x = mul(x, g);
        ++k;
      }
      return k;
    }

    std::vector<std::uint32_t> const& table() const noexcept {
      return _mul;
    }

   private:
    std::size_t                _n;
    std::vector<std::uint32_t> _mul;
    std::vector<std::uint32_t> _inv;
  };

  /// An isomorphism G -> H as an image vector, or nothing.
  inline std::optional<std::vector<std::uint32_t>>
  group_isomorphism(GroupTable const& G, GroupTable const& H) {
    auto n = G.order();
    if (n != H.order()) {
      return std::nullopt;
    }
    std::vector<std::size_t> ordG(n), ordH(n);
    for (std::uint32_t g = 0; g < n; ++g) {
      ordG[g] = G.element_order(g);
      ordH[g] = H.element_order(g);
    }
    {
      auto a = ordG, b = ordH;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) {
        return std::nullopt;
      }
    }
    std::vector<std::uint32_t> phi(n, static_cast<std::uint32_t>(n));
    std::vector<bool>          used(n, false);
    phi[0]  = 0;
    used[0] = true;
    auto consistent = [&](std::uint32_t g) {
      for (std::uint32_t h = 0; h < n; ++h) {
        if (phi[h] == n) {
          continue;
        }
        auto gh = G.mul(g, h), hg = G.mul(h, g);
        if (phi[gh] != n && phi[gh] != H.mul(phi[g], phi[h])) {
          return false;
        }
        if (phi[hg] != n && phi[hg] != H.mul(phi[h], phi[g])) {
          return false;
        }
      }
      return true;
    };
    std::function<bool(std::uint32_t)> assign = [&](std::uint32_t g) -> bool {
      if (g == n) {
        return true;
      }
      if (phi[g] != n) {
        return assign(g + 1);
      }
      for (std::uint32_t h = 0; h < n; ++h) {
        if (used[h] || ordH[h] != ordG[g]) {
          continue;
        }
        phi[g]  = h;
        used[h] = true;
        if (consistent(g) && assign(g + 1)) {
          return true;
        }
        phi[g]  = static_cast<std::uint32_t>(n);
        used[h] = false;
      }
      return false;
    };
    if (!assign(1)) {
      return std::nullopt;
    }
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        if (phi[G.mul(a, b)] != H.mul(phi[a], phi[b])) {
          return std::nullopt;
        }
      }
    }
    return phi;
  }

  /// A finite groupoid with discrete unit space.
  ///
  /// Arrows are kept in normal form: each orbit O has a base unit b, an
  /// arrow t_x : b -> x for every x in O, and the isotropy group G_b.
  /// An arrow x -> y is then t_y g t_x^{-1} for a unique g in G_b, which
  /// makes composition a group multiplication.
  class FiniteGroupoid {
   public:
    struct NormalForm {
      std::uint32_t orbit;
      std::uint32_t src_pos;
      std::uint32_t rng_pos;
      std::uint32_t g;
    };

    /// The empty groupoid.
    FiniteGroupoid() = default;

    /// Builds from arrow data and a composition oracle. compose(b, a) is
    /// b after a, called only when rng(a) = src(b). unit_arrow[x] is the
    /// identity arrow at x, and inverse[a] the inverse arrow.
    template <typename Compose>
    static FiniteGroupoid build(std::size_t                 n_units,
                                std::vector<UnitId> const&  src,
                                std::vector<UnitId> const&  rng,
                                std::vector<ArrowId> const& unit_arrow,
                                std::vector<ArrowId> const& inverse,
                                Compose&&                   compose,
                                bool                        validate) {
      auto n_arrows = src.size();
      if (rng.size() != n_arrows || inverse.size() != n_arrows
          || unit_arrow.size() != n_units) {
        throw ArgumentError("groupoid: arrow data of inconsistent sizes");
      }
      FiniteGroupoid G;
      G._n_units    = n_units;
      G._src        = src;
      G._rng        = rng;
      G._unit_arrow = unit_arrow;
      G._inverse    = inverse;
      for (ArrowId a = 0; a < n_arrows; ++a) {
        if (src[a] >= n_units || rng[a] >= n_units || inverse[a] >= n_arrows) {
          throw ValidationError("groupoid: arrow " + std::to_string(a)
                                + " refers to a missing unit or arrow");
        }
      }
      for (UnitId x = 0; x < n_units; ++x) {
        auto u = unit_arrow[x];
        if (u >= n_arrows || src[u] != x || rng[u] != x) {
          throw ValidationError("groupoid: bad identity arrow at unit "
                                + std::to_string(x));
        }
      }
      // orbits by union-find over arrows
      std::vector<UnitId> parent(n_units);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<UnitId(UnitId)> root = [&](UnitId x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x         = parent[x];
        }
        return x;
      };
      for (ArrowId a = 0; a < n_arrows; ++a) {
        auto p = root(src[a]), q = root(rng[a]);
        if (p != q) {
          parent[std::max(p, q)] = std::min(p, q);
        }
      }
      G._orbit_of.assign(n_units, 0);
      G._pos.assign(n_units, 0);
      std::unordered_map<UnitId, std::uint32_t> orbit_index;
      for (UnitId x = 0; x < n_units; ++x) {
        auto r  = root(x);
        auto it = orbit_index.find(r);
        if (it == orbit_index.end()) {
          it = orbit_index.emplace(r, static_cast<std::uint32_t>(G._orbits.size())).first;
          G._orbits.emplace_back();
        }
        G._orbit_of[x] = it->second;
        G._pos[x]      = static_cast<std::uint32_t>(G._orbits[it->second].size());
        G._orbits[it->second].push_back(x);
      }
      auto n_orbits = G._orbits.size();
      // spanning arrows t_x from the base (first unit) of each orbit, and
      // the isotropy arrows at the base
      std::vector<ArrowId>                       tree(n_units, static_cast<ArrowId>(-1));
      std::vector<std::vector<ArrowId>>          iso(n_orbits);
      std::unordered_map<ArrowId, std::uint32_t> iso_index;
      for (ArrowId a = 0; a < n_arrows; ++a) {
        auto base = G._orbits[G._orbit_of[src[a]]][0];
        if (src[a] == base && tree[rng[a]] == static_cast<ArrowId>(-1)) {
          tree[rng[a]] = a;
        }
      }
      for (std::uint32_t o = 0; o < n_orbits; ++o) {
        auto base  = G._orbits[o][0];
        tree[base] = unit_arrow[base];
        iso[o].push_back(unit_arrow[base]);
        iso_index.emplace(unit_arrow[base], 0);
      }
      for (ArrowId a = 0; a < n_arrows; ++a) {
        auto base = G._orbits[G._orbit_of[src[a]]][0];
        if (src[a] == base && rng[a] == base && a != unit_arrow[base]) {
          iso_index.emplace(a, static_cast<std::uint32_t>(iso[G._orbit_of[base]].size()));
          iso[G._orbit_of[base]].push_back(a);
        }
      }
      for (UnitId x = 0; x < n_units; ++x) {
        if (tree[x] == static_cast<ArrowId>(-1)) {
          throw ValidationError("groupoid: no arrow from the orbit base to unit "
                                + std::to_string(x)
                                + " (not closed under composition)");
        }
      }
      auto iso_coord = [&](ArrowId a) {
        auto it = iso_index.find(a);
        if (it == iso_index.end()) {
          throw ValidationError("groupoid: composition leaves the isotropy group");
        }
        return it->second;
      };
      G._groups.resize(n_orbits);
      for (std::uint32_t o = 0; o < n_orbits; ++o) {
        auto                       k = iso[o].size();
        std::vector<std::uint32_t> mul(k * k);
        for (std::size_t g = 0; g < k; ++g) {
          for (std::size_t h = 0; h < k; ++h) {
            mul[g * k + h] = iso_coord(compose(iso[o][g], iso[o][h]));
          }
        }
        G._groups[o] = GroupTable(k, std::move(mul));
      }
      // normal form of every arrow: g = t_y^{-1} a t_x
      G._offset.assign(n_orbits + 1, 0);
      for (std::uint32_t o = 0; o < n_orbits; ++o) {
        auto k           = G._orbits[o].size();
        G._offset[o + 1] = G._offset[o] + k * k * G._groups[o].order();
      }
      if (G._offset[n_orbits] != n_arrows) {
        throw ValidationError("groupoid: arrow count does not match orbit and "
                              "isotropy structure");
      }
      G._index.assign(n_arrows, static_cast<ArrowId>(-1));
      G._normal.resize(n_arrows);
      for (ArrowId a = 0; a < n_arrows; ++a) {
        auto x = src[a], y = rng[a];
        auto o = G._orbit_of[x];
        auto g = iso_coord(compose(inverse[tree[y]], compose(a, tree[x])));
        G._normal[a] = {o, G._pos[x], G._pos[y], g};
        auto slot    = G.slot(G._normal[a]);
        if (G._index[slot] != static_cast<ArrowId>(-1)) {
          throw ValidationError("groupoid: arrows " + std::to_string(G._index[slot])
                                + " and " + std::to_string(a) + " coincide");
        }
        G._index[slot] = a;
      }
      if (validate) {
        for (ArrowId a = 0; a < n_arrows; ++a) {
          if (G._src[inverse[a]] != rng[a] || G._rng[inverse[a]] != src[a]
              || compose(inverse[a], a) != unit_arrow[src[a]]) {
            throw ValidationError("groupoid: bad inverse of arrow "
                                  + std::to_string(a));
          }
          for (ArrowId b : G.arrows_from(rng[a])) {
            if (compose(b, a) != G.compose(b, a)) {
              throw ValidationError("groupoid: composition is not associative "
                                    "or not well defined");
            }
          }
        }
      }
      return G;
    }

    /// Groupoid with the given orbit sizes and isotropy groups, arrows
    /// numbered orbit by orbit, then by (range, source, group element).
    static FiniteGroupoid from_structure(std::vector<std::size_t> const& orbit_sizes,
                                         std::vector<GroupTable> const&  groups) {
      if (orbit_sizes.size() != groups.size()) {
        throw ArgumentError("from_structure: one group per orbit required");
      }
      FiniteGroupoid G;
      for (std::uint32_t o = 0; o < orbit_sizes.size(); ++o) {
        if (orbit_sizes[o] == 0) {
          throw ArgumentError("from_structure: empty orbit");
        }
        G._orbits.emplace_back();
        for (std::size_t i = 0; i < orbit_sizes[o]; ++i) {
          auto x = static_cast<UnitId>(G._n_units++);
          G._orbits.back().push_back(x);
          G._orbit_of.push_back(o);
          G._pos.push_back(static_cast<std::uint32_t>(i));
        }
      }
      G._groups = groups;
      G._offset.assign(groups.size() + 1, 0);
      for (std::uint32_t o = 0; o < groups.size(); ++o) {
        auto k = orbit_sizes[o];
        G._offset[o + 1] = G._offset[o] + k * k * groups[o].order();
        for (std::uint32_t y = 0; y < k; ++y) {
          for (std::uint32_t x = 0; x < k; ++x) {
            for (std::uint32_t g = 0; g < groups[o].order(); ++g) {
              auto a = static_cast<ArrowId>(G._src.size());
              G._normal.push_back({o, x, y, g});
              G._src.push_back(G._orbits[o][x]);
              G._rng.push_back(G._orbits[o][y]);
              G._index.push_back(a);
            }
          }
        }
      }
      G._unit_arrow.resize(G._n_units);
      G._inverse.resize(G._src.size());
      for (ArrowId a = 0; a < G._src.size(); ++a) {
        auto nf = G._normal[a];
        if (nf.src_pos == nf.rng_pos && nf.g == 0) {
          G._unit_arrow[G._src[a]] = a;
        }
        G._inverse[a] = G._index[G.slot(
            {nf.orbit, nf.rng_pos, nf.src_pos, G._groups[nf.orbit].inverse(nf.g)})];
      }
      return G;
    }

    /// The pair groupoid {0..k-1} x {0..k-1}.
    static FiniteGroupoid full_relation(std::size_t k) {
      return from_structure({k}, {GroupTable()});
    }

    /// A group as a groupoid with one unit.
    static FiniteGroupoid group_bundle(GroupTable const& G) {
      return from_structure({1}, {G});
    }

    static FiniteGroupoid disjoint_union(FiniteGroupoid const& A, FiniteGroupoid const& B) {
      std::vector<std::size_t> sizes;
      std::vector<GroupTable>  groups;
      for (auto const* H : {&A, &B}) {
        for (std::uint32_t o = 0; o < H->_orbits.size(); ++o) {
          sizes.push_back(H->_orbits[o].size());
          groups.push_back(H->_groups[o]);
        }
      }
      return from_structure(sizes, groups);
    }

    std::size_t unit_count() const noexcept {
      return _n_units;
    }

    std::size_t arrow_count() const noexcept {
      return _src.size();
    }

    /// d(a)
    UnitId src(ArrowId a) const {
      return _src.at(a);
    }

    /// r(a)
    UnitId rng(ArrowId a) const {
      return _rng.at(a);
    }

    ArrowId unit_arrow(UnitId x) const {
      return _unit_arrow.at(x);
    }

    ArrowId inverse(ArrowId a) const {
      return _inverse.at(a);
    }

    bool composable(ArrowId b, ArrowId a) const {
      return _rng.at(a) == _src.at(b);
    }

    /// b after a, defined when r(a) = d(b).
    ArrowId compose(ArrowId b, ArrowId a) const {
      if (!composable(b, a)) {
        throw ArgumentError("arrows " + std::to_string(b) + " and "
                            + std::to_string(a) + " are not composable");
      }
      auto na = _normal[a], nb = _normal[b];
      return _index[slot({na.orbit,
                          na.src_pos,
                          nb.rng_pos,
                          _groups[na.orbit].mul(nb.g, na.g)})];
    }

    NormalForm const& normal_form(ArrowId a) const {
      return _normal.at(a);
    }

    ArrowId arrow(NormalForm const& nf) const {
      return _index[slot(nf)];
    }

    /// All arrows with source x.
    std::vector<ArrowId> arrows_from(UnitId x) const {
      std::vector<ArrowId> out;
      auto                 o = _orbit_of.at(x);
      auto                 k = _orbits[o].size();
      for (std::uint32_t y = 0; y < k; ++y) {
        for (std::uint32_t g = 0; g < _groups[o].order(); ++g) {
          out.push_back(_index[slot({o, _pos[x], y, g})]);
        }
      }
      return out;
    }

    /// The isotropy arrows at x.
    std::vector<ArrowId> isotropy_arrows(UnitId x) const {
      std::vector<ArrowId> out;
      auto                 o = _orbit_of.at(x);
      for (std::uint32_t g = 0; g < _groups[o].order(); ++g) {
        out.push_back(_index[slot({o, _pos[x], _pos[x], g})]);
      }
      return out;
    }

    std::vector<std::vector<UnitId>> const& orbits() const noexcept {
      return _orbits;
    }

    std::uint32_t orbit_of(UnitId x) const {
      return _orbit_of.at(x);
    }

    /// The isotropy group at x, up to isomorphism (conjugate to the group
    /// at the orbit base).
    GroupTable const& isotropy(UnitId x) const {
      return _groups[_orbit_of.at(x)];
    }

    GroupTable const& orbit_group(std::uint32_t o) const {
      return _groups.at(o);
    }

    bool is_principal() const noexcept {
      return std::all_of(_groups.begin(), _groups.end(), [](GroupTable const& g) {
        return g.order() == 1;
      });
    }

    /// A unit with nontrivial isotropy, if any.
    std::optional<UnitId> isotropy_witness() const {
      for (std::uint32_t o = 0; o < _orbits.size(); ++o) {
        if (_groups[o].order() > 1) {
          return _orbits[o][0];
        }
      }
      return std::nullopt;
    }

    /// Every orbit is dense; with a finite discrete unit space that is a
    /// single orbit.
    bool is_minimal() const noexcept {
      return _orbits.size() == 1;
    }

    /// A finite discrete groupoid is always Hausdorff.
    bool is_hausdorff() const noexcept {
      return true;
    }

   private:
    std::size_t slot(NormalForm const& nf) const {
      auto k = _orbits[nf.orbit].size();
      return _offset[nf.orbit]
             + ((nf.rng_pos * k + nf.src_pos) * _groups[nf.orbit].order()) + nf.g;
    }

    std::size_t                      _n_units = 0;
    std::vector<UnitId>              _src;
    std::vector<UnitId>              _rng;
    std::vector<ArrowId>             _unit_arrow;
    std::vector<ArrowId>             _inverse;
    std::vector<std::vector<UnitId>> _orbits;
    std::vector<std::uint32_t>       _orbit_of;
    std::vector<std::uint32_t>       _pos;
    std::vector<GroupTable>          _groups;
    std::vector<std::size_t>         _offset;
    std::vector<ArrowId>             _index;
    std::vector<NormalForm>          _normal;
  };

  /// An explicit isomorphism between groupoids.
  struct GroupoidIsomorphism {
    std::vector<UnitId>  units;
    std::vector<ArrowId> arrows;
  };

  /// Checks that the maps form a groupoid isomorphism: bijective, and
  /// compatible with source, range and every composable pair.
  inline bool is_isomorphism(FiniteGroupoid const&      A,
                             FiniteGroupoid const&      B,
                             GroupoidIsomorphism const& f) {
    if (A.unit_count() != B.unit_count() || A.arrow_count() != B.arrow_count()
        || f.units.size() != A.unit_count() || f.arrows.size() != A.arrow_count()) {
      return false;
    }
    std::vector<bool> hit(B.arrow_count(), false);
    for (ArrowId a = 0; a < A.arrow_count(); ++a) {
      auto b = f.arrows[a];
      if (b >= B.arrow_count() || hit[b] || B.src(b) != f.units[A.src(a)]
          || B.rng(b) != f.units[A.rng(a)]) {
        return false;
      }
      hit[b] = true;
    }
    for (ArrowId a = 0; a < A.arrow_count(); ++a) {
      for (ArrowId c : A.arrows_from(A.rng(a))) {
        if (f.arrows[A.compose(c, a)] != B.compose(f.arrows[c], f.arrows[a])) {
          return false;
        }
      }
    }
    return true;
  }

  /// Finds an isomorphism A -> B if one exists. Orbits are matched by size
  /// and isotropy type, then arrows are mapped through the normal forms.
  inline std::optional<GroupoidIsomorphism> find_isomorphism(FiniteGroupoid const& A,
                                                             FiniteGroupoid const& B) {
    if (A.unit_count() != B.unit_count() || A.arrow_count() != B.arrow_count()
        || A.orbits().size() != B.orbits().size()) {
      return std::nullopt;
    }
    auto n_orbits = A.orbits().size();
    std::vector<std::uint32_t>              match(n_orbits);
    std::vector<std::vector<std::uint32_t>> phi(n_orbits);
    std::vector<bool>                       used(n_orbits, false);
    std::function<bool(std::uint32_t)>      assign = [&](std::uint32_t o) -> bool {
      if (o == n_orbits) {
        return true;
      }
      for (std::uint32_t p = 0; p < n_orbits; ++p) {
        if (used[p] || A.orbits()[o].size() != B.orbits()[p].size()) {
          continue;
        }
        auto iso = group_isomorphism(A.orbit_group(o), B.orbit_group(p));
        if (!iso) {
          continue;
        }
        used[p]  = true;
        match[o] = p;
        phi[o]   = std::move(*iso);
        if (assign(o + 1)) {
          return true;
        }
        used[p] = false;
      }
      return false;
    };
    if (!assign(0)) {
      return std::nullopt;
    }
    GroupoidIsomorphism f;
    f.units.resize(A.unit_count());
    f.arrows.resize(A.arrow_count());
    for (std::uint32_t o = 0; o < n_orbits; ++o) {
      for (std::size_t i = 0; i < A.orbits()[o].size(); ++i) {
        f.units[A.orbits()[o][i]] = B.orbits()[match[o]][i];
      }
    }
    for (ArrowId a = 0; a < A.arrow_count(); ++a) {
      auto nf = A.normal_form(a);
      f.arrows[a] = B.arrow({match[nf.orbit], nf.src_pos, nf.rng_pos, phi[nf.orbit][nf.g]});
    }
    if (!is_isomorphism(A, B, f)) {
      throw InternalError("groupoid isomorphism failed verification");
    }
    return f;
  }

}  // namespace boolinv

#endif  // BOOLINV_GROUPOID_HPP_
