#ifndef BOOLINV_GERMS_HPP_
#define BOOLINV_GERMS_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "boolean.hpp"
#include "error.hpp"
#include "fixed.hpp"
#include "groupoid.hpp"
#include "inverse_monoid.hpp"
#include "order.hpp"

namespace boolinv {

  /// A groupoid of germs together with its realization inside S: unit x is
  /// the atom units[x], and arrow a is the element arrows[a], whose source
  /// s*s is an atom.
  struct GermGroupoid {
    FiniteGroupoid         groupoid;
    std::vector<ElementId> units;
    std::vector<ElementId> arrows;

    std::optional<ArrowId> arrow_of(ElementId u) const {
      auto it = std::lower_bound(arrows.begin(), arrows.end(), u);
      if (it == arrows.end() || *it != u) {
        return std::nullopt;
      }
      return static_cast<ArrowId>(it - arrows.begin());
    }

    std::optional<UnitId> unit_of(ElementId a) const {
      auto it = std::find(units.begin(), units.end(), a);
      if (it == units.end()) {
        return std::nullopt;
      }
      return static_cast<UnitId>(it - units.begin());
    }
  };

  /// The ultrafilters of E(S), each given by the atom generating it.
  inline std::vector<ElementId> ultrafilters(InverseMonoid const& S) {
    if (!is_boolean_inverse_monoid(S)) {
      throw StructureError("ultrafilters: not a Boolean inverse monoid");
    }
    return atoms(S);
  }

  /// theta_s(a) = s a s*, for an atom a <= s*s.
  inline ElementId theta(InverseMonoid const& S, ElementId s, ElementId a) {
    if (a == S.zero() || S.product(S.source(s), a) != a) {
      throw ArgumentError("theta: " + S.to_string(a) + " is not below the source of "
                          + S.to_string(s));
    }
    return S.product(S.product(s, a), S.star(s));
  }

  /// Germs of the standard action of a finite inverse monoid on the atoms
  /// of E(S). A germ [s, a] is represented by its restriction sa, so the
  /// arrows are exactly the nonzero u with u*u an atom, composed by the
  /// product of S.
  ///
  /// When E(S) is finite every filter is principal and the tight filters
  /// are the ultrafilters, so this is the tight groupoid also when S is not
  /// Boolean.
  inline GermGroupoid germ_groupoid(InverseMonoid const& S, bool validate = false) {
    GermGroupoid result;
    result.units = atoms(S);
    std::unordered_map<ElementId, UnitId> unit_index;
    for (UnitId x = 0; x < result.units.size(); ++x) {
      unit_index.emplace(result.units[x], x);
    }
    std::vector<UnitId> src, rng;
    std::vector<ArrowId> arrow_index(S.size(), static_cast<ArrowId>(-1));
    for (ElementId u = 0; u < S.size(); ++u) {
      auto it = unit_index.find(S.source(u));
      if (it == unit_index.end()) {
        continue;
      }
      arrow_index[u] = static_cast<ArrowId>(result.arrows.size());
      result.arrows.push_back(u);
      src.push_back(it->second);
      rng.push_back(unit_index.at(S.range(u)));
    }
    std::vector<ArrowId> unit_arrow, inverse;
    for (ElementId a : result.units) {
      unit_arrow.push_back(arrow_index[a]);
    }
    for (ElementId u : result.arrows) {
      inverse.push_back(arrow_index[S.star(u)]);
    }
    auto compose = [&](ArrowId b, ArrowId a) {
      auto id = arrow_index[S.product(result.arrows[b], result.arrows[a])];
      if (id == static_cast<ArrowId>(-1)) {
        throw InternalError("product of composable germs is not a germ");
      }
      return id;
    };
    result.groupoid = FiniteGroupoid::build(
        result.units.size(), src, rng, unit_arrow, inverse, compose, validate);
    return result;
  }

  /// The tight groupoid of a finite Boolean inverse monoid.
  inline GermGroupoid tight_groupoid(InverseMonoid const& S) {
    NaturalOrder order(S);
    if (!is_boolean_inverse_monoid(S, order, BooleanSkeleton(S))) {
      throw StructureError("tight_groupoid: not a Boolean inverse monoid");
    }
    if (!condition_H(order).holds()) {
      throw StructureError("tight_groupoid: condition (H) fails");
    }
    return germ_groupoid(S, S.size() <= 2000);
  }

  /// The groupoid of germs built from the definition: pairs (s, a) with a
  /// an atom below s*s, identified when se = te for some idempotent e >= a.
  /// Arrow ids follow the order of the first representative (s, a) found
  /// with s ascending. Intended as an independent check of germ_groupoid on
  /// small monoids.
  inline FiniteGroupoid germ_quotient_groupoid(InverseMonoid const& S) {
    auto                atom_list = atoms(S);
    std::vector<UnitId> atom_of(S.size(), static_cast<UnitId>(-1));
    for (UnitId x = 0; x < atom_list.size(); ++x) {
      atom_of[atom_list[x]] = x;
    }
    struct Pair {
      ElementId s;
      UnitId    a;
    };
    std::vector<Pair>                           pairs;
    std::unordered_map<std::uint64_t, std::size_t> pair_index;
    auto key = [&](ElementId s, UnitId a) {
      return static_cast<std::uint64_t>(s) * atom_list.size() + a;
    };
    for (ElementId s = 0; s < S.size(); ++s) {
      for (UnitId a = 0; a < atom_list.size(); ++a) {
        if (S.product(S.source(s), atom_list[a]) == atom_list[a]) {
          pair_index.emplace(key(s, a), pairs.size());
          pairs.push_back({s, a});
        }
      }
    }
    // union-find of germ-equivalent pairs over a shared atom
    std::vector<std::size_t> parent(pairs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t i) {
      while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i         = parent[i];
      }
      return i;
    };
    std::vector<std::vector<std::size_t>> by_atom(atom_list.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      by_atom[pairs[i].a].push_back(i);
    }
    for (UnitId a = 0; a < atom_list.size(); ++a) {
      std::vector<ElementId> witnesses;
      for (ElementId e : S.idempotents()) {
        if (S.product(e, atom_list[a]) == atom_list[a]) {
          witnesses.push_back(e);
        }
      }
      auto const& P = by_atom[a];
      for (std::size_t i = 0; i < P.size(); ++i) {
        for (std::size_t j = i + 1; j < P.size(); ++j) {
          if (root(P[i]) == root(P[j])) {
            continue;
          }
          auto s = pairs[P[i]].s, t = pairs[P[j]].s;
          for (ElementId e : witnesses) {
            if (S.product(s, e) == S.product(t, e)) {
              parent[root(P[j])] = root(P[i]);
              break;
            }
          }
        }
      }
    }
    std::vector<ArrowId> class_of(pairs.size());
    std::vector<std::size_t> rep;
    std::unordered_map<std::size_t, ArrowId> class_id;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto r  = root(i);
      auto it = class_id.find(r);
      if (it == class_id.end()) {
        it = class_id.emplace(r, static_cast<ArrowId>(rep.size())).first;
        rep.push_back(i);
      }
      class_of[i] = it->second;
    }
    auto theta_atom = [&](ElementId s, UnitId a) {
      return atom_of[S.product(S.product(s, atom_list[a]), S.star(s))];
    };
    std::vector<UnitId>  src(rep.size()), rng(rep.size());
    std::vector<ArrowId> inverse(rep.size()), unit_arrow(atom_list.size());
    for (ArrowId c = 0; c < rep.size(); ++c) {
      auto [s, a] = pairs[rep[c]];
      src[c]      = a;
      rng[c]      = theta_atom(s, a);
      inverse[c]  = class_of[pair_index.at(key(S.star(s), rng[c]))];
    }
    for (UnitId a = 0; a < atom_list.size(); ++a) {
      unit_arrow[a] = class_of[pair_index.at(key(atom_list[a], a))];
    }
    // [t, theta_s(a)] [s, a] = [ts, a]
    auto compose = [&](ArrowId b, ArrowId a) {
      auto s = pairs[rep[a]].s, t = pairs[rep[b]].s;
      return class_of[pair_index.at(key(S.product(t, s), pairs[rep[a]].a))];
    };
    return FiniteGroupoid::build(atom_list.size(), src, rng, unit_arrow, inverse, compose, true);
  }

  /// The three criteria evaluated inside S: Hausdorff (every J_s has a
  /// largest element), essentially principal (weakly fixed implies fixed)
  /// and minimal (e <= join of s f s* over all s, for nonzero e, f).
  struct AlgebraicPredicates {
    bool hausdorff             = false;
    bool essentially_principal = false;
    bool minimal               = false;
  };

  inline AlgebraicPredicates algebraic_predicates(NaturalOrder const&    order,
                                                  BooleanSkeleton const& skeleton) {
    auto const&         S = order.monoid();
    AlgebraicPredicates p;
    p.hausdorff             = condition_H(order).largest_fixed;
    p.essentially_principal = true;
    for (ElementId s = 0; s < S.size() && p.essentially_principal; ++s) {
      for (ElementId e : S.idempotents()) {
        if (weakly_fixed(S, e, s) && S.product(s, e) != e) {
          p.essentially_principal = false;
          break;
        }
      }
    }
    p.minimal = true;
    for (ElementId f : S.idempotents()) {
      if (f == S.zero()) {
        continue;
      }
      std::vector<ElementId> conj;
      for (ElementId s = 0; s < S.size(); ++s) {
        conj.push_back(S.product(S.product(s, f), S.star(s)));
      }
      std::sort(conj.begin(), conj.end());
      conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
      auto u = skeleton.join(std::span<ElementId const>(conj));
      if (!u) {
        throw StructureError("minimality: conjugates of an idempotent have no join");
      }
      for (ElementId e : S.idempotents()) {
        if (e != S.zero() && S.product(*u, e) != e) {
          p.minimal = false;
        }
      }
    }
    return p;
  }

  inline AlgebraicPredicates algebraic_predicates(InverseMonoid const& S) {
    NaturalOrder    order(S);
    BooleanSkeleton skeleton(S);
    if (!is_boolean_inverse_monoid(S, order, skeleton)) {
      throw StructureError("algebraic_predicates: not a Boolean inverse monoid");
    }
    return algebraic_predicates(order, skeleton);
  }

  /// The bisections of G, each as one arrow id (or -1) per source unit.
  inline std::vector<std::vector<std::int64_t>>
  bisections(FiniteGroupoid const& G, std::size_t cap = kDefaultElementCap) {
    auto                                   n = G.unit_count();
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t>              current(n, -1);
    std::vector<bool>                      range_used(n, false);
    std::vector<std::vector<ArrowId>>      from(n);
    for (UnitId x = 0; x < n; ++x) {
      from[x] = G.arrows_from(x);
    }
    std::function<void(UnitId)> extend = [&](UnitId x) {
      if (x == n) {
        if (out.size() == cap) {
          throw SizeLimitError("ample semigroup exceeds the element cap", cap);
        }
        out.push_back(current);
        return;
      }
      current[x] = -1;
      extend(x + 1);
      for (ArrowId a : from[x]) {
        auto y = G.rng(a);
        if (range_used[y]) {
          continue;
        }
        range_used[y] = true;
        current[x]    = a;
        extend(x + 1);
        range_used[y] = false;
        current[x]    = -1;
      }
    };
    extend(0);
    return out;
  }

  /// The inverse monoid of (compact) bisections under setwise product and
  /// inverse. Principal groupoids give partial bijections of the units;
  /// otherwise the monoid is built from its tables.
  inline InverseMonoid ample_semigroup(FiniteGroupoid const& G,
                                       std::size_t           cap = kDefaultElementCap) {
    auto B = bisections(G, cap);
    auto n = G.unit_count();
    if (G.is_principal()) {
      std::vector<PartialBijection> elements;
      elements.reserve(B.size());
      for (auto const& U : B) {
        std::vector<Point> images(n, kUndefined);
        for (UnitId x = 0; x < n; ++x) {
          if (U[x] >= 0) {
            images[x] = static_cast<Point>(G.rng(static_cast<ArrowId>(U[x])));
          }
        }
        elements.push_back(PartialBijection::from_images(std::move(images)));
      }
      return InverseMonoid::from_elements(n, elements, cap);
    }
    std::map<std::vector<std::int64_t>, ElementId> index;
    for (ElementId i = 0; i < B.size(); ++i) {
      index.emplace(B[i], i);
    }
    auto m = B.size();
    std::vector<ElementId> product(m * m), star(m);
    std::vector<std::int64_t> buf(n);
    for (ElementId i = 0; i < m; ++i) {
      std::fill(buf.begin(), buf.end(), -1);
      for (UnitId x = 0; x < n; ++x) {
        if (B[i][x] >= 0) {
          auto a            = static_cast<ArrowId>(B[i][x]);
          buf[G.rng(a)] = G.inverse(a);
        }
      }
      star[i] = index.at(buf);
      for (ElementId j = 0; j < m; ++j) {
        // UV: first an arrow of V, then the arrow of U leaving its range
        std::fill(buf.begin(), buf.end(), -1);
        for (UnitId x = 0; x < n; ++x) {
          if (B[j][x] < 0) {
            continue;
          }
          auto v = static_cast<ArrowId>(B[j][x]);
          auto u = B[i][G.rng(v)];
          if (u >= 0) {
            buf[x] = G.compose(static_cast<ArrowId>(u), v);
          }
        }
        product[static_cast<std::size_t>(i) * m + j] = index.at(buf);
      }
    }
    return InverseMonoid::from_tables(m, std::move(product), std::move(star));
  }

  /// Whether the tight groupoid of the ample semigroup of G is isomorphic
  /// to G.
  inline bool stone_roundtrip(FiniteGroupoid const& G) {
    auto S = ample_semigroup(G);
    auto T = tight_groupoid(S);
    return find_isomorphism(T.groupoid, G).has_value();
  }

}  // namespace boolinv

#endif  // BOOLINV_GERMS_HPP_
