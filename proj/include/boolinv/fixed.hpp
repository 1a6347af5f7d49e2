#ifndef BOOLINV_FIXED_HPP_
#define BOOLINV_FIXED_HPP_

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <vector>

#include "boolean.hpp"
#include "error.hpp"
#include "inverse_monoid.hpp"
#include "order.hpp"

namespace boolinv {

  /// J_s = {e in E(S) : se = e}.
  inline std::vector<ElementId> fixed_idempotents(InverseMonoid const& S,
                                                  ElementId            s) {
    std::vector<ElementId> out;
    for (ElementId e : S.idempotents()) {
      if (S.product(s, e) == e) {
        out.push_back(e);
      }
    }
    return out;
  }

  /// e_s, the join of J_s. J_s = {0} gives e_s = 0.
  inline ElementId e_of(BooleanSkeleton const& skeleton, ElementId s) {
    auto J = fixed_idempotents(skeleton.monoid(), s);
    auto j = skeleton.join(std::span<ElementId const>(J));
    if (!j) {
      throw StructureError("the idempotents fixed by "
                           + skeleton.monoid().to_string(s) + " have no join");
    }
    return *j;
  }

  /// e_s for every element, indexed by element id.
  inline std::vector<ElementId> diagonal_table(BooleanSkeleton const& skeleton) {
    auto const&            S = skeleton.monoid();
    std::vector<ElementId> out(S.size());
    for (ElementId s = 0; s < S.size(); ++s) {
      out[s] = e_of(skeleton, s);
    }
    return out;
  }

  /// e is weakly fixed by s: fsfs* != 0 for every nonzero idempotent f <= e.
  inline bool weakly_fixed(InverseMonoid const& S, ElementId e, ElementId s) {
    if (!S.is_idempotent(e)) {
      throw ArgumentError(S.to_string(e) + " is not an idempotent");
    }
    for (ElementId f : S.idempotents()) {
      if (f == S.zero() || S.product(e, f) != f) {
        continue;
      }
      if (S.product(S.product(f, s, f), S.star(s)) == S.zero()) {
        return false;
      }
    }
    return true;
  }

  struct ConditionH {
    bool all_meets = false;
    // every J_s is covered by a finite subset of itself
    bool cover_form = false;
    // every J_s has a largest element
    bool largest_fixed = false;

    bool holds() const noexcept {
      return all_meets && cover_form && largest_fixed;
    }
  };

  inline ConditionH condition_H(NaturalOrder const& order) {
    auto const& S = order.monoid();
    ConditionH  result;
    result.all_meets     = order.all_meets_exist();
    result.cover_form    = true;
    result.largest_fixed = true;
    for (ElementId s = 0; s < S.size(); ++s) {
      auto J = fixed_idempotents(S, s);
      // the finite set J_s covers itself
      result.cover_form = result.cover_form && is_cover(S, J, J);
      bool found        = false;
      for (ElementId m : J) {
        bool above_all = true;
        for (ElementId e : J) {
          if (S.product(m, e) != e) {
            above_all = false;
            break;
          }
        }
        if (above_all) {
          found = true;
          break;
        }
      }
      result.largest_fixed = result.largest_fixed && found;
    }
    return result;
  }

  /// Failure counts for the identities satisfied by s -> e_s in a Boolean
  /// inverse monoid with condition (H). All zero means every identity held
  /// on every tuple.
  struct DiagonalLemmaReport {
    std::size_t meet_form  = 0;  // e_s = s ^ s*s
    std::size_t star       = 0;  // e_{s*} = e_s
    std::size_t below_range  = 0;  // e_{st} <= ss*
    std::size_t below_source = 0;  // e_{st} <= t*t
    std::size_t triple     = 0;  // e_{s*t} e_{t*r} <= e_{s*r}
    std::size_t conjugate  = 0;  // s* e_{st} s = e_{ts}

    std::size_t total() const noexcept {
      return meet_form + star + below_range + below_source + triple + conjugate;
    }
  };

  inline DiagonalLemmaReport
  verify_diagonal_lemmas(NaturalOrder const&           order,
                         BooleanSkeleton const&        skeleton,
                         std::vector<ElementId> const& diag) {
    auto const&         S = order.monoid();
    auto                n = static_cast<ElementId>(S.size());
    DiagonalLemmaReport r;
    auto idem_leq = [&](ElementId e, ElementId f) {
      return S.product(f, e) == e;
    };
    for (ElementId s = 0; s < n; ++s) {
      auto m = order.meet(s, S.source(s));
      if (!m || *m != diag[s]) {
        ++r.meet_form;
      }
      if (diag[S.star(s)] != diag[s]) {
        ++r.star;
      }
      for (ElementId t = 0; t < n; ++t) {
        ElementId e = diag[S.product(s, t)];
        if (!idem_leq(e, S.range(s))) {
          ++r.below_range;
        }
        if (!idem_leq(e, S.source(t))) {
          ++r.below_source;
        }
        if (S.product(S.product(S.star(s), e), s) != diag[S.product(t, s)]) {
          ++r.conjugate;
        }
      }
    }
    // The triple inequality is tested atom by atom: with F_a[s][t] set iff
    // a <= e_{s*t}, it says F_a . F_a <= F_a as boolean matrices.
    using Bits = boost::dynamic_bitset<>;
    for (ElementId a : skeleton.atoms()) {
      std::vector<bool> below(n);
      for (ElementId x = 0; x < n; ++x) {
        below[x] = S.product(diag[x], a) == a;
      }
      std::vector<Bits> F(n, Bits(n));
      for (ElementId s = 0; s < n; ++s) {
        for (ElementId t = 0; t < n; ++t) {
          if (below[S.product(S.star(s), t)]) {
            F[s].set(t);
          }
        }
      }
      for (ElementId s = 0; s < n; ++s) {
        Bits reach(n);
        for (auto t = F[s].find_first(); t != Bits::npos; t = F[s].find_next(t)) {
          reach |= F[t];
        }
        r.triple += (reach - F[s]).count();
      }
    }
    return r;
  }

}  // namespace boolinv

#endif  // BOOLINV_FIXED_HPP_
