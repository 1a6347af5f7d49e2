#ifndef BOOLINV_ORDER_HPP_
#define BOOLINV_ORDER_HPP_

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "error.hpp"
#include "inverse_monoid.hpp"

namespace boolinv {

  /// Natural partial order s <= t iff t s*s = s, tabulated as down-sets and
  /// up-sets so that meets and joins are bitset intersections.
  ///
  /// Building the table costs |S|^2 products, so it is meant for the small
  /// monoids where the order-theoretic checks are run exhaustively.
  class NaturalOrder {
   public:
    using Bits = boost::dynamic_bitset<>;

    static constexpr std::size_t kMaxSize = 16384;

    explicit NaturalOrder(InverseMonoid const& S) : _S(&S) {
      auto n = S.size();
      if (n > kMaxSize) {
        throw SizeLimitError("natural order table too large", kMaxSize);
      }
      _down.assign(n, Bits(n));
      _up.assign(n, Bits(n));
      std::vector<ElementId> src(n);
      for (ElementId u = 0; u < n; ++u) {
        src[u] = S.source(u);
      }
      for (ElementId u = 0; u < n; ++u) {
        for (ElementId t = 0; t < n; ++t) {
          if (S.product(t, src[u]) == u) {
            _down[t].set(u);
            _up[u].set(t);
          }
        }
      }
    }

    InverseMonoid const& monoid() const noexcept {
      return *_S;
    }

    bool leq(ElementId s, ElementId t) const {
      return _down[t].test(s);
    }

    Bits const& down(ElementId s) const {
      return _down[s];
    }

    Bits const& up(ElementId s) const {
      return _up[s];
    }

    /// s*t and st* are both idempotent.
    bool compatible(ElementId s, ElementId t) const {
      auto const& S = *_S;
      return S.is_idempotent(S.product(S.star(s), t))
             && S.is_idempotent(S.product(s, S.star(t)));
    }

    /// The greatest common lower bound, computed as the largest element of
    /// the set of common lower bounds; absent when that set has no maximum.
    std::optional<ElementId> meet(ElementId s, ElementId t) const {
      Bits lower = _down[s] & _down[t];
      return maximum(lower);
    }

    /// The least upper bound of a pairwise compatible set, absent when the
    /// upper bounds have no minimum.
    std::optional<ElementId> join(std::span<ElementId const> F) const {
      for (std::size_t i = 0; i < F.size(); ++i) {
        for (std::size_t j = i + 1; j < F.size(); ++j) {
          if (!compatible(F[i], F[j])) {
            throw CompatibilityError("join of incompatible elements "
                                     + _S->to_string(F[i]) + " and "
                                     + _S->to_string(F[j]));
          }
        }
      }
      Bits upper(_S->size());
      upper.set();
      for (ElementId f : F) {
        upper &= _up[f];
      }
      return minimum(upper);
    }

    std::optional<ElementId> join(ElementId s, ElementId t) const {
      ElementId F[] = {s, t};
      return join(std::span<ElementId const>(F));
    }

    /// Every pair of elements has a meet.
    bool all_meets_exist() const {
      auto n = static_cast<ElementId>(_S->size());
      for (ElementId s = 0; s < n; ++s) {
        for (ElementId t = s + 1; t < n; ++t) {
          if (!meet(s, t)) {
            return false;
          }
        }
      }
      return true;
    }

   private:
    // m in X with down(m) == X
    std::optional<ElementId> maximum(Bits const& X) const {
      for (auto i = X.find_first(); i != Bits::npos; i = X.find_next(i)) {
        if (_down[i] == X) {
          return static_cast<ElementId>(i);
        }
      }
      return std::nullopt;
    }

    std::optional<ElementId> minimum(Bits const& X) const {
      for (auto i = X.find_first(); i != Bits::npos; i = X.find_next(i)) {
        if (_up[i] == X) {
          return static_cast<ElementId>(i);
        }
      }
      return std::nullopt;
    }

    InverseMonoid const* _S;
    std::vector<Bits>    _down;
    std::vector<Bits>    _up;
  };

  inline bool natural_leq(InverseMonoid const& S, ElementId s, ElementId t) {
    return S.product(t, S.source(s)) == s;
  }

  /// The equivalent form s <= t iff s s* t = s.
  inline bool natural_leq_left(InverseMonoid const& S, ElementId s, ElementId t) {
    return S.product(S.range(s), t) == s;
  }

  inline bool compatible(InverseMonoid const& S, ElementId s, ElementId t) {
    return S.is_idempotent(S.product(S.star(s), t))
           && S.is_idempotent(S.product(s, S.star(t)));
  }

}  // namespace boolinv

#endif  // BOOLINV_ORDER_HPP_
