#ifndef BOOLINV_BOOLEAN_HPP_
#define BOOLINV_BOOLEAN_HPP_

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "inverse_monoid.hpp"
#include "order.hpp"

namespace boolinv {

  /// The minimal nonzero idempotents.
  inline std::vector<ElementId> atoms(InverseMonoid const& S) {
    std::vector<ElementId> out;
    for (ElementId e : S.idempotents()) {
      if (e == S.zero()) {
        continue;
      }
      bool minimal = true;
      for (ElementId f : S.idempotents()) {
        if (f != e && f != S.zero() && S.product(e, f) == f) {
          minimal = false;
          break;
        }
      }
      if (minimal) {
        out.push_back(e);
      }
    }
    return out;
  }

  /// The semilattice of idempotents with its lattice operations tabulated:
  /// meets (products), joins where they exist, complements where they
  /// exist, and the set of atoms below every idempotent.
  class BooleanSkeleton {
   public:
    using Bits = boost::dynamic_bitset<>;

    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    explicit BooleanSkeleton(InverseMonoid const& S) : _S(&S) {
      _idempotents = S.idempotents();
      auto k       = _idempotents.size();
      for (std::size_t i = 0; i < k; ++i) {
        _index.emplace(_idempotents[i], i);
      }
      _atoms = boolinv::atoms(S);
      for (std::size_t a = 0; a < _atoms.size(); ++a) {
        _atom_index.emplace(_atoms[a], a);
      }
      _below.assign(k, Bits(_atoms.size()));
      _meet.assign(k * k, kNone);
      std::vector<Bits> up(k, Bits(k));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          ElementId ef   = S.product(_idempotents[i], _idempotents[j]);
          _meet[i * k + j] = _index.at(ef);
          if (ef == _idempotents[i]) {
            up[i].set(j);  // e_i <= e_j
          }
        }
        for (std::size_t a = 0; a < _atoms.size(); ++a) {
          if (S.product(_idempotents[i], _atoms[a]) == _atoms[a]) {
            _below[i].set(a);
          }
        }
      }
      // joins: least element among common upper bounds
      _join.assign(k * k, kNone);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
          Bits ub = up[i] & up[j];
          for (auto m = ub.find_first(); m != Bits::npos; m = ub.find_next(m)) {
            if (up[m] == ub) {
              _join[i * k + j] = _join[j * k + i] = m;
              break;
            }
          }
        }
      }
      _complement.assign(k, kNone);
      if (S.one()) {
        std::size_t one = _index.at(*S.one()), zero = _index.at(S.zero());
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            if (_meet[i * k + j] == zero && _join[i * k + j] == one) {
              _complement[i] = j;
              break;
            }
          }
        }
      }
    }

    InverseMonoid const& monoid() const noexcept {
      return *_S;
    }

    std::vector<ElementId> const& idempotents() const noexcept {
      return _idempotents;
    }

    std::vector<ElementId> const& atoms() const noexcept {
      return _atoms;
    }

    std::size_t atom_index(ElementId a) const {
      auto it = _atom_index.find(a);
      if (it == _atom_index.end()) {
        throw ArgumentError(_S->to_string(a) + " is not an atom");
      }
      return it->second;
    }

    bool is_atom(ElementId e) const {
      return _atom_index.count(e) != 0;
    }

    /// Atoms below the idempotent e, as a bitset over atom indices.
    Bits const& atoms_below(ElementId e) const {
      return _below[index(e)];
    }

    ElementId meet(ElementId e, ElementId f) const {
      return _idempotents[_meet[index(e) * size() + index(f)]];
    }

    std::optional<ElementId> join(ElementId e, ElementId f) const {
      auto j = _join[index(e) * size() + index(f)];
      if (j == kNone) {
        return std::nullopt;
      }
      return _idempotents[j];
    }

    /// Join of a finite set of idempotents; the empty join is 0.
    std::optional<ElementId> join(std::span<ElementId const> F) const {
      ElementId acc = _S->zero();
      for (ElementId f : F) {
        auto j = join(acc, f);
        if (!j) {
          return std::nullopt;
        }
        acc = *j;
      }
      return acc;
    }

    bool has_complement(ElementId e) const {
      return _complement[index(e)] != kNone;
    }

    ElementId complement(ElementId e) const {
      auto c = _complement[index(e)];
      if (c == kNone) {
        throw StructureError(_S->to_string(e) + " has no complement");
      }
      return _idempotents[c];
    }

    /// Complements exist and the Boolean-algebra laws hold on the tables:
    /// e & e' = 0, e | e' = 1, De Morgan, and distributivity of the lattice.
    bool is_boolean_algebra() const {
      if (!_S->one()) {
        return false;
      }
      auto      k    = size();
      ElementId zero = _S->zero(), one = *_S->one();
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          if (_join[i * k + j] == kNone) {
            return false;
          }
        }
        if (_complement[i] == kNone) {
          return false;
        }
      }
      for (ElementId e : _idempotents) {
        ElementId c = complement(e);
        if (meet(e, c) != zero || *join(e, c) != one || complement(c) != e) {
          return false;
        }
      }
      for (ElementId e : _idempotents) {
        for (ElementId f : _idempotents) {
          if (complement(*join(e, f)) != meet(complement(e), complement(f))
              || complement(meet(e, f)) != *join(complement(e), complement(f))) {
            return false;
          }
          for (ElementId g : _idempotents) {
            if (meet(e, *join(f, g)) != *join(meet(e, f), meet(e, g))) {
              return false;
            }
          }
        }
      }
      return true;
    }

    std::size_t size() const noexcept {
      return _idempotents.size();
    }

    std::size_t index(ElementId e) const {
      auto it = _index.find(e);
      if (it == _index.end()) {
        throw ArgumentError(_S->to_string(e) + " is not an idempotent");
      }
      return it->second;
    }

   private:
    InverseMonoid const*                     _S;
    std::vector<ElementId>                   _idempotents;
    std::unordered_map<ElementId, std::size_t> _index;
    std::vector<ElementId>                   _atoms;
    std::unordered_map<ElementId, std::size_t> _atom_index;
    std::vector<Bits>                        _below;
    std::vector<std::size_t>                 _meet;
    std::vector<std::size_t>                 _join;
    std::vector<std::size_t>                 _complement;
  };

  namespace detail {
    // t(s v u) = ts v tu for every compatible pair and every t, read off
    // the order tables. The right-hand identity follows by applying *.
    inline bool distributive_by_tables(NaturalOrder const& order) {
      auto const& S = order.monoid();
      auto        n = static_cast<ElementId>(S.size());
      for (ElementId s = 0; s < n; ++s) {
        for (ElementId u = s + 1; u < n; ++u) {
          if (!order.compatible(s, u)) {
            continue;
          }
          auto j = order.join(s, u);
          if (!j) {
            return false;
          }
          for (ElementId t = 0; t < n; ++t) {
            auto left = order.join(S.product(t, s), S.product(t, u));
            if (!left || *left != S.product(t, *j)) {
              return false;
            }
          }
        }
      }
      return true;
    }
  }  // namespace detail

  /// Every compatible pair has a join and multiplication distributes over
  /// it. For a monoid of partial bijections that contains the graph union of
  /// each compatible pair, the union is the join and distributivity holds
  /// as in I(X); otherwise the identities are checked on the tables.
  inline bool is_distributive(NaturalOrder const& order) {
    auto const& S = order.monoid();
    if (S.realized()) {
      auto n      = static_cast<ElementId>(S.size());
      bool closed = true;
      for (ElementId s = 0; s < n && closed; ++s) {
        auto ps = S.element(s);
        for (ElementId u = s + 1; u < n; ++u) {
          if (!order.compatible(s, u)) {
            continue;
          }
          auto j = graph_union(ps, S.element(u));
          if (!j || !S.find(*j)) {
            closed = false;
            break;
          }
        }
      }
      if (closed) {
        return true;
      }
    }
    return detail::distributive_by_tables(order);
  }

  inline bool is_distributive(InverseMonoid const& S) {
    return is_distributive(NaturalOrder(S));
  }

  /// A distributive inverse monoid whose idempotents form a Boolean algebra.
  inline bool is_boolean_inverse_monoid(InverseMonoid const&  S,
                                        NaturalOrder const&    order,
                                        BooleanSkeleton const& skeleton) {
    return S.one().has_value() && skeleton.is_boolean_algebra()
           && is_distributive(order);
  }

  inline bool is_boolean_inverse_monoid(InverseMonoid const& S) {
    return is_boolean_inverse_monoid(S, NaturalOrder(S), BooleanSkeleton(S));
  }

  /// e' in a Boolean inverse monoid.
  inline ElementId complement(BooleanSkeleton const& skeleton, ElementId e) {
    return skeleton.complement(e);
  }

  /// C covers X: every nonzero x in X has some c in C with cx != 0.
  /// Requires C subset of X subset of E(S). Zero elements of X impose no
  /// condition.
  inline bool is_cover(InverseMonoid const&           S,
                       std::span<ElementId const> C,
                       std::span<ElementId const> X) {
    for (ElementId x : X) {
      if (!S.is_idempotent(x)) {
        throw ArgumentError(S.to_string(x) + " is not an idempotent");
      }
    }
    for (ElementId c : C) {
      if (std::find(X.begin(), X.end(), c) == X.end()) {
        throw ArgumentError("cover element " + S.to_string(c)
                            + " is not in the covered set");
      }
    }
    for (ElementId x : X) {
      if (x == S.zero()) {
        continue;
      }
      bool hit = false;
      for (ElementId c : C) {
        if (S.product(c, x) != S.zero()) {
          hit = true;
          break;
        }
      }
      if (!hit) {
        return false;
      }
    }
    return true;
  }

}  // namespace boolinv

#endif  // BOOLINV_BOOLEAN_HPP_
