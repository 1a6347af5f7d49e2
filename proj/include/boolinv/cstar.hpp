#ifndef BOOLINV_CSTAR_HPP_
#define BOOLINV_CSTAR_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "boolean.hpp"
#include "error.hpp"
#include "fixed.hpp"
#include "germs.hpp"
#include "inverse_monoid.hpp"
#include "linear.hpp"
#include "matrix.hpp"
#include "means.hpp"
#include "order.hpp"
#include "rational.hpp"

namespace boolinv {

  /// A map S -> direct sum of matrix algebras, tabulated on all of S.
  struct MatrixRepresentation {
    std::vector<std::size_t> block_sizes;
    std::vector<BlockMatrix> images;

    BlockMatrix const& operator()(ElementId s) const {
      return images.at(s);
    }

    BlockMatrix one() const {
      return BlockMatrix::identity(block_sizes);
    }

    BlockMatrix zero() const {
      return BlockMatrix(block_sizes);
    }
  };

  /// The action of S on its atoms, split by orbit. Element s acts on block
  /// O by the partial permutation matrix with (i, j) entry 1 iff a_j <= s*s
  /// and s a_j s* = a_i.
  class AtomRep {
   public:
    AtomRep(InverseMonoid const& S, GermGroupoid const& G) : _S(&S), _G(&G) {
      auto const& orbits = G.groupoid.orbits();
      for (auto const& o : orbits) {
        _sizes.push_back(o.size());
      }
      auto n_atoms = G.units.size();
      std::vector<std::int32_t> atom_of(S.size(), -1);
      for (std::size_t x = 0; x < n_atoms; ++x) {
        atom_of[G.units[x]] = static_cast<std::int32_t>(x);
      }
      _action.assign(S.size() * n_atoms, -1);
      for (ElementId s = 0; s < S.size(); ++s) {
        auto src = S.source(s);
        for (std::size_t x = 0; x < n_atoms; ++x) {
          auto a = G.units[x];
          if (S.product(src, a) == a) {
            _action[s * n_atoms + x] = atom_of[S.product(S.product(s, a), S.star(s))];
          }
        }
      }
    }

    std::vector<std::size_t> const& block_sizes() const noexcept {
      return _sizes;
    }

    /// The atom index that s sends atom x to, or -1.
    std::int32_t act(ElementId s, std::size_t x) const {
      return _action[s * _G->units.size() + x];
    }

    BlockMatrix image(ElementId s) const {
      BlockMatrix m(_sizes);
      auto const& G = _G->groupoid;
      for (std::size_t x = 0; x < _G->units.size(); ++x) {
        auto y = act(s, x);
        if (y < 0) {
          continue;
        }
        auto o = G.orbit_of(static_cast<UnitId>(x));
        m.block(o)(position(static_cast<UnitId>(y)), position(static_cast<UnitId>(x))) = 1;
      }
      return m;
    }

    MatrixRepresentation representation() const {
      MatrixRepresentation rep{_sizes, {}};
      for (ElementId s = 0; s < _S->size(); ++s) {
        rep.images.push_back(image(s));
      }
      return rep;
    }

    /// Normalized trace of block o of the image of s, times the orbit size:
    /// the number of atoms of orbit o fixed by s.
    std::size_t fixed_atoms(ElementId s, std::uint32_t o) const {
      std::size_t count = 0;
      for (auto x : _G->groupoid.orbits()[o]) {
        if (act(s, x) == static_cast<std::int32_t>(x)) {
          ++count;
        }
      }
      return count;
    }

    InverseMonoid const& monoid() const noexcept {
      return *_S;
    }

    GermGroupoid const& groupoid() const noexcept {
      return *_G;
    }

   private:
    std::size_t position(UnitId x) const {
      auto const& orbit = _G->groupoid.orbits()[_G->groupoid.orbit_of(x)];
      return static_cast<std::size_t>(std::find(orbit.begin(), orbit.end(), x) - orbit.begin());
    }

    InverseMonoid const*      _S;
    GermGroupoid const*       _G;
    std::vector<std::size_t>  _sizes;
    std::vector<std::int32_t> _action;
  };

  /// The representation pi plus a one-dimensional block sending s to 1 when
  /// s is a total bijection and to 0 otherwise. The extra block is
  /// multiplicative and *-preserving but does not respect joins.
  inline MatrixRepresentation with_totality_block(MatrixRepresentation pi,
                                                  InverseMonoid const& S) {
    pi.block_sizes.push_back(1);
    for (ElementId s = 0; s < S.size(); ++s) {
      auto    img = S.images(s);
      bool    total =
          std::none_of(img.begin(), img.end(), [](Point y) { return y == kUndefined; });
      Matrix  chi(1, 1);
      chi(0, 0) = total ? 1 : 0;
      std::vector<Matrix> blocks;
      for (std::size_t o = 0; o + 1 < pi.block_sizes.size(); ++o) {
        blocks.push_back(pi.images[s].block(o));
      }
      blocks.push_back(chi);
      pi.images[s] = BlockMatrix(std::move(blocks));
    }
    return pi;
  }

  struct RepresentationAxioms {
    bool zero           = false;  // pi(0) = 0
    bool multiplicative = false;  // pi(st) = pi(s) pi(t)
    bool adjoint        = false;  // pi(s*) = pi(s)*
    bool joins          = false;  // pi(s v t) = pi(s) + pi(t) - pi(ss*t)

    bool all() const noexcept {
      return zero && multiplicative && adjoint && joins;
    }
  };

  inline RepresentationAxioms check_representation_axioms(NaturalOrder const&         order,
                                                          MatrixRepresentation const& pi) {
    auto const&          S = order.monoid();
    auto                 n = static_cast<ElementId>(S.size());
    RepresentationAxioms r;
    r.zero           = pi(S.zero()).is_zero();
    r.multiplicative = true;
    r.adjoint        = true;
    r.joins          = true;
    for (ElementId s = 0; s < n; ++s) {
      r.adjoint = r.adjoint && pi(S.star(s)) == pi(s).adjoint();
      for (ElementId t = 0; t < n && r.multiplicative; ++t) {
        r.multiplicative = pi(S.product(s, t)) == pi(s) * pi(t);
      }
      for (ElementId t = s + 1; t < n && r.joins; ++t) {
        if (!order.compatible(s, t)) {
          continue;
        }
        auto j = order.join(s, t);
        r.joins = j && pi(*j) == pi(s) + pi(t) - pi(S.product(S.range(s), t));
      }
    }
    return r;
  }

  /// The same axioms read off the atom action, without forming matrices.
  inline RepresentationAxioms check_representation_axioms(NaturalOrder const& order,
                                                          AtomRep const&      pi) {
    auto const&          S = order.monoid();
    auto                 n = static_cast<ElementId>(S.size());
    auto                 m = pi.groupoid().units.size();
    RepresentationAxioms r;
    r.zero = true;
    for (std::size_t x = 0; x < m; ++x) {
      r.zero = r.zero && pi.act(S.zero(), x) < 0;
    }
    r.multiplicative = true;
    r.adjoint        = true;
    r.joins          = true;
    auto apply = [&](ElementId s, std::int32_t x) {
      return x < 0 ? -1 : pi.act(s, static_cast<std::size_t>(x));
    };
    // column x of a sum of partial permutation matrices, as (row, coef)
    using Column = std::vector<std::pair<std::int32_t, int>>;
    auto add = [](Column& c, std::int32_t y, int coef) {
      if (y < 0) {
        return;
      }
      for (auto& [row, k] : c) {
        if (row == y) {
          k += coef;
          return;
        }
      }
      c.emplace_back(y, coef);
    };
    auto normal = [](Column c) {
      c.erase(std::remove_if(c.begin(), c.end(), [](auto const& e) { return e.second == 0; }),
              c.end());
      std::sort(c.begin(), c.end());
      return c;
    };
    for (ElementId s = 0; s < n; ++s) {
      for (std::size_t x = 0; x < m; ++x) {
        auto y = pi.act(s, x);
        if (y >= 0 && pi.act(S.star(s), static_cast<std::size_t>(y)) != static_cast<std::int32_t>(x)) {
          r.adjoint = false;
        }
      }
      for (std::size_t y = 0; y < m && r.adjoint; ++y) {
        auto x = pi.act(S.star(s), y);
        if (x >= 0 && pi.act(s, static_cast<std::size_t>(x)) != static_cast<std::int32_t>(y)) {
          r.adjoint = false;
        }
      }
      for (ElementId t = 0; t < n && r.multiplicative; ++t) {
        auto st = S.product(s, t);
        for (std::size_t x = 0; x < m; ++x) {
          if (pi.act(st, x) != apply(s, pi.act(t, x))) {
            r.multiplicative = false;
            break;
          }
        }
      }
      for (ElementId t = s + 1; t < n && r.joins; ++t) {
        if (!order.compatible(s, t)) {
          continue;
        }
        auto j = order.join(s, t);
        if (!j) {
          r.joins = false;
          break;
        }
        auto sst = S.product(S.range(s), t);
        for (std::size_t x = 0; x < m; ++x) {
          Column lhs, rhs;
          add(lhs, pi.act(*j, x), 1);
          add(rhs, pi.act(s, x), 1);
          add(rhs, pi.act(t, x), 1);
          add(rhs, pi.act(sst, x), -1);
          if (normal(lhs) != normal(rhs)) {
            r.joins = false;
            break;
          }
        }
      }
    }
    return r;
  }

  namespace detail {
    // join of commuting projections
    inline BlockMatrix projection_join(BlockMatrix const& p, BlockMatrix const& q) {
      return p + q - p * q;
    }

    struct JoinState {
      ElementId   join;
      BlockMatrix projection;
    };

    // All (join in E(S), join of the images) pairs over subsets of F.
    inline std::vector<JoinState> subset_joins(BooleanSkeleton const&        skeleton,
                                               MatrixRepresentation const&   pi,
                                               std::vector<ElementId> const& F,
                                               std::size_t                   limit) {
      auto const&            S = skeleton.monoid();
      std::vector<JoinState> states{{S.zero(), pi.zero()}};
      for (ElementId f : F) {
        auto next = states;
        for (auto const& st : states) {
          JoinState cand{*skeleton.join(st.join, f), projection_join(st.projection, pi(f))};
          bool      seen = false;
          for (auto const& q : next) {
            if (q.join == cand.join && q.projection == cand.projection) {
              seen = true;
              break;
            }
          }
          if (!seen) {
            next.push_back(std::move(cand));
          }
        }
        if (next.size() > limit) {
          throw SizeLimitError("tightness check state space", limit);
        }
        states = std::move(next);
      }
      return states;
    }
  }  // namespace detail

  /// Checks the tight equation: for finite X, Y in E(S) and every cover Z
  /// of E(S)^{X,Y} (zero excluded), the join of pi(Z) equals
  /// prod pi(x) prod (1 - pi(y)).
  ///
  /// Only the meet x of X matters on the right, while for Y both its join
  /// in E(S) and the join of its images matter; Z covers E(S)^{X,Y}, which
  /// is the down-set of f = x & not(join Y), exactly when the join of Z is
  /// f. Enumerating the reachable (join, image join) pairs therefore covers
  /// every triple (X, Y, Z).
  inline bool verify_tight(BooleanSkeleton const&      skeleton,
                           MatrixRepresentation const& pi,
                           std::size_t                 limit = 100000) {
    auto const& S = skeleton.monoid();
    if (!S.one()) {
      return false;
    }
    auto const& E    = skeleton.idempotents();
    auto        Ys   = detail::subset_joins(skeleton, pi, E, limit);
    auto        unit = pi.one();
    // image joins of the subsets of f's down-set with join exactly f
    std::vector<std::vector<BlockMatrix>> covers(E.size());
    for (std::size_t k = 0; k < E.size(); ++k) {
      auto                   f = E[k];
      std::vector<ElementId> below;
      for (ElementId e : E) {
        if (S.product(f, e) == e) {
          below.push_back(e);
        }
      }
      for (auto& st : detail::subset_joins(skeleton, pi, below, limit)) {
        if (st.join == f) {
          covers[k].push_back(std::move(st.projection));
        }
      }
    }
    for (ElementId x : E) {
      for (auto const& y : Ys) {
        auto f   = skeleton.meet(x, skeleton.complement(y.join));
        auto rhs = pi(x) * (unit - y.projection);
        for (auto const& lhs : covers[skeleton.index(f)]) {
          if (!(lhs == rhs)) {
            return false;
          }
        }
      }
    }
    return true;
  }

  /// tau(x) = sum over orbits O of w_O times the normalized trace of the
  /// block of x at O.
  struct TraceFunctional {
    std::vector<std::size_t> orbit_sizes;
    std::vector<Rational>    weights;

    Rational operator()(BlockMatrix const& x) const {
      Rational t = 0;
      for (std::size_t o = 0; o < orbit_sizes.size(); ++o) {
        t += weights[o] * x.block(o).trace() / Rational(orbit_sizes[o]);
      }
      return t;
    }
  };

  inline void require_principal(GermGroupoid const& G) {
    auto witness = G.groupoid.isotropy_witness();
    if (witness) {
      for (ArrowId a : G.groupoid.isotropy_arrows(*witness)) {
        if (a != G.groupoid.unit_arrow(*witness)) {
          throw UnsupportedStructureError(
              "the tight groupoid has nontrivial isotropy, so traces and "
              "invariant means need not correspond",
              G.arrows[a]);
        }
      }
    }
  }

  /// tau_mu, with w_O = |O| times the common atom weight on O.
  inline TraceFunctional trace_from_mean(AtomRep const& pi, InvariantMean const& mu) {
    auto const& G = pi.groupoid();
    require_principal(G);
    measure_from_mean(G, mu);  // validates mu
    TraceFunctional tau{pi.block_sizes(), {}};
    for (auto const& orbit : G.groupoid.orbits()) {
      tau.weights.push_back(Rational(orbit.size()) * mu.weights[orbit[0]]);
    }
    return tau;
  }

  /// tau(delta_s) as the weighted count of atoms fixed by s.
  inline Rational trace_of_element(AtomRep const& pi, TraceFunctional const& tau, ElementId s) {
    Rational t = 0;
    for (std::uint32_t o = 0; o < tau.orbit_sizes.size(); ++o) {
      t += tau.weights[o] * make_rational(pi.fixed_atoms(s, o), tau.orbit_sizes[o]);
    }
    return t;
  }

  /// mu_tau(e) = tau(delta_e), read on the atoms.
  inline InvariantMean mean_from_trace(AtomRep const& pi, TraceFunctional const& tau) {
    auto const&   G = pi.groupoid();
    InvariantMean mu{G.units, {}};
    for (ElementId a : G.units) {
      mu.weights.push_back(trace_of_element(pi, tau, a));
    }
    measure_from_mean(G, mu);
    return mu;
  }

  /// The expectation onto the diagonal, blockwise.
  inline BlockMatrix conditional_expectation(BlockMatrix const& x) {
    return x.diagonal();
  }

  /// A random element sum a_i delta_{s_i} of the modeled algebra, with
  /// 1 to 4 terms and coefficients p/q, p in [-3, 3], q in [1, 4].
  inline BlockMatrix random_element(AtomRep const& pi, std::mt19937_64& rng) {
    std::uniform_int_distribution<int>       terms(1, 4), num(-3, 3), den(1, 4);
    std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(pi.monoid().size() - 1));
    BlockMatrix x(pi.block_sizes());
    auto        k = terms(rng);
    for (int i = 0; i < k; ++i) {
      auto     s = pick(rng);
      auto     c = make_rational(num(rng), den(rng));
      x = x + c * pi.image(s);
    }
    return x;
  }

  struct PositivityReport {
    std::size_t trials = 0;
    std::size_t negative = 0;
    // tau(x*x) = 0 with x != 0 while mu is faithful
    std::size_t faithfulness_violations = 0;
    std::size_t zero_elements = 0;

    bool ok() const noexcept {
      return negative == 0 && faithfulness_violations == 0;
    }
  };

  inline PositivityReport positivity_check(AtomRep const&       pi,
                                           InvariantMean const& mu,
                                           std::size_t          trials,
                                           std::uint64_t        seed) {
    auto             tau      = trace_from_mean(pi, mu);
    bool             faithful = is_faithful(mu);
    std::mt19937_64  rng(seed);
    PositivityReport r;
    r.trials = trials;
    for (std::size_t i = 0; i < trials; ++i) {
      auto x     = random_element(pi, rng);
      auto value = tau(x.adjoint() * x);
      if (value < 0) {
        ++r.negative;
      }
      if (x.is_zero()) {
        ++r.zero_elements;
      } else if (faithful && value == 0) {
        ++r.faithfulness_violations;
      }
    }
    return r;
  }

  /// Dimension of the linear span of the images of S.
  inline std::size_t span_dimension(MatrixRepresentation const& pi) {
    std::vector<std::vector<Rational>> rows;
    for (auto const& img : pi.images) {
      rows.push_back(img.flatten());
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    if (rows.empty()) {
      return 0;
    }
    Matrix M(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        M(i, j) = rows[i][j];
      }
    }
    return rank(M);
  }

}  // namespace boolinv

#endif  // BOOLINV_CSTAR_HPP_
