#ifndef BOOLINV_MEANS_HPP_
#define BOOLINV_MEANS_HPP_

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "boolean.hpp"
#include "error.hpp"
#include "germs.hpp"
#include "groupoid.hpp"
#include "inverse_monoid.hpp"
#include "linear.hpp"
#include "rational.hpp"

namespace boolinv {

  /// A normalized invariant mean, stored by its values on the atoms.
  struct InvariantMean {
    std::vector<ElementId> atoms;
    std::vector<Rational>  weights;

    friend bool operator==(InvariantMean const&, InvariantMean const&) = default;
  };

  /// A probability measure on the units of a finite groupoid.
  struct UnitMeasure {
    std::vector<Rational> weights;

    friend bool operator==(UnitMeasure const&, UnitMeasure const&) = default;
  };

  /// Ax = b over the atom weights; nonnegativity is implicit.
  struct MeanConstraints {
    std::vector<ElementId> atoms;
    Matrix                 A;
    std::vector<Rational>  b;
  };

  /// Invariance w(a) = w(s a s*) for every s and atom a <= s*s, and
  /// normalization. Duplicate equations are dropped.
  inline MeanConstraints mean_constraints(InverseMonoid const& S) {
    MeanConstraints C;
    C.atoms = atoms(S);
    std::vector<std::size_t> index(S.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < C.atoms.size(); ++i) {
      index[C.atoms[i]] = i;
    }
    std::set<std::pair<std::size_t, std::size_t>> equal;
    for (ElementId s = 0; s < S.size(); ++s) {
      auto src = S.source(s);
      for (std::size_t i = 0; i < C.atoms.size(); ++i) {
        auto a = C.atoms[i];
        if (S.product(src, a) != a) {
          continue;
        }
        auto j = index[S.product(S.product(s, a), S.star(s))];
        if (j == static_cast<std::size_t>(-1)) {
          throw StructureError("the image of an atom is not an atom");
        }
        if (i != j) {
          equal.emplace(std::min(i, j), std::max(i, j));
        }
      }
    }
    auto n = C.atoms.size();
    C.A    = Matrix(equal.size() + 1, n);
    C.b.assign(equal.size() + 1, Rational(0));
    std::size_t row = 0;
    for (auto [i, j] : equal) {
      C.A(row, i) = 1;
      C.A(row, j) = -1;
      ++row;
    }
    for (std::size_t j = 0; j < n; ++j) {
      C.A(row, j) = 1;
    }
    C.b[row] = 1;
    return C;
  }

  inline bool satisfies(MeanConstraints const& C, std::vector<Rational> const& w) {
    if (w.size() != C.atoms.size()) {
      return false;
    }
    for (auto const& q : w) {
      if (q < 0) {
        return false;
      }
    }
    for (std::size_t i = 0; i < C.A.rows(); ++i) {
      Rational sum = 0;
      for (std::size_t j = 0; j < C.A.cols(); ++j) {
        sum += C.A(i, j) * w[j];
      }
      if (sum != C.b[i]) {
        return false;
      }
    }
    return true;
  }

  /// Invariant probability measures: nonnegative, total mass 1, and
  /// nu(d(g)) = nu(r(g)) for every arrow (hence nu(d(U)) = nu(r(U)) for
  /// every bisection U).
  inline bool is_invariant_measure(FiniteGroupoid const& G, UnitMeasure const& nu) {
    if (nu.weights.size() != G.unit_count()) {
      return false;
    }
    Rational total = 0;
    for (auto const& q : nu.weights) {
      if (q < 0) {
        return false;
      }
      total += q;
    }
    if (total != 1) {
      return false;
    }
    for (ArrowId a = 0; a < G.arrow_count(); ++a) {
      if (nu.weights[G.src(a)] != nu.weights[G.rng(a)]) {
        return false;
      }
    }
    return true;
  }

  /// The extreme invariant measures: uniform on one orbit, in orbit order.
  inline std::vector<UnitMeasure> invariant_measures(FiniteGroupoid const& G) {
    std::vector<UnitMeasure> out;
    for (auto const& orbit : G.orbits()) {
      UnitMeasure nu{std::vector<Rational>(G.unit_count(), Rational(0))};
      for (auto x : orbit) {
        nu.weights[x] = make_rational(1, orbit.size());
      }
      out.push_back(std::move(nu));
    }
    return out;
  }

  struct MeanPolytope {
    MeanConstraints            constraints;
    std::vector<InvariantMean> vertices;
    std::size_t                dimension = 0;
    bool                       verified_by_oracle = false;
  };

  /// M(S) for a finite Boolean inverse monoid. The vertices are the means
  /// uniform on one atom orbit; when there are few enough atoms they are
  /// compared with a brute-force vertex enumeration of the raw constraints.
  inline MeanPolytope mean_polytope(InverseMonoid const& S, GermGroupoid const& G) {
    MeanPolytope P;
    P.constraints = mean_constraints(S);
    if (P.constraints.atoms != G.units) {
      throw InternalError("atom orders disagree");
    }
    std::vector<std::vector<Rational>> points;
    for (auto const& nu : invariant_measures(G.groupoid)) {
      if (!satisfies(P.constraints, nu.weights)) {
        throw InternalError("orbit-uniform mean violates the constraints");
      }
      points.push_back(nu.weights);
    }
    std::sort(points.begin(), points.end());
    if (P.constraints.atoms.size() <= kMaxVertexEnumerationVariables) {
      auto oracle = enumerate_vertices(P.constraints.A, P.constraints.b);
      if (oracle != points) {
        throw InternalError("orbit vertices differ from the enumerated vertices");
      }
      P.verified_by_oracle = true;
    }
    P.dimension = affine_dimension(points);
    for (auto& w : points) {
      P.vertices.push_back({P.constraints.atoms, std::move(w)});
    }
    return P;
  }

  inline MeanPolytope mean_polytope(InverseMonoid const& S) {
    return mean_polytope(S, tight_groupoid(S));
  }

  /// mu(e): the sum of the weights of the atoms below e.
  inline Rational evaluate_mean(InverseMonoid const& S, InvariantMean const& mu, ElementId e) {
    if (!S.is_idempotent(e)) {
      throw ArgumentError(S.to_string(e) + " is not an idempotent");
    }
    Rational sum = 0;
    for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
      if (S.product(e, mu.atoms[i]) == mu.atoms[i]) {
        sum += mu.weights[i];
      }
    }
    return sum;
  }

  inline bool is_faithful(InvariantMean const& mu) {
    return std::all_of(mu.weights.begin(), mu.weights.end(), [](Rational const& q) {
      return q > 0;
    });
  }

  /// Units of the tight groupoid are the atoms, and D_e is the set of atoms
  /// below e, so nu is mu read on the atoms.
  inline UnitMeasure measure_from_mean(GermGroupoid const& G, InvariantMean const& mu) {
    if (mu.atoms != G.units) {
      throw ValidationError("mean is not indexed by the units of the groupoid");
    }
    UnitMeasure nu{mu.weights};
    if (!is_invariant_measure(G.groupoid, nu)) {
      throw ValidationError("not a normalized invariant mean");
    }
    return nu;
  }

  inline InvariantMean mean_from_measure(GermGroupoid const& G, UnitMeasure const& nu) {
    if (!is_invariant_measure(G.groupoid, nu)) {
      throw ValidationError("not an invariant probability measure");
    }
    return {G.units, nu.weights};
  }

}  // namespace boolinv

#endif  // BOOLINV_MEANS_HPP_
