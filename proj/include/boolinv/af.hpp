#ifndef BOOLINV_AF_HPP_
#define BOOLINV_AF_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cstar.hpp"
#include "error.hpp"
#include "germs.hpp"
#include "inverse_monoid.hpp"
#include "linear.hpp"
#include "means.hpp"
#include "rational.hpp"

namespace boolinv {

  /// A Bratteli diagram cut at a finite depth. levels[i] = |V_i| and
  /// levels[0] = 1; an edge at level i joins V_i to V_{i+1}.
  class BratteliDiagram {
   public:
    struct Edge {
      std::size_t level;
      std::size_t src;
      std::size_t dst;
      std::size_t mult;
    };

    BratteliDiagram() = default;

    BratteliDiagram(std::vector<std::size_t> levels, std::vector<Edge> edges)
        : _levels(std::move(levels)), _edges(std::move(edges)) {}

    std::vector<std::size_t> const& levels() const noexcept {
      return _levels;
    }

    std::vector<Edge> const& edges() const noexcept {
      return _edges;
    }

    /// Number of levels below the root.
    std::size_t depth() const noexcept {
      return _levels.empty() ? 0 : _levels.size() - 1;
    }

    /// Every violated condition, in words; empty for a valid diagram.
    std::vector<std::string> violations() const {
      std::vector<std::string> out;
      if (_levels.empty()) {
        out.push_back("item 1: no root level");
        return out;
      }
      if (_levels[0] != 1) {
        out.push_back("item 1: level 0 must consist of the root alone");
      }
      for (std::size_t i = 1; i < _levels.size(); ++i) {
        if (_levels[i] == 0) {
          out.push_back("item 2: level " + std::to_string(i) + " is empty");
        }
      }
      std::vector<std::vector<std::size_t>> in(_levels.size()), out_deg(_levels.size());
      for (std::size_t i = 0; i < _levels.size(); ++i) {
        in[i].assign(_levels[i], 0);
        out_deg[i].assign(_levels[i], 0);
      }
      for (auto const& e : _edges) {
        auto where = "edge [" + std::to_string(e.level) + "," + std::to_string(e.src) + ","
                     + std::to_string(e.dst) + "," + std::to_string(e.mult) + "]";
        if (e.level + 1 >= _levels.size()) {
          out.push_back("item 3: " + where + " leaves the last level");
          continue;
        }
        if (e.src >= _levels[e.level] || e.dst >= _levels[e.level + 1]) {
          out.push_back("item 3: " + where + " refers to a missing vertex");
          continue;
        }
        if (e.mult == 0) {
          out.push_back("item 3: " + where + " has multiplicity 0");
          continue;
        }
        out_deg[e.level][e.src] += e.mult;
        in[e.level + 1][e.dst] += e.mult;
      }
      for (std::size_t i = 0; i < _levels.size(); ++i) {
        for (std::size_t v = 0; v < _levels[i]; ++v) {
          if (i > 0 && in[i][v] == 0) {
            out.push_back("item 4: vertex " + std::to_string(v) + " at level "
                          + std::to_string(i) + " receives no edge");
          }
          if (i + 1 < _levels.size() && out_deg[i][v] == 0) {
            out.push_back("item 4: vertex " + std::to_string(v) + " at level "
                          + std::to_string(i) + " emits no edge");
          }
        }
      }
      return out;
    }

    bool is_valid() const {
      return violations().empty();
    }

    void validate() const {
      auto v = violations();
      if (!v.empty()) {
        std::string msg = "invalid Bratteli diagram";
        for (auto const& s : v) {
          msg += "; " + s;
        }
        throw ValidationError(msg);
      }
    }

    /// k_i(v), the number of paths from the root to v; k_0 = (1).
    std::vector<std::size_t> dims(std::size_t i) const {
      validate();
      if (i > depth()) {
        throw ArgumentError("level " + std::to_string(i) + " beyond the diagram depth");
      }
      std::vector<std::size_t> k{1};
      for (std::size_t l = 0; l < i; ++l) {
        std::vector<std::size_t> next(_levels[l + 1], 0);
        for (auto const& e : _edges) {
          if (e.level == l) {
            next[e.dst] += e.mult * k[e.src];
          }
        }
        k = std::move(next);
      }
      return k;
    }

    /// One vertex per level joined by a double edge.
    static BratteliDiagram two_power(std::size_t depth) {
      std::vector<Edge> edges;
      for (std::size_t l = 0; l < depth; ++l) {
        edges.push_back({l, 0, 0, 2});
      }
      return {std::vector<std::size_t>(depth + 1, 1), edges};
    }

    /// Root to two vertices, then the edge matrix [[1,1],[1,0]].
    static BratteliDiagram fibonacci(std::size_t depth) {
      std::vector<std::size_t> levels(depth + 1, 2);
      levels[0] = 1;
      std::vector<Edge> edges;
      if (depth >= 1) {
        edges.push_back({0, 0, 0, 1});
        edges.push_back({0, 0, 1, 1});
      }
      for (std::size_t l = 1; l < depth; ++l) {
        edges.push_back({l, 0, 0, 1});
        edges.push_back({l, 1, 0, 1});
        edges.push_back({l, 0, 1, 1});
      }
      return {levels, edges};
    }

    /// Root to two vertices, then each vertex feeds only itself.
    static BratteliDiagram two_towers(std::size_t depth) {
      std::vector<std::size_t> levels(depth + 1, 2);
      levels[0] = 1;
      std::vector<Edge> edges;
      if (depth >= 1) {
        edges.push_back({0, 0, 0, 1});
        edges.push_back({0, 0, 1, 1});
      }
      for (std::size_t l = 1; l < depth; ++l) {
        edges.push_back({l, 0, 0, 1});
        edges.push_back({l, 1, 1, 1});
      }
      return {levels, edges};
    }

   private:
    std::vector<std::size_t> _levels;
    std::vector<Edge>        _edges;
  };

  /// Paths from the root to level i as sequences of labeled edges, an edge
  /// of multiplicity m giving m labels. Paths are sorted lexicographically
  /// by label sequence.
  class PathSpace {
   public:
    PathSpace(BratteliDiagram const& B, std::size_t i) {
      B.validate();
      if (i > B.depth()) {
        throw ArgumentError("level " + std::to_string(i) + " beyond the diagram depth");
      }
      std::vector<std::vector<std::pair<std::size_t, std::size_t>>> labels(i);
      std::size_t label = 0;
      for (auto const& e : B.edges()) {
        for (std::size_t m = 0; m < e.mult; ++m, ++label) {
          if (e.level < i) {
            _label_edges.push_back({label, e.src, e.dst});
            labels[e.level].emplace_back(label, _label_edges.size() - 1);
          }
        }
      }
      _paths = {{}};
      _terminal = {0};
      for (std::size_t l = 0; l < i; ++l) {
        std::vector<std::vector<std::size_t>> next;
        std::vector<std::size_t>              next_terminal;
        for (std::size_t p = 0; p < _paths.size(); ++p) {
          for (auto [lab, idx] : labels[l]) {
            if (_label_edges[idx].src == _terminal[p]) {
              auto q = _paths[p];
              q.push_back(lab);
              next.push_back(std::move(q));
              next_terminal.push_back(_label_edges[idx].dst);
            }
          }
        }
        _paths    = std::move(next);
        _terminal = std::move(next_terminal);
      }
      std::vector<std::size_t> order(_paths.size());
      for (std::size_t p = 0; p < order.size(); ++p) {
        order[p] = p;
      }
      std::sort(order.begin(), order.end(), [&](auto a, auto b) {
        return _paths[a] < _paths[b];
      });
      std::vector<std::vector<std::size_t>> paths;
      std::vector<std::size_t>              terminal;
      for (auto p : order) {
        paths.push_back(_paths[p]);
        terminal.push_back(_terminal[p]);
      }
      _paths    = std::move(paths);
      _terminal = std::move(terminal);
      for (std::size_t p = 0; p < _paths.size(); ++p) {
        _index.emplace(_paths[p], p);
      }
      _vertices = B.levels()[i];
    }

    std::size_t size() const noexcept {
      return _paths.size();
    }

    std::vector<std::size_t> const& path(std::size_t p) const {
      return _paths.at(p);
    }

    std::size_t terminal(std::size_t p) const {
      return _terminal.at(p);
    }

    std::size_t index(std::vector<std::size_t> const& path) const {
      auto it = _index.find(path);
      if (it == _index.end()) {
        throw ArgumentError("not a path of this level");
      }
      return it->second;
    }

    /// Paths ending at v, in order.
    std::vector<std::size_t> block(std::size_t v) const {
      std::vector<std::size_t> out;
      for (std::size_t p = 0; p < _paths.size(); ++p) {
        if (_terminal[p] == v) {
          out.push_back(p);
        }
      }
      return out;
    }

    std::size_t vertex_count() const noexcept {
      return _vertices;
    }

   private:
    struct LabelEdge {
      std::size_t label;
      std::size_t src;
      std::size_t dst;
    };
    std::vector<LabelEdge>                             _label_edges;
    std::vector<std::vector<std::size_t>>              _paths;
    std::vector<std::size_t>                           _terminal;
    std::map<std::vector<std::size_t>, std::size_t>    _index;
    std::size_t                                        _vertices = 0;
  };

  /// |I(k)| = sum_j C(k,j)^2 j!.
  inline std::size_t symmetric_inverse_monoid_size(std::size_t k) {
    std::size_t total = 0;
    for (std::size_t j = 0; j <= k; ++j) {
      std::size_t c = 1;
      for (std::size_t t = 0; t < j; ++t) {
        c = c * (k - t) / (t + 1);
      }
      std::size_t f = 1;
      for (std::size_t t = 2; t <= j; ++t) {
        f *= t;
      }
      total += c * c * f;
    }
    return total;
  }

  namespace detail {
    // all partial injections of {0..k-1}, as image arrays
    inline std::vector<std::vector<Point>> partial_injections(std::size_t k) {
      std::vector<std::vector<Point>> out;
      std::vector<Point>              image(k, kUndefined);
      std::vector<bool>               used(k, false);
      std::function<void(std::size_t)> extend = [&](std::size_t x) {
        if (x == k) {
          out.push_back(image);
          return;
        }
        image[x] = kUndefined;
        extend(x + 1);
        for (std::size_t y = 0; y < k; ++y) {
          if (!used[y]) {
            used[y]  = true;
            image[x] = static_cast<Point>(y);
            extend(x + 1);
            used[y]  = false;
          }
        }
        image[x] = kUndefined;
      };
      extend(0);
      return out;
    }
  }  // namespace detail

  /// S_i: every partial bijection of the level-i paths that preserves the
  /// terminal vertex, i.e. the direct sum of I(k_i(v)) over v.
  inline InverseMonoid truncation_monoid(BratteliDiagram const& B,
                                         std::size_t            i,
                                         std::size_t            cap = kDefaultElementCap) {
    if (i == 0) {
      throw ArgumentError("truncation level must be at least 1");
    }
    PathSpace   P(B, i);
    std::size_t total = 1;
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t v = 0; v < P.vertex_count(); ++v) {
      blocks.push_back(P.block(v));
      auto k = symmetric_inverse_monoid_size(blocks.back().size());
      if (blocks.back().size() > 12 || total > cap / k) {
        throw SizeLimitError("truncation monoid at level " + std::to_string(i)
                                 + " is too large",
                             cap);
      }
      total *= k;
    }
    if (total > cap) {
      throw SizeLimitError("truncation monoid at level " + std::to_string(i)
                               + " has " + std::to_string(total) + " elements",
                           cap);
    }
    std::vector<std::vector<std::vector<Point>>> local;
    for (auto const& b : blocks) {
      local.push_back(detail::partial_injections(b.size()));
    }
    std::vector<PartialBijection> elements;
    elements.reserve(total);
    std::vector<Point>          image(P.size(), kUndefined);
    std::function<void(std::size_t)> combine = [&](std::size_t v) {
      if (v == blocks.size()) {
        elements.push_back(PartialBijection::from_images(image));
        return;
      }
      for (auto const& f : local[v]) {
        for (std::size_t x = 0; x < f.size(); ++x) {
          image[blocks[v][x]] =
              f[x] == kUndefined ? kUndefined : static_cast<Point>(blocks[v][f[x]]);
        }
        combine(v + 1);
      }
    };
    combine(0);
    return InverseMonoid::from_elements(P.size(), elements, cap);
  }

  /// R_i: zero, identity, and the maps sending one path to another with the
  /// same terminal vertex. Its atoms and germs are those of S_i, with
  /// sum_v k_i(v)^2 + 2 elements instead of prod_v |I(k_i(v))|.
  inline InverseMonoid matrix_unit_monoid(BratteliDiagram const& B,
                                          std::size_t            i,
                                          std::size_t            cap = kDefaultElementCap) {
    if (i == 0) {
      throw ArgumentError("truncation level must be at least 1");
    }
    PathSpace                     P(B, i);
    std::vector<PartialBijection> elements;
    for (std::size_t v = 0; v < P.vertex_count(); ++v) {
      auto b = P.block(v);
      for (auto q : b) {
        for (auto p : b) {
          elements.push_back(PartialBijection::from_pairs(
              P.size(), {{static_cast<Point>(p), static_cast<Point>(q)}}));
        }
      }
      if (elements.size() + 2 > cap) {
        throw SizeLimitError("matrix-unit monoid is too large", cap);
      }
    }
    elements.push_back(PartialBijection::identity(P.size()));
    return InverseMonoid::from_elements(P.size(), elements, cap);
  }

  /// The path index of each atom of a monoid of partial bijections on
  /// paths; atoms there are the identities on single paths.
  inline std::vector<std::size_t> atom_paths(InverseMonoid const& S,
                                             std::vector<ElementId> const& atom_ids) {
    std::vector<std::size_t> out;
    for (auto a : atom_ids) {
      auto dom = S.element(a).domain();
      if (dom.size() != 1) {
        throw StructureError("atom is not supported on a single path");
      }
      out.push_back(static_cast<std::size_t>(dom[0]));
    }
    return out;
  }

  /// phi -> sum over edges gamma out of the terminal vertex of the map
  /// alpha gamma -> phi(alpha) gamma.
  class Embedding {
   public:
    Embedding(BratteliDiagram const& B, std::size_t i) : _from(B, i), _to(B, i + 1) {
      _extensions.resize(_from.size());
      for (std::size_t q = 0; q < _to.size(); ++q) {
        auto prefix = _to.path(q);
        auto last   = prefix.back();
        prefix.pop_back();
        _extensions[_from.index(prefix)].emplace_back(last, q);
      }
    }

    PartialBijection operator()(PartialBijection const& phi) const {
      if (phi.ground() != _from.size()) {
        throw ArgumentError("embedding: element lives on the wrong level");
      }
      std::vector<Point> image(_to.size(), kUndefined);
      for (std::size_t p = 0; p < _from.size(); ++p) {
        if (!phi.defined(p)) {
          continue;
        }
        auto q = static_cast<std::size_t>(phi[p]);
        if (_from.terminal(p) != _from.terminal(q)) {
          throw ArgumentError("embedding: element does not preserve terminal vertices");
        }
        auto const& src = _extensions[p];
        auto const& dst = _extensions[q];
        for (std::size_t k = 0; k < src.size(); ++k) {
          image[src[k].second] = static_cast<Point>(dst[k].second);
        }
      }
      return PartialBijection::from_images(std::move(image));
    }

    PathSpace const& from() const noexcept {
      return _from;
    }

    PathSpace const& to() const noexcept {
      return _to;
    }

    /// Extensions alpha gamma of path p, as (label, path index) pairs.
    std::vector<std::pair<std::size_t, std::size_t>> const& extensions(std::size_t p) const {
      return _extensions.at(p);
    }

   private:
    PathSpace                                                     _from;
    PathSpace                                                     _to;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> _extensions;
  };

  /// The element map S_i -> S_{i+1} on ids.
  inline std::vector<ElementId> embed(BratteliDiagram const& B,
                                      std::size_t            i,
                                      InverseMonoid const&   Si,
                                      InverseMonoid const&   Sj) {
    Embedding              phi(B, i);
    std::vector<ElementId> out;
    for (ElementId s = 0; s < Si.size(); ++s) {
      auto id = Sj.find(phi(Si.element(s)));
      if (!id) {
        throw StructureError("embedded element is missing from the next level");
      }
      out.push_back(*id);
    }
    return out;
  }

  /// Mean polytope at level i, with weights listed per path.
  struct LevelMeans {
    std::size_t                        level = 0;
    std::vector<std::size_t>           dims;
    std::vector<std::vector<Rational>> vertices;  // per path
    std::size_t                        dimension = 0;
    bool                               used_full_truncation = false;
    bool                               verified_by_oracle   = false;
  };

  /// The monoid used to model level i: S_i itself when it fits under the
  /// cap, otherwise the matrix-unit monoid with the same groupoid.
  inline InverseMonoid level_monoid(BratteliDiagram const& B,
                                    std::size_t            i,
                                    bool&                  full,
                                    std::size_t            cap = kDefaultElementCap) {
    try {
      full = true;
      return truncation_monoid(B, i, cap);
    } catch (SizeLimitError const&) {
      full = false;
      return matrix_unit_monoid(B, i, cap);
    }
  }

  inline LevelMeans level_means(BratteliDiagram const& B,
                                std::size_t            i,
                                std::size_t            cap = kDefaultElementCap) {
    LevelMeans L;
    L.level = i;
    L.dims  = B.dims(i);
    auto S  = level_monoid(B, i, L.used_full_truncation, cap);
    auto G  = germ_groupoid(S);
    auto P  = mean_polytope(S, G);
    auto paths = atom_paths(S, P.constraints.atoms);
    for (auto const& v : P.vertices) {
      std::vector<Rational> w(paths.size());
      for (std::size_t a = 0; a < paths.size(); ++a) {
        w[paths[a]] = v.weights[a];
      }
      L.vertices.push_back(std::move(w));
    }
    std::sort(L.vertices.begin(), L.vertices.end());
    L.dimension          = P.dimension;
    L.verified_by_oracle = P.verified_by_oracle;
    return L;
  }

  /// Restriction of a level-(i+1) path weighting along the embedding:
  /// w_i(alpha) = sum over gamma of w_{i+1}(alpha gamma).
  inline std::vector<Rational> pullback(Embedding const& phi, std::vector<Rational> const& w) {
    if (w.size() != phi.to().size()) {
      throw ArgumentError("pullback: weights for the wrong level");
    }
    std::vector<Rational> out(phi.from().size(), Rational(0));
    for (std::size_t p = 0; p < out.size(); ++p) {
      for (auto [label, q] : phi.extensions(p)) {
        out[p] += w[q];
      }
    }
    return out;
  }

  /// Coherent sequences of level means up to a given depth, one weight
  /// w_i(v) per path ending at v.
  ///
  /// A mean at level i+1 restricts along the embedding to a mean at level
  /// i: the identity on a path alpha to v is sent to the identity on all
  /// extensions alpha gamma, so w_i(v) = sum over gamma in s^{-1}(v) of
  /// w_{i+1}(r(gamma)). With normalization sum_v k_i(v) w_i(v) = 1 at each
  /// level and w >= 0 this is a polytope over all the level weights.
  struct CoherentMeans {
    std::size_t                                     depth = 0;
    std::vector<std::vector<std::vector<Rational>>> vertices;  // [vertex][level-1][v]
    std::size_t                                     dimension = 0;
    bool                                            unique = false;
  };

  inline CoherentMeans coherent_means(BratteliDiagram const& B, std::size_t depth) {
    if (depth == 0 || depth > B.depth()) {
      throw ArgumentError("coherent_means: depth out of range");
    }
    B.validate();
    std::vector<std::size_t> offset{0};
    for (std::size_t i = 1; i <= depth; ++i) {
      offset.push_back(offset.back() + B.levels()[i]);
    }
    auto n = offset.back();
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational>              rhs;
    for (std::size_t i = 1; i <= depth; ++i) {
      std::vector<Rational> row(n, Rational(0));
      auto                  k = B.dims(i);
      for (std::size_t v = 0; v < B.levels()[i]; ++v) {
        row[offset[i - 1] + v] = Rational(k[v]);
      }
      rows.push_back(row);
      rhs.push_back(1);
    }
    for (std::size_t i = 1; i < depth; ++i) {
      for (std::size_t v = 0; v < B.levels()[i]; ++v) {
        std::vector<Rational> row(n, Rational(0));
        row[offset[i - 1] + v] = 1;
        for (auto const& e : B.edges()) {
          if (e.level == i && e.src == v) {
            row[offset[i] + e.dst] -= Rational(e.mult);
          }
        }
        rows.push_back(row);
        rhs.push_back(0);
      }
    }
    Matrix A(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        A(r, c) = rows[r][c];
      }
    }
    auto          points = enumerate_vertices(A, rhs);
    CoherentMeans C;
    C.depth     = depth;
    C.dimension = affine_dimension(points);
    C.unique    = points.size() == 1;
    for (auto const& p : points) {
      std::vector<std::vector<Rational>> levels;
      for (std::size_t i = 1; i <= depth; ++i) {
        levels.emplace_back(p.begin() + static_cast<std::ptrdiff_t>(offset[i - 1]),
                            p.begin() + static_cast<std::ptrdiff_t>(offset[i]));
      }
      C.vertices.push_back(std::move(levels));
    }
    return C;
  }

  struct BlockDimsReport {
    std::vector<std::size_t> orbit_sizes;  // sorted
    std::vector<std::size_t> dims;         // sorted
    std::size_t              span_dimension = 0;
    std::size_t              expected_span  = 0;

    bool ok() const noexcept {
      return orbit_sizes == dims && span_dimension == expected_span;
    }
  };

  /// Orbit sizes of the level-i groupoid against k_i, and the dimension of
  /// the span of the atom representation against sum_v k_i(v)^2.
  inline BlockDimsReport block_dims_check(BratteliDiagram const& B,
                                          std::size_t            i,
                                          std::size_t            cap = kDefaultElementCap) {
    BlockDimsReport r;
    r.dims = B.dims(i);
    bool full = false;
    auto S    = level_monoid(B, i, full, cap);
    auto G    = germ_groupoid(S);
    for (auto const& o : G.groupoid.orbits()) {
      r.orbit_sizes.push_back(o.size());
    }
    AtomRep pi(S, G);
    r.span_dimension = span_dimension(pi.representation());
    for (auto k : r.dims) {
      r.expected_span += k * k;
    }
    std::sort(r.orbit_sizes.begin(), r.orbit_sizes.end());
    std::sort(r.dims.begin(), r.dims.end());
    return r;
  }

}  // namespace boolinv

#endif  // BOOLINV_AF_HPP_
