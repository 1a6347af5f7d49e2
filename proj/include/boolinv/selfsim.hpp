#ifndef BOOLINV_SELFSIM_HPP_
#define BOOLINV_SELFSIM_HPP_

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "germs.hpp"
#include "inverse_monoid.hpp"
#include "means.hpp"
#include "partial_bijection.hpp"
#include "rational.hpp"

namespace boolinv {

  using Letter = std::uint32_t;
  using Word   = std::vector<Letter>;

  /// A group acting self-similarly on words over {0, ..., k-1}, given by
  /// its letter action and letter restrictions.
  template <typename A>
  concept SelfSimilarGroup = requires(A const&                        a,
                                      typename A::element_type const& g,
                                      Letter                          x) {
    { a.alphabet_size() } -> std::convertible_to<std::size_t>;
    { a.identity() } -> std::same_as<typename A::element_type>;
    { a.multiply(g, g) } -> std::same_as<typename A::element_type>;
    { a.inverse(g) } -> std::same_as<typename A::element_type>;
    { a.act(g, x) } -> std::convertible_to<Letter>;
    { a.restrict(g, x) } -> std::same_as<typename A::element_type>;
    { a.to_string(g) } -> std::convertible_to<std::string>;
  } && std::equality_comparable<typename A::element_type>;

  /// The 2-odometer: z.0 = 1 with z|0 = e, z.1 = 0 with z|1 = z. The
  /// element z^k is stored as k; on letters it adds k with carry.
  class Odometer {
   public:
    using element_type = std::int64_t;

    std::size_t alphabet_size() const noexcept {
      return 2;
    }

    element_type identity() const noexcept {
      return 0;
    }

    element_type generator() const noexcept {
      return 1;
    }

    element_type multiply(element_type g, element_type h) const noexcept {
      return g + h;
    }

    element_type inverse(element_type g) const noexcept {
      return -g;
    }

    Letter act(element_type g, Letter x) const {
      check(x);
      return static_cast<Letter>(floor_mod(static_cast<element_type>(x) + g));
    }

    element_type restrict(element_type g, Letter x) const {
      check(x);
      return floor_div(static_cast<element_type>(x) + g);
    }

    std::string to_string(element_type g) const {
      if (g == 0) {
        return "e";
      }
      return g == 1 ? "z" : "z^" + std::to_string(g);
    }

   private:
    static void check(Letter x) {
      if (x > 1) {
        throw ArgumentError("odometer: letter " + std::to_string(x) + " is not 0 or 1");
      }
    }

    static element_type floor_div(element_type v) noexcept {
      return v >= 0 ? v / 2 : -((-v + 1) / 2);
    }

    static element_type floor_mod(element_type v) noexcept {
      return v - 2 * floor_div(v);
    }
  };

  /// A finite-state self-similar group. States act on letters by
  /// permutations; an element is a freely reduced word in the states and
  /// their inverses, +(s+1) for s and -(s+1) for s^-1, applied right to
  /// left.
  class AutomatonGroup {
   public:
    using element_type = std::vector<std::int32_t>;

    AutomatonGroup(std::size_t                           alphabet,
                   std::vector<std::string>              names,
                   std::vector<std::vector<Letter>>      act,
                   std::vector<std::vector<std::size_t>> restrict)
        : _alphabet(alphabet),
          _names(std::move(names)),
          _act(std::move(act)),
          _restrict(std::move(restrict)) {
      if (_alphabet == 0) {
        throw ArgumentError("automaton: empty alphabet");
      }
      auto n = _names.size();
      if (n == 0 || _act.size() != n || _restrict.size() != n) {
        throw ArgumentError("automaton: tables do not match the state list");
      }
      _inverse_act.assign(n, std::vector<Letter>(_alphabet, 0));
      for (std::size_t s = 0; s < n; ++s) {
        if (_act[s].size() != _alphabet || _restrict[s].size() != _alphabet) {
          throw ArgumentError("automaton: state " + _names[s] + " is not defined on every letter");
        }
        std::vector<bool> hit(_alphabet, false);
        for (Letter x = 0; x < _alphabet; ++x) {
          auto y = _act[s][x];
          if (y >= _alphabet || hit[y]) {
            throw ArgumentError("automaton: state " + _names[s]
                                + " does not permute the alphabet");
          }
          hit[y]               = true;
          _inverse_act[s][y]   = x;
          if (_restrict[s][x] >= n) {
            throw ArgumentError("automaton: restriction of " + _names[s]
                                + " is not a state");
          }
        }
      }
    }

    std::size_t alphabet_size() const noexcept {
      return _alphabet;
    }

    std::size_t state_count() const noexcept {
      return _names.size();
    }

    std::vector<std::string> const& names() const noexcept {
      return _names;
    }

    element_type identity() const {
      return {};
    }

    element_type state(std::size_t s) const {
      if (s >= _names.size()) {
        throw ArgumentError("automaton: no state " + std::to_string(s));
      }
      return {static_cast<std::int32_t>(s + 1)};
    }

    element_type multiply(element_type const& g, element_type const& h) const {
      element_type out = g;
      for (auto t : h) {
        if (!out.empty() && out.back() == -t) {
          out.pop_back();
        } else {
          out.push_back(t);
        }
      }
      return out;
    }

    element_type inverse(element_type const& g) const {
      element_type out(g.rbegin(), g.rend());
      for (auto& t : out) {
        t = -t;
      }
      return out;
    }

    Letter act(element_type const& g, Letter x) const {
      check(x);
      for (auto it = g.rbegin(); it != g.rend(); ++it) {
        x = act_letter(*it, x);
      }
      return x;
    }

    element_type restrict(element_type const& g, Letter x) const {
      check(x);
      element_type pieces(g.size());
      for (std::size_t k = g.size(); k-- > 0;) {
        auto t = g[k];
        if (t > 0) {
          pieces[k] = static_cast<std::int32_t>(_restrict[t - 1][x] + 1);
        } else {
          // (s^-1)|_y = (s|_x)^-1 where s.x = y
          auto pre  = _inverse_act[-t - 1][x];
          pieces[k] = -static_cast<std::int32_t>(_restrict[-t - 1][pre] + 1);
        }
        x = act_letter(t, x);
      }
      return multiply({}, pieces);
    }

    std::string to_string(element_type const& g) const {
      if (g.empty()) {
        return "e";
      }
      std::string out;
      for (auto t : g) {
        if (!out.empty()) {
          out += ' ';
        }
        out += _names[static_cast<std::size_t>(t > 0 ? t : -t) - 1];
        if (t < 0) {
          out += "^-1";
        }
      }
      return out;
    }

   private:
    Letter act_letter(std::int32_t t, Letter x) const {
      return t > 0 ? _act[t - 1][x] : _inverse_act[-t - 1][x];
    }

    void check(Letter x) const {
      if (x >= _alphabet) {
        throw ArgumentError("automaton: letter " + std::to_string(x) + " outside the alphabet");
      }
    }

    std::size_t                           _alphabet;
    std::vector<std::string>              _names;
    std::vector<std::vector<Letter>>      _act;
    std::vector<std::vector<std::size_t>> _restrict;
    std::vector<std::vector<Letter>>      _inverse_act;
  };

  /// g(x alpha) = (g.x)(g|_x . alpha).
  template <SelfSimilarGroup A>
  Word act(A const& a, typename A::element_type const& g, Word const& w) {
    Word out;
    out.reserve(w.size());
    auto h = g;
    for (auto x : w) {
      out.push_back(a.act(h, x));
      h = a.restrict(h, x);
    }
    return out;
  }

  /// g|_{x alpha} = (g|_x)|_alpha.
  template <SelfSimilarGroup A>
  typename A::element_type restrict(A const& a, typename A::element_type const& g, Word const& w) {
    auto h = g;
    for (auto x : w) {
      h = a.restrict(h, x);
    }
    return h;
  }

  /// sum_i w_i k^i, so the first letter is the least significant digit.
  inline std::size_t word_index(Word const& w, std::size_t k) {
    std::size_t index = 0;
    std::size_t place = 1;
    for (auto x : w) {
      if (x >= k) {
        throw ArgumentError("letter " + std::to_string(x) + " outside the alphabet");
      }
      index += x * place;
      place *= k;
    }
    return index;
  }

  inline Word word_of(std::size_t index, std::size_t length, std::size_t k) {
    Word w(length);
    for (auto& x : w) {
      x = static_cast<Letter>(index % k);
      index /= k;
    }
    return w;
  }

  /// All words of a given length, in index order.
  inline std::vector<Word> words(std::size_t length, std::size_t k) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < length; ++i) {
      count *= k;
    }
    std::vector<Word> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(word_of(i, length, k));
    }
    return out;
  }

  inline std::string word_to_string(Word const& w) {
    if (w.empty()) {
      return "ε";
    }
    std::string out;
    for (auto x : w) {
      out += std::to_string(x);
    }
    return out;
  }

  /// (alpha, g, beta), or the zero.
  template <SelfSimilarGroup A>
  struct Triple {
    using element_type = typename A::element_type;

    bool         zero = false;
    Word         alpha;
    element_type g{};
    Word         beta;

    static Triple make_zero() {
      Triple t;
      t.zero = true;
      return t;
    }

    friend bool operator==(Triple const& s, Triple const& t) {
      if (s.zero || t.zero) {
        return s.zero == t.zero;
      }
      return s.alpha == t.alpha && s.g == t.g && s.beta == t.beta;
    }
  };

  namespace detail {
    inline bool is_prefix(Word const& p, Word const& w) {
      return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
    }

    inline Word concat(Word a, Word const& b) {
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
  }  // namespace detail

  template <SelfSimilarGroup A>
  Triple<A> triple_star(A const& a, Triple<A> const& t) {
    if (t.zero) {
      return t;
    }
    return {false, t.beta, a.inverse(t.g), t.alpha};
  }

  /// (alpha, g, beta)(gamma, h, nu):
  ///   gamma = beta gamma'  -> (alpha (g.gamma'), g|_gamma' h, nu)
  ///   beta = gamma beta'   -> (alpha, g (h^-1|_beta')^-1, nu (h^-1.beta'))
  ///   otherwise 0.
  template <SelfSimilarGroup A>
  Triple<A> triple_product(A const& a, Triple<A> const& s, Triple<A> const& t) {
    if (s.zero || t.zero) {
      return Triple<A>::make_zero();
    }
    if (detail::is_prefix(s.beta, t.alpha)) {
      Word rest(t.alpha.begin() + static_cast<std::ptrdiff_t>(s.beta.size()), t.alpha.end());
      return {false,
              detail::concat(s.alpha, act(a, s.g, rest)),
              a.multiply(restrict(a, s.g, rest), t.g),
              t.beta};
    }
    if (detail::is_prefix(t.alpha, s.beta)) {
      Word rest(s.beta.begin() + static_cast<std::ptrdiff_t>(t.alpha.size()), s.beta.end());
      auto hinv = a.inverse(t.g);
      return {false,
              s.alpha,
              a.multiply(s.g, a.inverse(restrict(a, hinv, rest))),
              detail::concat(t.beta, act(a, hinv, rest))};
    }
    return Triple<A>::make_zero();
  }

  template <SelfSimilarGroup A>
  std::string to_string(A const& a, Triple<A> const& t) {
    if (t.zero) {
      return "0";
    }
    return "(" + word_to_string(t.alpha) + ", " + a.to_string(t.g) + ", "
           + word_to_string(t.beta) + ")";
  }

  /// The partial bijection beta w -> alpha (g.w) of X^n, words indexed by
  /// word_index. Needs |alpha| = |beta| <= n.
  template <SelfSimilarGroup A>
  PartialBijection realize(A const& a, Triple<A> const& t, std::size_t n) {
    auto        k = a.alphabet_size();
    std::size_t ground = 1;
    for (std::size_t i = 0; i < n; ++i) {
      ground *= k;
    }
    if (t.zero) {
      return PartialBijection(ground);
    }
    if (t.alpha.size() != t.beta.size()) {
      throw ArgumentError("realize: " + to_string(a, t) + " has |alpha| != |beta|");
    }
    if (t.alpha.size() > n) {
      throw ArgumentError("realize: " + to_string(a, t) + " is longer than the depth");
    }
    std::vector<Point> image(ground, kUndefined);
    for (auto const& w : words(n - t.beta.size(), k)) {
      auto src = word_index(detail::concat(t.beta, w), k);
      auto dst = word_index(detail::concat(t.alpha, act(a, t.g, w)), k);
      image[src] = static_cast<Point>(dst);
    }
    return PartialBijection::from_images(std::move(image));
  }

  /// The monoid generated by realized triples on X^n, with identity.
  template <SelfSimilarGroup A>
  InverseMonoid depth_truncation(A const&                      a,
                                 std::size_t                   n,
                                 std::vector<Triple<A>> const& generators,
                                 std::size_t                   cap = kDefaultElementCap) {
    if (n == 0) {
      throw ArgumentError("depth_truncation: depth must be at least 1");
    }
    std::vector<PartialBijection> realized;
    for (auto const& t : generators) {
      realized.push_back(realize(a, t, n));
    }
    std::size_t ground = 1;
    for (std::size_t i = 0; i < n; ++i) {
      ground *= a.alphabet_size();
    }
    return closure(realized, ground, true, cap);
  }

  /// (epsilon, z, epsilon) and the cylinder idempotents (0^k, e, 0^k) for
  /// 1 <= k <= n. Every other cylinder idempotent is a conjugate of these.
  inline std::vector<Triple<Odometer>> odometer_generators(std::size_t n) {
    Odometer                      a;
    std::vector<Triple<Odometer>> out{{false, {}, a.generator(), {}}};
    for (std::size_t k = 1; k <= n; ++k) {
      Word zeros(k, 0);
      out.push_back({false, zeros, a.identity(), zeros});
    }
    return out;
  }

  /// Every cylinder idempotent (alpha, e, alpha) with 1 <= |alpha| <= n.
  template <SelfSimilarGroup A>
  std::vector<Triple<A>> cylinder_idempotents(A const& a, std::size_t n) {
    std::vector<Triple<A>> out;
    for (std::size_t len = 1; len <= n; ++len) {
      for (auto const& w : words(len, a.alphabet_size())) {
        out.push_back({false, w, a.identity(), w});
      }
    }
    return out;
  }

  /// Default cap for odometer truncations, which have about 2^(2n+1)
  /// elements at depth n.
  inline constexpr std::size_t kOdometerElementCap = std::size_t(1) << 18;

  struct UniqueMeanReport {
    std::size_t           depth         = 0;
    std::size_t           size          = 0;
    std::size_t           atom_count    = 0;
    std::size_t           orbit_count   = 0;
    std::size_t           dimension     = 0;
    bool                  unique        = false;
    std::vector<Rational> word_weights;  // the mean on single words, if unique
    bool                  cylinders_ok  = false;

    bool ok() const noexcept {
      return unique && cylinders_ok;
    }
  };

  /// Truncates at depth n, reads the invariant means off the atom orbits
  /// of the germ groupoid and, when there is exactly one, checks
  /// mu(C(alpha)) = |X|^-|alpha| on every cylinder idempotent in S.
  template <SelfSimilarGroup A>
  UniqueMeanReport unique_mean_check(A const&                      a,
                                     std::size_t                   n,
                                     std::vector<Triple<A>> const& generators,
                                     std::size_t                   cap = kOdometerElementCap) {
    UniqueMeanReport r;
    r.depth         = n;
    auto S          = depth_truncation(a, n, generators, cap);
    r.size          = S.size();
    auto G          = germ_groupoid(S);
    r.atom_count    = G.units.size();
    r.orbit_count   = G.groupoid.orbits().size();
    r.dimension     = r.orbit_count == 0 ? 0 : r.orbit_count - 1;
    r.unique        = r.orbit_count == 1;
    if (!r.unique) {
      return r;
    }
    auto          measures = invariant_measures(G.groupoid);
    InvariantMean mu{G.units, measures[0].weights};
    auto          k = a.alphabet_size();
    std::size_t   ground = S.ground();
    r.word_weights.assign(ground, Rational(0));
    for (std::size_t x = 0; x < G.units.size(); ++x) {
      auto dom = S.element(G.units[x]).domain();
      for (auto p : dom) {
        r.word_weights[static_cast<std::size_t>(p)] =
            mu.weights[x] / static_cast<long>(dom.size());
      }
    }
    r.cylinders_ok = true;
    Rational expected = 1;
    for (std::size_t len = 1; len <= n; ++len) {
      expected /= static_cast<long>(k);
      for (auto const& w : words(len, k)) {
        auto id = S.find(realize(a, Triple<A>{false, w, a.identity(), w}, n));
        if (!id) {
          r.cylinders_ok = false;
          continue;
        }
        if (evaluate_mean(S, mu, *id) != expected) {
          r.cylinders_ok = false;
        }
      }
    }
    return r;
  }

  inline UniqueMeanReport odometer_unique_mean(std::size_t n, std::size_t cap = kOdometerElementCap) {
    return unique_mean_check(Odometer{}, n, odometer_generators(n), cap);
  }

}  // namespace boolinv

#endif  // BOOLINV_SELFSIM_HPP_
