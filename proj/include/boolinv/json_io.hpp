#ifndef BOOLINV_JSON_IO_HPP_
#define BOOLINV_JSON_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "af.hpp"
#include "cstar.hpp"
#include "error.hpp"
#include "germs.hpp"
#include "inverse_monoid.hpp"
#include "means.hpp"
#include "partial_bijection.hpp"
#include "rational.hpp"
#include "selfsim.hpp"

namespace boolinv {

  using json = nlohmann::ordered_json;

  struct MonoidSpec {
    std::size_t                   ground = 0;
    std::vector<PartialBijection> generators;
    bool                          adjoin_identity = false;
    bool                          boolean_closure = false;
  };

  namespace detail {
    template <typename T>
    T get_field(json const& j, char const* key, char const* what) {
      if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string(what) + ": missing \"" + key + "\"");
      }
      try {
        return j.at(key).get<T>();
      } catch (nlohmann::json::exception const& e) {
        throw ParseError(std::string(what) + ": bad \"" + key + "\": " + e.what());
      }
    }

    template <typename T>
    T get_optional(json const& j, char const* key, T fallback, char const* what) {
      if (!j.contains(key)) {
        return fallback;
      }
      return get_field<T>(j, key, what);
    }
  }  // namespace detail

  inline json parse_json(std::string const& text) {
    try {
      return json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what());
    }
  }

  /// { "ground": n, "generators": [[[src, dst], ...], ...],
  ///   "adjoin_identity": bool, "boolean_closure": bool }
  inline MonoidSpec monoid_spec_from_json(json const& j) {
    constexpr char const* what = "monoid spec";
    MonoidSpec spec;
    auto ground = detail::get_field<std::int64_t>(j, "ground", what);
    if (ground <= 0) {
      throw ParseError("monoid spec: ground must be positive");
    }
    spec.ground = static_cast<std::size_t>(ground);
    auto gens   = detail::get_field<std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>>>(
        j, "generators", what);
    for (auto const& g : gens) {
      std::vector<std::pair<Point, Point>> pairs;
      for (auto [x, y] : g) {
        if (x < 0 || y < 0 || x >= ground || y >= ground) {
          throw ParseError("monoid spec: point outside the ground set");
        }
        pairs.emplace_back(static_cast<Point>(x), static_cast<Point>(y));
      }
      try {
        spec.generators.push_back(PartialBijection::from_pairs(spec.ground, pairs));
      } catch (ArgumentError const& e) {
        throw ParseError(std::string("monoid spec: ") + e.what());
      }
    }
    spec.adjoin_identity = detail::get_optional<bool>(j, "adjoin_identity", false, what);
    spec.boolean_closure = detail::get_optional<bool>(j, "boolean_closure", false, what);
    return spec;
  }

  inline json to_json(MonoidSpec const& spec) {
    json gens = json::array();
    for (auto const& g : spec.generators) {
      json pairs = json::array();
      for (auto [x, y] : g.graph()) {
        pairs.push_back({x, y});
      }
      gens.push_back(pairs);
    }
    json j{{"ground", spec.ground}, {"generators", gens}, {"adjoin_identity", spec.adjoin_identity}};
    if (spec.boolean_closure) {
      j["boolean_closure"] = true;
    }
    return j;
  }

  inline InverseMonoid build_monoid(MonoidSpec const& spec, std::size_t cap = kDefaultElementCap) {
    if (spec.boolean_closure) {
      return boolean_closure(spec.generators, spec.ground, cap);
    }
    return closure(spec.generators, spec.ground, spec.adjoin_identity, cap);
  }

  /// { "units": n, "arrows": [{"src": i, "rng": j}, ...], "compose": [[a, b, c], ...] }
  /// where [a, b, c] means a after b is c.
  inline json to_json(FiniteGroupoid const& G) {
    json arrows = json::array();
    for (ArrowId a = 0; a < G.arrow_count(); ++a) {
      arrows.push_back({{"src", G.src(a)}, {"rng", G.rng(a)}});
    }
    json compose = json::array();
    for (ArrowId b = 0; b < G.arrow_count(); ++b) {
      for (ArrowId a : G.arrows_from(G.rng(b))) {
        compose.push_back({a, b, G.compose(a, b)});
      }
    }
    return {{"units", G.unit_count()}, {"arrows", arrows}, {"compose", compose}};
  }

  inline FiniteGroupoid groupoid_from_json(json const& j) {
    constexpr char const* what = "groupoid";
    auto units  = detail::get_field<std::size_t>(j, "units", what);
    auto arrows = detail::get_field<json>(j, "arrows", what);
    if (!arrows.is_array()) {
      throw ParseError("groupoid: \"arrows\" must be an array");
    }
    std::vector<UnitId> src, rng;
    for (auto const& a : arrows) {
      src.push_back(detail::get_field<UnitId>(a, "src", what));
      rng.push_back(detail::get_field<UnitId>(a, "rng", what));
      if (src.back() >= units || rng.back() >= units) {
        throw ParseError("groupoid: arrow refers to a missing unit");
      }
    }
    std::map<std::pair<ArrowId, ArrowId>, ArrowId> table;
    for (auto const& row : detail::get_field<std::vector<std::vector<ArrowId>>>(j, "compose", what)) {
      if (row.size() != 3) {
        throw ParseError("groupoid: compose rows have three entries");
      }
      table[{row[0], row[1]}] = row[2];
    }
    std::vector<ArrowId> unit_arrow(units, static_cast<ArrowId>(-1));
    for (ArrowId a = 0; a < src.size(); ++a) {
      auto it = table.find({a, a});
      if (src[a] == rng[a] && it != table.end() && it->second == a) {
        unit_arrow[src[a]] = a;
      }
    }
    for (auto u : unit_arrow) {
      if (u == static_cast<ArrowId>(-1)) {
        throw ParseError("groupoid: a unit has no identity arrow");
      }
    }
    std::vector<ArrowId> inverse(src.size(), static_cast<ArrowId>(-1));
    for (ArrowId a = 0; a < src.size(); ++a) {
      for (ArrowId b = 0; b < src.size(); ++b) {
        auto it = table.find({b, a});
        if (src[b] == rng[a] && rng[b] == src[a] && it != table.end()
            && it->second == unit_arrow[src[a]]) {
          inverse[a] = b;
          break;
        }
      }
      if (inverse[a] == static_cast<ArrowId>(-1)) {
        throw ParseError("groupoid: an arrow has no inverse");
      }
    }
    auto compose = [&](ArrowId b, ArrowId a) {
      auto it = table.find({b, a});
      if (it == table.end()) {
        throw ParseError("groupoid: compose table is incomplete");
      }
      return it->second;
    };
    try {
      return FiniteGroupoid::build(units, src, rng, unit_arrow, inverse, compose, true);
    } catch (Error const& e) {
      throw ParseError(std::string("groupoid: ") + e.what());
    }
  }

  /// { "atoms": [...], "vertices": [["p/q", ...], ...], "dimension": d }
  inline json to_json(MeanPolytope const& P) {
    json vertices = json::array();
    for (auto const& v : P.vertices) {
      vertices.push_back(to_strings(v.weights));
    }
    return {{"atoms", P.constraints.atoms}, {"vertices", vertices}, {"dimension", P.dimension}};
  }

  /// { "orbits": [{"size": k, "weight": "p/q"}], "tau_of": {id: "p/q"} }
  inline json to_json(AtomRep const& pi, TraceFunctional const& tau) {
    json orbits = json::array();
    for (std::size_t o = 0; o < tau.orbit_sizes.size(); ++o) {
      orbits.push_back({{"size", tau.orbit_sizes[o]}, {"weight", to_string(tau.weights[o])}});
    }
    json tau_of = json::object();
    for (ElementId s = 0; s < pi.monoid().size(); ++s) {
      tau_of[std::to_string(s)] = to_string(trace_of_element(pi, tau, s));
    }
    return {{"orbits", orbits}, {"tau_of", tau_of}};
  }

  /// { "levels": [1, n1, ...], "edges": [[level, src, dst, mult], ...] }
  inline BratteliDiagram diagram_from_json(json const& j) {
    constexpr char const* what = "diagram";
    auto levels = detail::get_field<std::vector<std::size_t>>(j, "levels", what);
    std::vector<BratteliDiagram::Edge> edges;
    for (auto const& e : detail::get_field<std::vector<std::vector<std::size_t>>>(j, "edges", what)) {
      if (e.size() != 4) {
        throw ParseError("diagram: edges are [level, src, dst, mult]");
      }
      edges.push_back({e[0], e[1], e[2], e[3]});
    }
    return {levels, edges};
  }

  inline json to_json(BratteliDiagram const& B) {
    json edges = json::array();
    for (auto const& e : B.edges()) {
      edges.push_back({e.level, e.src, e.dst, e.mult});
    }
    return {{"levels", B.levels()}, {"edges", edges}};
  }

  /// { "alphabet": k, "states": [names], "act": [[state, letter, letter], ...],
  ///   "restrict": [[state, letter, state], ...] }; states by index or name.
  inline AutomatonGroup automaton_from_json(json const& j) {
    constexpr char const* what = "action spec";
    auto k     = detail::get_field<std::size_t>(j, "alphabet", what);
    auto names = detail::get_field<std::vector<std::string>>(j, "states", what);
    if (k == 0 || names.empty()) {
      throw ParseError("action spec: empty alphabet or state list");
    }
    auto state = [&](json const& v) -> std::size_t {
      if (v.is_number_unsigned() && v.get<std::size_t>() < names.size()) {
        return v.get<std::size_t>();
      }
      if (v.is_string()) {
        for (std::size_t s = 0; s < names.size(); ++s) {
          if (names[s] == v.get<std::string>()) {
            return s;
          }
        }
      }
      throw ParseError("action spec: unknown state " + v.dump());
    };
    auto letter = [&](json const& v) -> Letter {
      if (!v.is_number_unsigned() || v.get<std::size_t>() >= k) {
        throw ParseError("action spec: bad letter " + v.dump());
      }
      return v.get<Letter>();
    };
    constexpr std::size_t missing = static_cast<std::size_t>(-1);
    std::vector<std::vector<std::size_t>> act(names.size(), std::vector<std::size_t>(k, missing));
    std::vector<std::vector<std::size_t>> res(names.size(), std::vector<std::size_t>(k, missing));
    auto fill = [&](char const* key, auto& table, auto&& target) {
      auto rows = detail::get_field<json>(j, key, what);
      if (!rows.is_array()) {
        throw ParseError(std::string("action spec: \"") + key + "\" must be an array");
      }
      for (auto const& row : rows) {
        if (!row.is_array() || row.size() != 3) {
          throw ParseError(std::string("action spec: \"") + key + "\" rows have three entries");
        }
        table[state(row[0])][letter(row[1])] = target(row[2]);
      }
    };
    fill("act", act, [&](json const& v) -> std::size_t { return letter(v); });
    fill("restrict", res, state);
    std::vector<std::vector<Letter>> act_letters(names.size());
    for (std::size_t s = 0; s < names.size(); ++s) {
      for (Letter x = 0; x < k; ++x) {
        if (act[s][x] == missing || res[s][x] == missing) {
          throw ParseError("action spec: state " + names[s] + " is missing a rule");
        }
        act_letters[s].push_back(static_cast<Letter>(act[s][x]));
      }
    }
    try {
      return AutomatonGroup(k, names, act_letters, res);
    } catch (ArgumentError const& e) {
      throw ParseError(std::string("action spec: ") + e.what());
    }
  }

  /// 64-bit FNV-1a, as 16 hex digits.
  inline std::string fnv1a_hex(std::string const& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string           out(16, '0');
    for (int i = 15; i >= 0; --i) {
      out[i] = digits[h & 0xf];
      h >>= 4;
    }
    return out;
  }

}  // namespace boolinv

#endif  // BOOLINV_JSON_IO_HPP_
