#include "catch_amalgamated.hpp"

#include <fstream>
#include <sstream>

#include "helpers.hpp"

using namespace boolinv;

namespace {

  std::string read_data(std::string const& name) {
    std::ifstream in(std::string(BOOLINV_DATA_DIR) + "/" + name);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

}  // namespace

TEST_CASE("monoid specs", "[json]") {
  SECTION("data files") {
    auto I3 = build_monoid(monoid_spec_from_json(parse_json(read_data("I3.json"))));
    CHECK(I3.size() == 34);
    auto R3 = build_monoid(monoid_spec_from_json(parse_json(read_data("R3.json"))));
    CHECK(R3.size() == 11);
    auto Z2 = build_monoid(monoid_spec_from_json(parse_json(read_data("Z2.json"))));
    CHECK(Z2.size() == 3);
    auto zi = build_monoid(monoid_spec_from_json(parse_json(read_data("zero_identity.json"))));
    CHECK(zi.size() == 2);
    auto I5 = monoid_spec_from_json(parse_json(read_data("I5.json")));
    CHECK_THROWS_AS(build_monoid(I5, 100), SizeLimitError);
  }
  SECTION("roundtrip") {
    MonoidSpec spec{3, {testing::pb(3, {{0, 1}, {2, 2}}), testing::pb(3, {})}, true, false};
    auto       back = monoid_spec_from_json(parse_json(to_json(spec).dump()));
    CHECK(back.ground == 3);
    CHECK(back.generators == spec.generators);
    CHECK(back.adjoin_identity);
    CHECK_FALSE(back.boolean_closure);
    spec.boolean_closure = true;
    CHECK(monoid_spec_from_json(to_json(spec)).boolean_closure);
  }
  SECTION("errors") {
    CHECK_THROWS_AS(parse_json(read_data("malformed.json")), ParseError);
    CHECK_THROWS_AS(parse_json("{"), ParseError);
    CHECK_THROWS_AS(monoid_spec_from_json(parse_json("[]")), ParseError);
    CHECK_THROWS_AS(monoid_spec_from_json(parse_json(R"({"generators": []})")), ParseError);
    CHECK_THROWS_AS(monoid_spec_from_json(parse_json(R"({"ground": 0, "generators": []})")),
                    ParseError);
    CHECK_THROWS_AS(monoid_spec_from_json(parse_json(R"({"ground": 2, "generators": [[[0, 2]]]})")),
                    ParseError);
    CHECK_THROWS_AS(
        monoid_spec_from_json(parse_json(R"({"ground": 2, "generators": [[[0, 1], [1, 1]]]})")),
        ParseError);
    CHECK_THROWS_AS(monoid_spec_from_json(parse_json(R"({"ground": 2, "generators": "x"})")),
                    ParseError);
    CHECK_THROWS_AS(
        monoid_spec_from_json(parse_json(R"({"ground": 2, "generators": [], "adjoin_identity": 3})")),
        ParseError);
  }
}

TEST_CASE("groupoid export", "[json]") {
  std::vector<FiniteGroupoid> groupoids{
      FiniteGroupoid::full_relation(3),
      FiniteGroupoid::group_bundle(GroupTable::cyclic(3)),
      tight_groupoid(testing::two_plus_two()).groupoid,
      tight_groupoid(testing::z2_with_zero()).groupoid};
  for (auto const& G : groupoids) {
    auto j    = to_json(G);
    auto back = groupoid_from_json(parse_json(j.dump()));
    CHECK(back.unit_count() == G.unit_count());
    CHECK(back.arrow_count() == G.arrow_count());
    CHECK(find_isomorphism(G, back).has_value());
    CHECK(to_json(back) == j);
  }
  auto j = to_json(FiniteGroupoid::full_relation(2));
  auto drop_compose = j;
  drop_compose["compose"].erase(drop_compose["compose"].begin());
  CHECK_THROWS_AS(groupoid_from_json(drop_compose), ParseError);
  auto bad_unit = j;
  bad_unit["arrows"][0]["src"] = 7;
  CHECK_THROWS_AS(groupoid_from_json(bad_unit), ParseError);
  CHECK_THROWS_AS(groupoid_from_json(parse_json(R"({"units": 1, "arrows": 3, "compose": []})")),
                  ParseError);
  CHECK_THROWS_AS(groupoid_from_json(parse_json(R"({"units": 1, "arrows": [], "compose": []})")),
                  ParseError);
}

TEST_CASE("means and traces", "[json]") {
  auto S = testing::symmetric_inverse_monoid(3);
  auto G = tight_groupoid(S);
  auto P = mean_polytope(S, G);
  auto j = to_json(P);
  CHECK(j["dimension"] == 0);
  CHECK(j["vertices"][0] == json::array({"1/3", "1/3", "1/3"}));
  CHECK(j["atoms"].size() == 3);
  AtomRep pi(S, G);
  auto    t = to_json(pi, trace_from_mean(pi, P.vertices[0]));
  CHECK(t["orbits"][0]["size"] == 3);
  CHECK(t["orbits"][0]["weight"] == "1/1");
  CHECK(t["tau_of"][std::to_string(S.identity())] == "1/1");
  CHECK(t["tau_of"][std::to_string(S.zero())] == "0/1");
  CHECK(t["tau_of"].size() == S.size());
}

TEST_CASE("diagrams", "[json]") {
  auto B = diagram_from_json(parse_json(read_data("fibonacci.json")));
  CHECK(B.is_valid());
  CHECK(B.dims(6) == std::vector<std::size_t>{13, 8});
  auto two = diagram_from_json(parse_json(read_data("two_power.json")));
  CHECK(two.dims(6) == std::vector<std::size_t>{64});
  auto three = diagram_from_json(parse_json(read_data("three_edge.json")));
  CHECK(three.dims(1) == std::vector<std::size_t>{3});
  auto bad = diagram_from_json(parse_json(read_data("bad_diagram.json")));
  CHECK_FALSE(bad.is_valid());
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  auto back = diagram_from_json(to_json(B));
  CHECK(to_json(back) == to_json(B));
  CHECK_THROWS_AS(diagram_from_json(parse_json(R"({"levels": [1, 1], "edges": [[0, 0, 0]]})")),
                  ParseError);
  CHECK_THROWS_AS(diagram_from_json(parse_json(R"({"levels": [1, 1]})")), ParseError);
}

TEST_CASE("action specs", "[json]") {
  auto     b = automaton_from_json(parse_json(read_data("odometer_action.json")));
  Odometer a;
  CHECK(b.state_count() == 2);
  for (auto const& x : words(4, 2)) {
    CHECK(act(b, b.state(1), x) == act(a, 1, x));
  }
  auto by_index = automaton_from_json(parse_json(
      R"({"alphabet": 2, "states": ["e", "z"],
          "act": [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]],
          "restrict": [[0, 0, 0], [0, 1, 0], [1, 0, 0], [1, 1, 1]]})"));
  for (auto const& x : words(4, 2)) {
    CHECK(act(by_index, by_index.state(1), x) == act(a, 1, x));
  }
  auto missing = parse_json(read_data("odometer_action.json"));
  missing["act"].erase(missing["act"].begin());
  CHECK_THROWS_AS(automaton_from_json(missing), ParseError);
  auto unknown = parse_json(read_data("odometer_action.json"));
  unknown["restrict"][0][2] = "q";
  CHECK_THROWS_AS(automaton_from_json(unknown), ParseError);
  auto not_perm = parse_json(read_data("odometer_action.json"));
  not_perm["act"][3][2] = 1;
  CHECK_THROWS_AS(automaton_from_json(not_perm), ParseError);
  auto bad_letter = parse_json(read_data("odometer_action.json"));
  bad_letter["act"][0][1] = 5;
  CHECK_THROWS_AS(automaton_from_json(bad_letter), ParseError);
  CHECK_THROWS_AS(automaton_from_json(parse_json(R"({"alphabet": 0, "states": ["e"]})")),
                  ParseError);
}

TEST_CASE("FNV-1a", "[json]") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}
