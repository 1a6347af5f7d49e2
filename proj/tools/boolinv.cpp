// Command-line front end: reads JSON specs, runs a pipeline, writes a report.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "boolinv.hpp"

namespace {

  using boolinv::json;

  enum ExitCode : int { kOk = 0, kFailure = 1, kParse = 2, kCap = 3, kUnsupported = 4 };

  struct RunConfig {
    std::string                command;
    std::string                input;
    std::string                output;
    std::uint64_t              seed   = 0;
    std::optional<std::size_t> cap;
    std::string                format = "json";
    std::size_t                depth  = 3;
    std::size_t                trials = 100;
  };

  std::string read_input(RunConfig const& cfg) {
    if (cfg.input.empty()) {
      throw boolinv::ParseError("--input is required for " + cfg.command);
    }
    std::ifstream in(cfg.input, std::ios::binary);
    if (!in) {
      throw boolinv::ParseError("cannot read " + cfg.input);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  std::size_t cap_or(RunConfig const& cfg, std::size_t fallback) {
    return cfg.cap.value_or(fallback);
  }

  json flags_of(boolinv::InverseMonoid const& S) {
    boolinv::NaturalOrder    order(S);
    boolinv::BooleanSkeleton skeleton(S);
    return {{"inverse", boolinv::verify_inverse_axioms(S)},
            {"distributive", boolinv::is_distributive(order)},
            {"boolean", boolinv::is_boolean_inverse_monoid(S, order, skeleton)},
            {"condition_H", boolinv::condition_H(order).holds()}};
  }

  boolinv::InverseMonoid load_monoid(RunConfig const& cfg, std::string const& text) {
    auto spec = boolinv::monoid_spec_from_json(boolinv::parse_json(text));
    return boolinv::build_monoid(spec, cap_or(cfg, boolinv::kDefaultElementCap));
  }

  boolinv::GermGroupoid require_tight(boolinv::InverseMonoid const& S) {
    if (!boolinv::is_boolean_inverse_monoid(S)) {
      throw boolinv::UnsupportedStructureError("not a Boolean inverse monoid", std::nullopt);
    }
    return boolinv::tight_groupoid(S);
  }

  json cmd_check(RunConfig const& cfg, std::string const& text) {
    auto S = load_monoid(cfg, text);
    return {{"size", S.size()},
            {"idempotents", S.idempotents().size()},
            {"atoms", boolinv::atoms(S).size()},
            {"flags", flags_of(S)}};
  }

  json cmd_groupoid(RunConfig const& cfg, std::string const& text) {
    auto S = load_monoid(cfg, text);
    auto G = require_tight(S);
    auto p = boolinv::algebraic_predicates(S);
    json orbits = json::array();
    for (auto const& o : G.groupoid.orbits()) {
      orbits.push_back(o);
    }
    json witness = nullptr;
    if (auto w = G.groupoid.isotropy_witness()) {
      for (auto a : G.groupoid.isotropy_arrows(*w)) {
        if (a != G.groupoid.unit_arrow(*w)) {
          witness = {{"element", G.arrows[a]}, {"value", S.to_string(G.arrows[a])}};
          break;
        }
      }
    }
    return {{"units", G.groupoid.unit_count()},
            {"arrows", G.groupoid.arrow_count()},
            {"unit_elements", G.units},
            {"orbits", orbits},
            {"predicates",
             {{"principal", G.groupoid.is_principal()},
              {"minimal", G.groupoid.is_minimal()},
              {"hausdorff", G.groupoid.is_hausdorff()},
              {"algebraic_hausdorff", p.hausdorff},
              {"essentially_principal", p.essentially_principal},
              {"algebraic_minimal", p.minimal}}},
            {"isotropy_witness", witness},
            {"groupoid", boolinv::to_json(G.groupoid)}};
  }

  json cmd_means(RunConfig const& cfg, std::string const& text) {
    auto S = load_monoid(cfg, text);
    auto G = require_tight(S);
    auto P = boolinv::mean_polytope(S, G);
    auto j = boolinv::to_json(P);
    j["vertex_count"]       = P.vertices.size();
    j["verified_by_oracle"] = P.verified_by_oracle;
    return j;
  }

  json cmd_traces(RunConfig const& cfg, std::string const& text) {
    auto S = load_monoid(cfg, text);
    auto G = require_tight(S);
    boolinv::require_principal(G);
    auto                 P = boolinv::mean_polytope(S, G);
    boolinv::AtomRep     pi(S, G);
    boolinv::BooleanSkeleton skeleton(S);
    auto                 diag = boolinv::diagonal_table(skeleton);
    json                 traces = json::array();
    bool                 all_equal = true;
    for (auto const& mu : P.vertices) {
      auto tau  = boolinv::trace_from_mean(pi, mu);
      auto j    = boolinv::to_json(pi, tau);
      json rows = json::array();
      for (boolinv::ElementId s = 0; s < S.size(); ++s) {
        auto t  = boolinv::trace_of_element(pi, tau, s);
        auto m  = boolinv::evaluate_mean(S, mu, diag[s]);
        all_equal = all_equal && t == m;
        rows.push_back({{"id", s},
                        {"element", S.to_string(s)},
                        {"tau", boolinv::to_string(t)},
                        {"mu_e", boolinv::to_string(m)}});
      }
      auto pos = boolinv::positivity_check(pi, mu, cfg.trials, cfg.seed);
      j["table"]      = rows;
      j["positivity"] = {{"trials", pos.trials},
                         {"negative", pos.negative},
                         {"faithfulness_violations", pos.faithfulness_violations},
                         {"ok", pos.ok()}};
      traces.push_back(j);
    }
    if (!all_equal) {
      throw boolinv::InternalError("a trace differs from the mean of the diagonal");
    }
    return {{"trace_count", traces.size()}, {"tau_equals_mu_e", all_equal}, {"traces", traces}};
  }

  json cmd_af(RunConfig const& cfg, std::string const& text) {
    auto B = boolinv::diagram_from_json(boolinv::parse_json(text));
    B.validate();
    auto depth = std::min(cfg.depth, B.depth());
    auto cap   = cap_or(cfg, boolinv::kDefaultElementCap);
    json levels = json::array();
    for (std::size_t i = 1; i <= depth; ++i) {
      json level{{"level", i}, {"dims", B.dims(i)}};
      try {
        auto L                = boolinv::level_means(B, i, cap);
        json vertices         = json::array();
        for (auto const& v : L.vertices) {
          vertices.push_back(boolinv::to_strings(v));
        }
        level["monoid"]       = L.used_full_truncation ? "full" : "matrix_units";
        level["mean_vertices"] = vertices;
        level["dimension"]    = L.dimension;
      } catch (boolinv::SizeLimitError const&) {
        level["mean_vertices"] = nullptr;
        level["skipped"]       = "size cap";
      }
      levels.push_back(level);
    }
    json coherent = nullptr;
    try {
      auto C   = boolinv::coherent_means(B, depth);
      json vs  = json::array();
      for (auto const& v : C.vertices) {
        json seq = json::array();
        for (auto const& w : v) {
          seq.push_back(boolinv::to_strings(w));
        }
        vs.push_back(seq);
      }
      coherent = {{"depth", depth}, {"unique", C.unique}, {"dimension", C.dimension}, {"vertices", vs}};
    } catch (boolinv::SizeLimitError const&) {
      coherent = {{"depth", depth}, {"skipped", "too many variables"}};
    }
    return {{"depth", depth}, {"levels", levels}, {"coherent_means", coherent}};
  }

  json cmd_odometer(RunConfig const& cfg) {
    if (cfg.depth == 0) {
      throw boolinv::ParseError("--depth must be at least 1");
    }
    auto r = boolinv::odometer_unique_mean(cfg.depth, cap_or(cfg, boolinv::kOdometerElementCap));
    json cylinders = json::array();
    for (std::size_t k = 1; k <= cfg.depth && r.unique; ++k) {
      boolinv::Rational v = 0;
      for (std::size_t w = 0; w < r.word_weights.size(); ++w) {
        if (w % (std::size_t(1) << k) == 0) {
          v += r.word_weights[w];
        }
      }
      cylinders.push_back({{"length", k}, {"mu_cylinder_0^k", boolinv::to_string(v)}});
    }
    return {{"depth", r.depth},
            {"size", r.size},
            {"atoms", r.atom_count},
            {"orbits", r.orbit_count},
            {"unique", r.unique},
            {"cylinders_ok", r.cylinders_ok},
            {"word_weights", boolinv::to_strings(r.word_weights)},
            {"cylinders", cylinders}};
  }

  void render_table(json const& j, std::ostream& out, std::string const& prefix = "") {
    if (j.is_object()) {
      for (auto const& [k, v] : j.items()) {
        auto key = prefix.empty() ? k : prefix + "." + k;
        if (v.is_structured()) {
          render_table(v, out, key);
        } else {
          out << key << "\t" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
      }
    } else if (j.is_array()) {
      bool flat = std::none_of(j.begin(), j.end(), [](json const& v) { return v.is_structured(); });
      if (flat) {
        out << prefix << "\t";
        for (std::size_t i = 0; i < j.size(); ++i) {
          out << (i ? " " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
        }
        out << "\n";
        return;
      }
      for (std::size_t i = 0; i < j.size(); ++i) {
        render_table(j[i], out, prefix + "[" + std::to_string(i) + "]");
      }
    } else {
      out << prefix << "\t" << j.dump() << "\n";
    }
  }

  void emit(RunConfig const& cfg, json const& report) {
    std::ostringstream text;
    if (cfg.format == "table") {
      render_table(report, text);
    } else {
      text << report.dump(2) << "\n";
    }
    if (cfg.output.empty()) {
      std::cout << text.str();
    } else {
      std::ofstream out(cfg.output, std::ios::binary);
      out << text.str();
    }
  }

  int run(RunConfig const& cfg) {
    json report{{"tool", "boolinv"},
                {"version", boolinv::kVersion},
                {"command", cfg.command}};
    int  code = kOk;
    json error;
    try {
      std::string text;
      if (cfg.command == "odometer") {
        text = "odometer depth=" + std::to_string(cfg.depth);
      } else {
        text = read_input(cfg);
      }
      report["input_hash"] = boolinv::fnv1a_hex(text);
      report["seed"]       = cfg.seed;
      json result;
      if (cfg.command == "check") {
        result = cmd_check(cfg, text);
      } else if (cfg.command == "groupoid") {
        result = cmd_groupoid(cfg, text);
      } else if (cfg.command == "means") {
        result = cmd_means(cfg, text);
      } else if (cfg.command == "traces") {
        result = cmd_traces(cfg, text);
      } else if (cfg.command == "af") {
        result = cmd_af(cfg, text);
      } else {
        result = cmd_odometer(cfg);
      }
      report["status"] = "ok";
      report["result"] = result;
    } catch (boolinv::ParseError const& e) {
      code            = kParse;
      error = {{"kind", "parse"}, {"message", e.what()}};
    } catch (boolinv::ValidationError const& e) {
      code            = kParse;
      error = {{"kind", "validation"}, {"message", e.what()}};
    } catch (boolinv::SizeLimitError const& e) {
      code            = kCap;
      error = {{"kind", "size_cap"}, {"message", e.what()}, {"cap", e.cap()}};
    } catch (boolinv::UnsupportedStructureError const& e) {
      code            = kUnsupported;
      error = {{"kind", "unsupported_structure"}, {"message", e.what()}};
      if (e.witness()) {
        error["witness"] = *e.witness();
      }
    } catch (boolinv::StructureError const& e) {
      code            = kUnsupported;
      error = {{"kind", "unsupported_structure"}, {"message", e.what()}};
    } catch (boolinv::Error const& e) {
      code            = kFailure;
      error = {{"kind", "internal"}, {"message", e.what()}};
    }
    if (code != kOk) {
      report["status"] = "error";
      report["error"]  = error;
      std::cerr << "boolinv " << cfg.command << ": " << error["message"].get<std::string>()
                << "\n";
    }
    emit(cfg, report);
    return code;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean inverse monoids, tight groupoids, invariant means and traces"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(boolinv::kVersion));

  RunConfig   cfg;
  std::size_t cap = 0;
  app.add_option("--input", cfg.input, "input JSON file");
  app.add_option("--output", cfg.output, "write the report here instead of stdout");
  app.add_option("--seed", cfg.seed, "seed for random sampling")->capture_default_str();
  auto cap_opt = app.add_option("--cap-elements", cap, "maximum number of monoid elements")
                     ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  app.add_option("--depth", cfg.depth, "depth for af and odometer")->capture_default_str();
  app.add_option("--trials", cfg.trials, "random elements per trace in positivity checks")
      ->capture_default_str();

  app.add_subcommand("check", "closure size, idempotents, atoms and structural flags");
  app.add_subcommand("groupoid", "the tight groupoid and its predicates");
  app.add_subcommand("means", "the invariant mean polytope");
  app.add_subcommand("traces", "traces from invariant means, with the tau = mu(e_s) table");
  app.add_subcommand("af", "dimension tables and mean polytopes of a Bratteli diagram");
  app.add_subcommand("odometer", "unique invariant mean of the depth-n odometer truncation");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForVersion const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kParse;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (cap_opt->count() > 0) {
    cfg.cap = cap;
  }
  return run(cfg);
}
