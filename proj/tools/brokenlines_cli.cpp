// brokenlines: enumerate, verify and demonstrate the combinatorial model of
// broken lines and factorizable sheaves.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>

#include "CLI11.hpp"
#include "brokenlines/acceptance.hpp"
#include "brokenlines/config.hpp"
#include "brokenlines/fiber_product.hpp"
#include "brokenlines/json_io.hpp"
#include "brokenlines/morse.hpp"
#include "brokenlines/sheaf.hpp"
#include "brokenlines/tw.hpp"

namespace fs = std::filesystem;
using bl::io::Json;

namespace {

struct Globals {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

bl::RunConfig resolve(const Globals& g) {
  bl::RunConfig cfg = bl::load_config(g.config_path);
  if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
  if (g.seed_set) cfg.seed = g.seed;
  return cfg;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  return Json::parse(in);
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

/// "builtin:name" or a JSON file with {"dim", "c"}.
bl::NonunitalAlgebra load_algebra(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) {
    auto a = bl::builtin_algebra(spec.substr(prefix.size()));
    if (!a) throw std::invalid_argument("unknown builtin algebra: " + spec);
    return *a;
  }
  return bl::io::algebra_from_json(read_json_file(spec));
}

/// "const" for the constant dimension-1 functor, otherwise an algebra.
bl::TwFunctor load_functor(const std::string& spec, std::shared_ptr<const bl::TwCategory> cat) {
  if (spec == "const") return bl::constant_functor(cat, 1);
  return bl::algebra_to_functor(load_algebra(spec), cat);
}

Json amalgam_poset_json(const bl::AmalgamPoset& poset) {
  Json amalgams = Json::array();
  for (const auto& k : poset.amalgams) amalgams.push_back(bl::io::to_json(k));
  Json edges = Json::array();
  for (auto [a, b] : poset.order) {
    if (a != b) edges.push_back(Json::array({a, b}));
  }
  return Json{{"count", poset.amalgams.size()}, {"amalgams", amalgams}, {"order", edges}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Broken lines, their moduli, and factorizable sheaves"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  Globals globals;
  app.add_option("--config", globals.config_path, "key = value configuration file");
  app.add_option("--out", globals.out_dir, "output directory (overrides config and BROKENLINES_OUT)");
  app.add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t s) { globals.seed = s, globals.seed_set = true; }, "random seed");

  int exit_code = 0;
  auto emit = [](const Json& j) { std::cout << bl::io::dump(j); };

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "list finite combinatorial objects");
  enumerate->require_subcommand(1);
  int n = 3, left = 2, right = 2, source = 3, target = 2;
  auto* e_pre = enumerate->add_subcommand("preorders", "linear preorders on n labels");
  e_pre->add_option("--n", n)->check(CLI::Range(1, 8));
  e_pre->callback([&] {
    Json list = Json::array();
    for (const auto& p : bl::enumerate_linear_preorders(n)) list.push_back(bl::io::to_json(p));
    emit(Json{{"n", n}, {"count", list.size()}, {"preorders", list}});
  });
  auto* e_surj = enumerate->add_subcommand("surjections", "monotone surjections [source] -> [target]");
  e_surj->add_option("--source", source)->check(CLI::Range(1, 10));
  e_surj->add_option("--target", target)->check(CLI::Range(1, 10));
  e_surj->callback([&] {
    Json list = Json::array();
    for (const auto& f : bl::enumerate_surjections(bl::LinOrder::standard(source), bl::LinOrder::standard(target))) {
      list.push_back(f.map);
    }
    emit(Json{{"source", source}, {"target", target}, {"count", list.size()}, {"maps", list}});
  });
  auto* e_conv = enumerate->add_subcommand("conv", "convex equivalence relations on [n] and their refinement order");
  e_conv->add_option("--n", n)->check(CLI::Range(1, 12));
  e_conv->callback([&] {
    auto lattice = bl::enumerate_convex_equivalences(bl::LinOrder::standard(n));
    Json rels = Json::array();
    for (const auto& e : lattice.relations) rels.push_back(e.class_ids());
    Json edges = Json::array();
    for (auto [a, b] : lattice.refinement) {
      if (a != b) edges.push_back(Json::array({a, b}));
    }
    emit(Json{{"n", n}, {"count", rels.size()}, {"relations", rels}, {"refines", edges}});
  });
  auto* e_amal = enumerate->add_subcommand("amalgams", "the poset Amal(I, J)");
  e_amal->add_option("--left", left)->check(CLI::Range(1, 5));
  e_amal->add_option("--right", right)->check(CLI::Range(1, 5));
  e_amal->callback([&] {
    emit(amalgam_poset_json(bl::enumerate_amalgams(bl::LinOrder::standard(left), bl::LinOrder::standard(right))));
  });

  // verify
  auto* verify = app.add_subcommand("verify", "check structural identities");
  verify->require_subcommand(1);
  auto* v_amal = verify->add_subcommand("amalgams", "U_{K v K'} = U_K ∩ U_K' on sampled configurations");
  v_amal->add_option("--left", left)->check(CLI::Range(1, 4));
  v_amal->add_option("--right", right)->check(CLI::Range(1, 4));
  v_amal->callback([&] {
    auto cfg = resolve(globals);
    auto r = bl::verify_join_identity(left, right, cfg.per_stratum, cfg.seed);
    emit(Json{{"amalgams", r.amalgams},
              {"pairs_checked", r.pairs_checked},
              {"configurations", r.configurations},
              {"distinct_k", r.distinct_k},
              {"violations", r.violations},
              {"ok", r.ok()}});
    exit_code = r.ok() ? 0 : 1;
  });
  std::string family_file, delta = "1/100";
  auto* v_fam = verify->add_subcommand("family", "axioms of a sampled family along its path");
  v_fam->add_option("--file", family_file, "family JSON (omit for the built-in easybreak path)");
  v_fam->add_option("--delta", delta, "continuity tolerance, a rational");
  v_fam->callback([&] {
    auto fam = family_file.empty() ? bl::easybreak_family() : bl::io::family_from_json(read_json_file(family_file));
    auto built = bl::build_family(fam);
    auto r = bl::check_axioms_on_path(built, bl::parse_rational(delta));
    Json violations = Json::array();
    for (const auto& v : r.violations) {
      violations.push_back(Json{{"kind", bl::to_string(v.kind)}, {"from", v.from}, {"to", v.to}, {"message", v.message}});
    }
    Json alphas = Json::array();
    for (const auto& a : bl::extract_alpha(built)) alphas.push_back(bl::io::to_json(a));
    emit(Json{{"family", bl::io::to_json(fam)},
              {"extracted", alphas},
              {"edges_checked", r.edges_checked},
              {"fibers_checked", r.fibers_checked},
              {"violations", violations},
              {"ok", r.ok()}});
    exit_code = r.ok() ? 0 : 1;
  });

  // sheaf
  std::string algebra_spec = "builtin:nilpotent3";
  int order = 3;
  auto* sheaf = app.add_subcommand("sheaf", "a global sheaf from an algebra, on Conv([order]) and on the easybreak path");
  sheaf->add_option("--algebra", algebra_spec, "builtin:NAME or a JSON file");
  sheaf->add_option("--order", order, "|I|")->check(CLI::Range(1, 5));
  sheaf->callback([&] {
    auto a = load_algebra(algebra_spec);
    auto f = bl::algebra_global_sheaf(a, order - 1);
    auto cs = bl::global_to_constructible(f, bl::LinOrder::standard(order));
    Json strata = Json::array();
    for (std::size_t i = 0; i < cs.conv.relations.size(); ++i) {
      strata.push_back(Json{{"classes", cs.conv.relations[i].class_ids()}, {"dim", cs.values[i]}});
    }
    auto functoriality = bl::check_functoriality(cs);
    emit(Json{{"algebra", bl::io::to_json(a)},
              {"dims", f.dims()},
              {"strata", strata},
              {"functorial", !functoriality.has_value()},
              {"easybreak", bl::io::to_json(bl::evaluate_on_family(bl::algebra_global_sheaf(a, 1), bl::easybreak_family()))}});
    exit_code = functoriality ? 1 : 0;
  });

  // roundtrip
  int truncation = 0;
  auto* roundtrip = app.add_subcommand("roundtrip", "algebra <-> factorizable functor roundtrips");
  roundtrip->require_subcommand(1);
  auto* mainc = roundtrip->add_subcommand("mainc", "functor_to_algebra ∘ algebra_to_functor and the reverse iso");
  mainc->add_option("--algebra", algebra_spec, "builtin:NAME or a JSON file");
  mainc->add_option("--truncation", truncation, "N (default from config)")->check(CLI::Range(1, 5));
  mainc->callback([&] {
    auto cfg = resolve(globals);
    const int big_n = truncation > 0 ? truncation : cfg.truncation;
    auto a = load_algebra(algebra_spec);
    if (auto v = bl::validate_algebra(a)) throw std::invalid_argument("not associative: " + v->message);
    auto cat = std::make_shared<const bl::TwCategory>(big_n);
    auto f = bl::algebra_to_functor(a, cat);
    auto b = bl::functor_to_algebra(f);
    auto rev = bl::reverse_roundtrip(f);
    bool ok = b == a && rev.ok() && bl::is_fun0(f);
    emit(Json{{"algebra", bl::io::to_json(a)},
              {"recovered", bl::io::to_json(b)},
              {"truncation", big_n},
              {"objects", cat->size()},
              {"morphisms", cat->morphisms().size()},
              {"fun0", bl::is_fun0(f)},
              {"reverse_failures", rev.failures},
              {"result", ok ? "pass" : "fail"}});
    exit_code = ok ? 0 : 1;
  });

  // daycon
  std::string left_spec = "const", right_spec = "const";
  auto* daycon = app.add_subcommand("daycon", "Day convolution of two functors on Tw(LinOrd)");
  daycon->add_option("--left", left_spec, "const, builtin:NAME or an algebra file");
  daycon->add_option("--right", right_spec, "const, builtin:NAME or an algebra file");
  daycon->add_option("--truncation", truncation, "N (default from config)")->check(CLI::Range(1, 5));
  daycon->callback([&] {
    auto cfg = resolve(globals);
    auto cat = std::make_shared<const bl::TwCategory>(truncation > 0 ? truncation : cfg.truncation);
    auto f = load_functor(left_spec, cat);
    auto g = load_functor(right_spec, cat);
    auto fg = bl::day_convolution(f, g);
    Json values = Json::array();
    for (int x = 0; x < cat->size(); ++x) {
      Json summands = Json::array();
      for (const auto& s : bl::day_layout(f, g, x)) summands.push_back(Json{{"cut", s.cut}, {"dim", s.dim}});
      values.push_back(Json{{"object", bl::io::to_json(cat->object(x))}, {"dim", fg.value(x)}, {"summands", summands}});
    }
    auto assoc = bl::day_assoc_check(f, g, f);
    emit(Json{{"values", values},
              {"functor_laws", !bl::validate_functor(fg).has_value()},
              {"associativity_failures", assoc.failures},
              {"factorizable", bl::factorizable_check(fg)}});
    exit_code = assoc.ok() ? 0 : 1;
  });

  // morse
  std::string surface = "torus";
  auto* morse_cmd = app.add_subcommand("morse", "gradient flows and broken trajectories");
  morse_cmd->require_subcommand(1);
  auto* demo = morse_cmd->add_subcommand("demo", "critical points, broken trajectories, JSON and SVG");
  demo->add_option("--surface", surface)->check(CLI::IsMember({"sphere", "torus", "torus-tilted"}));
  demo->callback([&] {
    auto cfg = resolve(globals);
    auto s = bl::morse::make_surface(surface);
    auto crits = bl::morse::find_critical_points(*s, cfg.morse);
    std::vector<bl::morse::BrokenTrajectory> trajs;
    std::vector<bl::morse::Connection> conns;
    if (crits.size() >= 2) {
      conns = bl::morse::find_connections(*s, crits, cfg.morse);
      trajs = bl::morse::find_broken_trajectories(*s, crits, conns, 0, static_cast<int>(crits.size()) - 1, cfg.morse);
    }
    Json report = bl::io::morse_report(*s, crits, trajs, cfg.morse);
    std::vector<bl::morse::FlowLine> lines;
    for (const auto& c : conns) lines.push_back(c.line);
    const fs::path dir(cfg.out_dir);
    write_file(dir / ("morse_" + surface + ".json"), bl::io::dump(report));
    write_file(dir / ("morse_" + surface + ".svg"), bl::morse::render_svg(*s, crits, trajs, lines));
    emit(report);
  });

  // accept
  std::vector<int> only;
  auto* accept = app.add_subcommand("accept", "run the acceptance criteria");
  accept->add_option("--criterion", only, "run only these criteria")->check(CLI::Range(1, 9));
  accept->callback([&] {
    auto cfg = resolve(globals);
    auto results = bl::acceptance::run_all(cfg, only);
    Json list = Json::array();
    bool all = true;
    for (const auto& r : results) {
      std::cout << bl::acceptance::format_line(r) << "\n";
      list.push_back(bl::acceptance::to_json(r));
      all = all && r.pass();
    }
    std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
    write_file(fs::path(cfg.out_dir) / "acceptance.json", bl::io::dump(Json{{"seed", cfg.seed}, {"criteria", list}}));
    exit_code = all ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
