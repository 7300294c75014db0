#include "brokenlines/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "brokenlines/broken_line.hpp"
#include "brokenlines/family.hpp"
#include "brokenlines/fiber_product.hpp"
#include "brokenlines/sheaf.hpp"
#include "brokenlines/tw.hpp"

namespace bl::acceptance {

namespace {

// Collects failures; only the first few are kept in the detail string.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string summary(const std::string& extra) const {
    std::ostringstream os;
    os << count_ << " checks";
    if (!extra.empty()) os << ", " << extra;
    if (!failures_.empty()) {
      os << "; " << failures_.size() << " failed, first: " << failures_.front();
    }
    return os.str();
  }

 private:
  long count_ = 0;
  std::vector<std::string> failures_;
};

struct Outcome {
  bool ok;
  std::string detail;
};

std::vector<std::pair<std::string, NonunitalAlgebra>> reference_algebras() {
  return {{"zero1", zero_algebra(1)}, {"nilpotent3", nilpotent3_algebra()}, {"matrix2", matrix2_algebra()}};
}

// A sparse invertible change of basis: a permutation with nonzero scalars.
Matrix scaled_permutation(int d, std::mt19937_64& rng) {
  std::vector<int> perm(d);
  for (int i = 0; i < d; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix p = Matrix::permutation(perm);
  static const Rational scalars[] = {Rational(1), Rational(-1), Rational(2), Rational(1, 3), Rational(-5, 2)};
  std::uniform_int_distribution<int> pick(0, 4);
  for (int j = 0; j < d; ++j) p.at(perm[j], j) = scalars[pick(rng)];
  return p;
}

Outcome criterion_algebra_roundtrip(const RunConfig& cfg) {
  Checks checks;
  std::mt19937_64 rng(cfg.seed);
  auto cat = std::make_shared<const TwCategory>(cfg.truncation);
  for (const auto& [name, a] : reference_algebras()) {
    TwFunctor f = algebra_to_functor(a, cat);
    checks.expect(!validate_functor(f), name + ": functor laws");
    checks.expect(!validate_lax(f), name + ": lax monoidal laws");
    checks.expect(is_fun0(f), name + ": Fun0");
    checks.expect(functor_to_algebra(f) == a, name + ": structure constants differ after the roundtrip");
    auto direct = reverse_roundtrip(f);
    checks.expect(direct.ok(), name + ": reverse roundtrip");
    // The same functor presented in another basis on every object.
    std::vector<Matrix> p;
    for (int x = 0; x < cat->size(); ++x) p.push_back(scaled_permutation(f.value(x), rng));
    TwFunctor g = conjugate_functor(f, p);
    checks.expect(!validate_lax(g), name + ": conjugated lax laws");
    auto b = functor_to_algebra(g);
    checks.expect(!validate_algebra(b), name + ": recovered algebra is associative");
    auto conj = reverse_roundtrip(g);
    checks.expect(conj.ok(), name + ": reverse roundtrip after change of basis" +
                                 (conj.failures.empty() ? "" : " (" + conj.failures.front() + ")"));
  }
  return {checks.ok(), checks.summary("N=" + std::to_string(cfg.truncation))};
}

Outcome criterion_pullback_squares(const RunConfig& cfg) {
  Checks checks;
  constexpr int kMaxSize = 4;
  const int n = kMaxSize - 1;
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::pair<std::string, GlobalSheaf>> sheaves;
  for (const auto& [name, a] : reference_algebras()) sheaves.emplace_back(name, algebra_global_sheaf(a, n));
  sheaves.emplace_back("rationals", algebra_global_sheaf(rational_algebra(), n));
  for (int r = 0; r < 3; ++r) sheaves.emplace_back("random" + std::to_string(r), random_global_sheaf(n, 3, rng));
  checks.expect(sheaves.size() == 7, "constructed global sheaves");

  // Standard and reversed labellings of each order.
  auto orders = [](int size) {
    std::vector<int> rev(size);
    for (int i = 0; i < size; ++i) rev[i] = size - 1 - i;
    std::vector<LinOrder> out{LinOrder::standard(size)};
    if (size > 1) out.emplace_back(LinPreorder(rev));
    return out;
  };
  long squares = 0;
  for (int a = 1; a <= kMaxSize; ++a) {
    for (int b = 1; b <= a; ++b) {
      for (const auto& src : orders(a)) {
        for (const auto& tgt : orders(b)) {
          for (const auto& f : enumerate_surjections(src, tgt)) {
            for (const auto& [name, sheaf] : sheaves) {
              auto failures = pullback_square_check(sheaf, f);
              squares += static_cast<long>(enumerate_convex_equivalences(tgt).refinement.size());
              checks.expect(failures.empty(), name + ": " + (failures.empty() ? "" : failures.front()));
            }
          }
        }
      }
    }
  }
  // Every presentation of a surjection by merges gives the same map.
  for (int a = 1; a <= kMaxSize; ++a) {
    for (int b = 1; b <= a; ++b) {
      for (const auto& f : enumerate_surjections(LinOrder::standard(a), LinOrder::standard(b))) {
        auto seqs = all_merge_sequences(f.map);
        for (const auto& [name, sheaf] : sheaves) {
          Matrix ref = apply_merges(sheaf, a - 1, seqs.front());
          for (const auto& s : seqs) checks.expect(apply_merges(sheaf, a - 1, s) == ref, name + ": merge presentations");
        }
      }
    }
  }
  return {checks.ok(), checks.summary(std::to_string(squares) + " squares")};
}

Outcome criterion_fiber_product(const RunConfig& cfg) {
  Checks checks;
  long configs = 0, pairs = 0;
  for (int a = 1; a <= cfg.max_amalgam; ++a) {
    for (int b = 1; b <= cfg.max_amalgam; ++b) {
      auto report = verify_join_identity(a, b, cfg.per_stratum, cfg.seed + 31 * a + b);
      configs += report.configurations;
      pairs += report.pairs_checked;
      checks.expect(report.ok(), "|I|=" + std::to_string(a) + " |J|=" + std::to_string(b) + ": " +
                                     (report.ok() ? "" : report.violations.front()));
    }
  }
  return {checks.ok(),
          checks.summary(std::to_string(configs) + " configurations, " + std::to_string(pairs) + " pairs")};
}

Outcome criterion_classification(const RunConfig& cfg) {
  Checks checks;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> size_pick(1, 5), coin(0, 1);
  const auto& grid = gap_grid();
  std::uniform_int_distribution<std::size_t> grid_pick(0, grid.size() - 1);
  std::map<int, std::vector<LinPreorder>> preorders;
  for (int n = 1; n <= 5; ++n) preorders[n] = enumerate_linear_preorders(n);
  for (int sample = 0; sample < 200; ++sample) {
    const int n = size_pick(rng);
    const auto& all = preorders[n];
    const LinPreorder& base = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
    auto en = base.enumeration();
    std::vector<ExtReal> coords;
    int infinite = 0;
    for (int m = 0; m + 1 < n; ++m) {
      bool forced = base.equiv(en[m], en[m + 1]);
      if (!forced && coin(rng)) {
        coords.push_back(ExtReal::pos_inf());
        ++infinite;
      } else {
        coords.push_back(ExtReal(grid[grid_pick(rng)]));
      }
    }
    RepPoint alpha = rep_from_chart(base, en, coords);
    const std::string tag = "sample " + std::to_string(sample);
    checks.expect(!validate(alpha), tag + ": invalid point");
    MarkedLine fiber = fiber_over(alpha);
    checks.expect(fiber.line.m == infinite + 1, tag + ": component count");
    auto cls = finite_distance_classes(alpha);
    checks.expect(fiber.line.m == static_cast<int>(std::set<int>(cls.begin(), cls.end()).size()),
                  tag + ": finite-distance classes");
    checks.expect(!validate_section(fiber, base), tag + ": section");
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!base.leq(i, j)) continue;
        checks.expect(translation_distance(fiber.line, fiber.marks[i], fiber.marks[j]) == alpha(i, j),
                      tag + ": distance");
        for (int k = 0; k < n; ++k) {
          if (base.leq(j, k)) checks.expect(alpha(i, k) == alpha(i, j) + alpha(j, k), tag + ": cocycle");
        }
      }
    }
  }
  return {checks.ok(), checks.summary("200 points")};
}

// Equivalence relations on n points as restricted growth strings, kept when
// every class is an interval.
long brute_force_convex_count(int n) {
  long count = 0;
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int max_used) {
    if (pos == n) {
      bool convex = true;
      for (int c = 0; c <= max_used && convex; ++c) {
        int first = -1, last = -1, members = 0;
        for (int i = 0; i < n; ++i) {
          if (rgs[i] != c) continue;
          if (first < 0) first = i;
          last = i;
          ++members;
        }
        convex = last - first + 1 == members;
      }
      count += convex;
      return;
    }
    for (int c = 0; c <= max_used + 1; ++c) {
      rgs[pos] = c;
      rec(pos + 1, std::max(max_used, c));
    }
  };
  rgs[0] = 0;
  rec(1, 0);
  return count;
}

Outcome criterion_stratification(const RunConfig& cfg) {
  Checks checks;
  std::mt19937_64 rng(cfg.seed);
  long points = 0;
  for (int n = 1; n <= cfg.max_order; ++n) {
    auto lattice = enumerate_convex_equivalences(LinOrder::standard(n));
    const long expected = 1L << (n - 1);
    checks.expect(static_cast<long>(lattice.relations.size()) == expected, "|Conv| at n=" + std::to_string(n));
    checks.expect(brute_force_convex_count(n) == expected, "oracle at n=" + std::to_string(n));
    for (const auto& e : lattice.relations) {
      for (int draw = 0; draw < 2; ++draw) {
        RepPoint alpha = sample_stratum(e, rng);
        ++points;
        checks.expect(in_stratum(alpha, e), "sample lies in its stratum");
        checks.expect(finite_coordinate_count(alpha) == n - e.num_classes(), "finite coordinate count");
      }
    }
  }
  return {checks.ok(), checks.summary(std::to_string(points) + " stratum points")};
}

// dim (F ⊛ G)(x) by enumerating subsets of positions.
int brute_force_day_dim(const TwFunctor& f, const TwFunctor& g, int x) {
  const auto& cat = *f.cat;
  const TwObject& obj = cat.object(x);
  int total = 0;
  for (unsigned mask = 1; mask + 1 < (1u << obj.n); ++mask) {
    bool ok = true;
    for (int i = 0; i < obj.n && ok; ++i) {
      for (int j = 0; j < obj.n && ok; ++j) {
        bool in_i = (mask >> i) & 1u, in_j = (mask >> j) & 1u;
        if (in_j && !in_i && i < j) ok = false;                      // downward closed
        if (in_i != in_j && obj.cls[i] == obj.cls[j]) ok = false;    // invariant
      }
    }
    if (!ok) continue;
    auto part = [&](bool lower) {
      std::vector<int> cls;
      for (int i = 0; i < obj.n; ++i) {
        if (static_cast<bool>((mask >> i) & 1u) == lower) cls.push_back(obj.cls[i]);
      }
      const int base = cls.front();
      for (int& c : cls) c -= base;
      return cat.find_object(TwObject{static_cast<int>(cls.size()), cls});
    };
    total += f.value(part(true)) * g.value(part(false));
  }
  return total;
}

Outcome criterion_day(const RunConfig& cfg) {
  Checks checks;
  auto cat = std::make_shared<const TwCategory>(cfg.truncation);
  TwFunctor one = constant_functor(cat, 1);
  TwFunctor nil = algebra_to_functor(nilpotent3_algebra(), cat);
  TwFunctor mat = algebra_to_functor(matrix2_algebra(), cat);

  TwFunctor oo = day_convolution(one, one);
  checks.expect(oo.value(cat->discrete(3)) == 2, "constant dim 1 on discrete [3] has dim 2");
  checks.expect(oo.value(cat->point()) == 0, "singleton gives zero");
  for (const auto& [f, g, label] : std::vector<std::tuple<const TwFunctor*, const TwFunctor*, std::string>>{
           {&one, &one, "const*const"}, {&nil, &nil, "nil*nil"}, {&nil, &mat, "nil*mat"}, {&one, &mat, "const*mat"}}) {
    TwFunctor fg = day_convolution(*f, *g);
    checks.expect(!validate_functor(fg), label + ": functor laws");
    for (int x = 0; x < cat->size(); ++x) {
      checks.expect(fg.value(x) == brute_force_day_dim(*f, *g, x), label + ": dimension formula");
    }
    for (int n = 2; n <= cat->truncation(); ++n) {
      checks.expect(fg.value(cat->sharp(n)) == 0, label + ": indiscrete object is not zero");
    }
  }
  TwFunctor ooo = day_convolution(oo, one);
  checks.expect(ooo.value(cat->discrete(3)) == 1, "triple convolution on discrete [3] has dim 1");
  for (const auto& [f, label] : std::vector<std::pair<const TwFunctor*, std::string>>{{&one, "constant"}, {&nil, "nilpotent3"}}) {
    auto report = day_assoc_check(*f, *f, *f);
    checks.expect(report.ok(), label + ": associativity" + (report.ok() ? "" : " (" + report.failures.front() + ")"));
  }
  return {checks.ok(), checks.summary("N=" + std::to_string(cfg.truncation))};
}

Outcome criterion_representability(const RunConfig& cfg) {
  Checks checks;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> size_pick(1, 5), count_pick(1, 6);
  const auto& grid = gap_grid();
  std::uniform_int_distribution<std::size_t> grid_pick(0, grid.size() - 1);
  long fibers = 0;
  for (int trial = 0; trial < 100; ++trial) {
    SampledFamily fam = random_family(size_pick(rng), count_pick(rng), rng);
    BuiltFamily built = build_family(fam);
    auto recovered = extract_alpha(built);
    const std::string tag = "family " + std::to_string(trial);
    checks.expect(recovered.size() == fam.samples.size(), tag + ": fiber count");
    for (std::size_t s = 0; s < fam.samples.size(); ++s) {
      checks.expect(recovered[s] == fam.samples[s].alpha, tag + ": alpha differs after the roundtrip");
      const MarkedLine& fiber = built.fibers[s];
      ++fibers;
      // Move the marks by a random automorphism; the connecting iso must be it.
      LineIso g = LineIso::identity(fiber.line.m);
      for (auto& shift : g.shifts) shift = grid[grid_pick(rng)];
      MarkedLine moved{fiber.line, {}};
      for (const auto& mk : fiber.marks) moved.marks.push_back(g.apply(mk));
      auto iso = marked_iso(fiber, moved);
      checks.expect(iso.has_value() && *iso == g, tag + ": connecting isomorphism");
      auto back = marked_iso(moved, fiber);
      checks.expect(back.has_value() && *back == inverse(g), tag + ": inverse isomorphism");
      checks.expect(hom_set(fiber.line, moved.line) == fiber.line.m, tag + ": hom set");
      // Uniqueness: every component is marked, so the shifts are determined.
      std::set<int> marked;
      for (const auto& mk : fiber.marks) marked.insert(mk.a);
      checks.expect(static_cast<int>(marked.size()) == fiber.line.m, tag + ": unmarked component");
    }
  }
  return {checks.ok(), checks.summary(std::to_string(fibers) + " fibers")};
}

Outcome criterion_cospecialization(const RunConfig&) {
  Checks checks;
  SampledFamily path = easybreak_family();
  auto axioms = check_axioms_on_path(build_family(path), Rational(3, 2));
  checks.expect(axioms.ok(), "easybreak path axioms");
  for (const auto& [name, a] : reference_algebras()) {
    GlobalSheaf f = algebra_global_sheaf(a, 1);
    FamilyEvaluation ev = evaluate_on_family(f, path);
    const int d = a.dim();
    std::vector<int> dims;
    for (const auto& s : ev.stalks) dims.push_back(s.dim);
    checks.expect(dims == std::vector<int>{d, d, d, d * d}, name + ": stalk dimensions");
    checks.expect(ev.incomparable.empty(), name + ": incomparable strata on the path");
    for (const auto& e : ev.edges) {
      bool into_limit = e.from == "t=0";
      if (!e.map) {
        checks.expect(false, name + ": missing edge map");
      } else if (into_limit) {
        checks.expect(e.to == "t=1/4" && *e.map == a.multiplication(), name + ": cospecialization is the product");
      } else {
        checks.expect(e.map->is_identity(), name + ": edge map inside a stratum");
      }
    }
  }
  return {checks.ok(), checks.summary("")};
}

Outcome criterion_morse(const RunConfig& cfg) {
  Checks checks;
  const auto& mc = cfg.morse;
  auto sphere = morse::make_sphere();
  auto sc = morse::find_critical_points(*sphere, mc);
  checks.expect(sc.size() == 2, "sphere has 2 critical points");
  checks.expect(morse::euler_characteristic(sc) == 2, "sphere index sum is 2");
  auto torus = morse::make_torus();
  auto tc = morse::find_critical_points(*torus, mc);
  checks.expect(tc.size() == 4, "torus has 4 critical points");
  checks.expect(morse::euler_characteristic(tc) == 0, "torus index sum is 0");
  for (const auto& c : sc) checks.expect(c.grad_norm < mc.tol_crit, "sphere gradient norm");
  for (const auto& c : tc) checks.expect(c.grad_norm < mc.tol_crit, "torus gradient norm");
  int broken = 0;
  double worst = 0;
  if (tc.size() == 4) {
    auto conns = morse::find_connections(*torus, tc, mc);
    auto trajs = morse::find_broken_trajectories(*torus, tc, conns, 0, 3, mc);
    for (const auto& t : trajs) {
      if (t.intermediate_count() < 1) continue;
      auto report = morse::validate_trajectory(*torus, tc, t, mc);
      auto [line, alpha] = morse::trajectory_to_line(t);
      bool all_inf = true;
      for (int i = 0; i + 1 < alpha.size(); ++i) all_inf = all_inf && alpha(i, i + 1).is_pos_inf();
      checks.expect(report.ok() && report.reparam_residual < 1e-5, "broken trajectory validation");
      checks.expect(!validate(alpha) && all_inf && line.m == t.intermediate_count() + 1, "extracted gaps");
      worst = std::max(worst, report.reparam_residual);
      ++broken;
    }
  }
  checks.expect(broken >= 1, "at least one broken trajectory on the torus");
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d broken torus trajectories, max residual %.1e", broken, worst);
  return {checks.ok(), checks.summary(buf)};
}

struct Spec {
  const char* name;
  double limit;
  Outcome (*run)(const RunConfig&);
};

const std::map<int, Spec>& registry() {
  static const std::map<int, Spec> specs = {
      {1, {"algebra roundtrip", 10, criterion_algebra_roundtrip}},
      {2, {"global sheaf pullback squares", 10, criterion_pullback_squares}},
      {3, {"fiber-product covering", 30, criterion_fiber_product}},
      {4, {"classification", 5, criterion_classification}},
      {5, {"stratification", 5, criterion_stratification}},
      {6, {"Day convolution", 30, criterion_day}},
      {7, {"representability roundtrip", 5, criterion_representability}},
      {8, {"cospecialization", 10, criterion_cospecialization}},
      {9, {"Morse demo", 60, criterion_morse}},
  };
  return specs;
}

}  // namespace

std::vector<int> criterion_ids() {
  std::vector<int> ids;
  for (const auto& [id, spec] : registry()) ids.push_back(id);
  return ids;
}

CriterionResult run_criterion(int id, const RunConfig& cfg) {
  auto it = registry().find(id);
  if (it == registry().end()) throw std::invalid_argument("unknown criterion " + std::to_string(id));
  const Spec& spec = it->second;
  CriterionResult r;
  r.id = id;
  r.name = spec.name;
  r.limit_seconds = spec.limit;
  auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = spec.run(cfg);
    r.checks_passed = o.ok;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.checks_passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_all(const RunConfig& cfg, const std::vector<int>& ids) {
  std::vector<CriterionResult> out;
  for (int id : ids.empty() ? criterion_ids() : ids) out.push_back(run_criterion(id, cfg));
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "[%s] %d %s (%.2f s / %.0f s): ", r.pass() ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.limit_seconds);
  return head + r.detail;
}

io::Json to_json(const CriterionResult& r) {
  return io::Json{{"id", r.id},
                  {"name", r.name},
                  {"checks_passed", r.checks_passed},
                  {"limit_seconds", r.limit_seconds},
                  {"detail", r.detail}};
}

}  // namespace bl::acceptance
