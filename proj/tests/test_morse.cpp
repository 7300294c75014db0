#include <cmath>
#include <map>
#include <set>

#include "doctest.h"

#include "brokenlines/morse.hpp"

using namespace bl;
using namespace bl::morse;

namespace {

struct Scene {
  std::unique_ptr<Surface> surface;
  std::vector<CriticalPoint> crits;
  std::vector<Connection> connections;
  std::vector<BrokenTrajectory> trajectories;
};

// Shooting is the slow part, so each surface is solved once.
const Scene& scene(const std::string& name) {
  static std::map<std::string, Scene> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  Scene sc;
  sc.surface = make_surface(name);
  sc.crits = find_critical_points(*sc.surface);
  sc.connections = find_connections(*sc.surface, sc.crits);
  sc.trajectories = find_broken_trajectories(*sc.surface, sc.crits, sc.connections, 0,
                                             static_cast<int>(sc.crits.size()) - 1);
  return cache.emplace(name, std::move(sc)).first->second;
}

}  // namespace

TEST_CASE("sphere: two critical points, unbroken trajectories") {
  const auto& sc = scene("sphere");
  REQUIRE(sc.crits.size() == 2);
  CHECK(sc.crits[0].index == 0);
  CHECK(sc.crits[1].index == 2);
  CHECK(sc.crits[0].p.z == doctest::Approx(-1).epsilon(1e-9));
  CHECK(sc.crits[1].p.z == doctest::Approx(1).epsilon(1e-9));
  CHECK(euler_characteristic(sc.crits) == 2);
  CHECK(sc.trajectories.size() >= 8);
  for (const auto& t : sc.trajectories) {
    CHECK(t.intermediate_count() == 0);
    CHECK(validate_trajectory(*sc.surface, sc.crits, t).ok());
  }
}

TEST_CASE("torus: four critical points and broken trajectories") {
  const auto& sc = scene("torus");
  REQUIRE(sc.crits.size() == 4);
  std::multiset<int> indices;
  for (const auto& c : sc.crits) {
    indices.insert(c.index);
    CHECK(c.grad_norm < MorseConfig{}.tol_crit);
  }
  CHECK(indices == std::multiset<int>{0, 1, 1, 2});
  CHECK(euler_characteristic(sc.crits) == 0);
  for (std::size_t i = 1; i < sc.crits.size(); ++i) CHECK(sc.crits[i - 1].h <= sc.crits[i].h);
  int broken = 0;
  for (const auto& t : sc.trajectories) {
    auto report = validate_trajectory(*sc.surface, sc.crits, t);
    CHECK(report.ok());
    CHECK(t.criticals.front() == 0);
    CHECK(t.criticals.back() == 3);
    for (std::size_t k = 1; k < t.criticals.size(); ++k) {
      CHECK(sc.crits[t.criticals[k - 1]].h < sc.crits[t.criticals[k]].h);
    }
    broken += t.intermediate_count() >= 1;
  }
  CHECK(broken >= 1);
}

TEST_CASE("trajectory_to_line: one component per segment, infinite gaps") {
  const auto& sc = scene("torus");
  for (const auto& t : sc.trajectories) {
    auto [line, alpha] = trajectory_to_line(t);
    CHECK(line.m == static_cast<int>(t.segments.size()));
    CHECK(line.m == t.intermediate_count() + 1);
    CHECK_FALSE(validate(alpha).has_value());
    for (int i = 0; i + 1 < alpha.size(); ++i) CHECK(alpha(i, i + 1).is_pos_inf());
    for (int i = 0; i < alpha.size(); ++i) CHECK(alpha(i, i) == ExtReal(0));
  }
  CHECK_THROWS_AS(trajectory_to_line(BrokenTrajectory{}), std::invalid_argument);
}

TEST_CASE("a straight chord is not a gradient trajectory") {
  // From the minimum to the maximum of the torus while winding once around the tube.
  const auto& sc = scene("torus");
  auto to = sc.crits[3].param;
  to[1] += 2 * M_PI;
  auto chord = chord_trajectory(*sc.surface, sc.crits, 0, 3, sc.crits[0].param, to, 400);
  CHECK(validate_trajectory(*sc.surface, sc.crits, chord).endpoints_ok);
  auto report = validate_trajectory(*sc.surface, sc.crits, chord);
  CHECK_FALSE(report.reparam_ok);
  CHECK_FALSE(report.invariance_ok);
  CHECK_FALSE(report.ok());
}

TEST_CASE("validation ignores a shift of the integrator clock") {
  const auto& sc = scene("torus");
  REQUIRE_FALSE(sc.trajectories.empty());
  auto t = sc.trajectories.front();
  auto before = validate_trajectory(*sc.surface, sc.crits, t);
  for (auto& seg : t.segments) {
    for (auto& time : seg.times) time += 17.5;
  }
  auto after = validate_trajectory(*sc.surface, sc.crits, t);
  CHECK(after.ok() == before.ok());
  CHECK(after.reparam_residual == before.reparam_residual);
  CHECK(after.invariance_error == before.invariance_error);
}

TEST_CASE("flow lines are monotone in h and stop at critical points") {
  const auto& sc = scene("torus");
  const auto& s = *sc.surface;
  for (double u : {0.3, 1.7, 2.9, 4.4}) {
    for (double v : {0.5, 2.0, 3.9}) {
      Vec3 x0 = s.embed(u, v);
      for (int dir : {+1, -1}) {
        auto line = integrate_flow(s, x0, dir, 400.0, sc.crits, -1);
        CHECK(line.monotone);
        CHECK_FALSE(line.underflow);
        for (std::size_t k = 1; k < line.points.size(); ++k) {
          double dh = s.height(line.points[k]) - s.height(line.points[k - 1]);
          CHECK(dir * dh >= -1e-12);
          CHECK(line.times[k] > line.times[k - 1]);
        }
        if (line.end_critical >= 0) {
          // Ascending flows end at a maximum or saddle, descending ones at a minimum or saddle.
          CHECK(sc.crits[line.end_critical].index != (dir > 0 ? 0 : 2));
        }
      }
    }
  }
  CHECK_THROWS_AS(integrate_flow(s, sc.crits[1].p, +1, 10.0, sc.crits, -1), std::invalid_argument);
}

TEST_CASE("broken trajectories require h(x) < h(y)") {
  const auto& sc = scene("torus");
  CHECK_THROWS_AS(find_broken_trajectories(*sc.surface, sc.crits, sc.connections, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(find_broken_trajectories(*sc.surface, sc.crits, sc.connections, 1, 1), std::invalid_argument);
}

TEST_CASE("flow time by quadrature matches the integrator") {
  const auto& sc = scene("sphere");
  const auto& s = *sc.surface;
  REQUIRE_FALSE(sc.trajectories.empty());
  int compared = 0;
  for (const auto& t : sc.trajectories) {
    const auto& seg = t.segments.front();
    const std::size_t n = seg.points.size();
    if (n < 10) continue;
    // Stay away from the endpoints, where 1 / |grad h|^2 blows up.
    std::size_t i = n / 4, j = 3 * n / 4;
    double h1 = s.height(seg.points[i]), h2 = s.height(seg.points[j]);
    if (!(h2 - h1 > 0.1)) continue;
    double quad = flow_time_between(s, seg, h1, h2);
    double integ = seg.times[j] - seg.times[i];
    CHECK(std::abs(quad - integ) < 1e-3 * std::max(1.0, integ));
    ++compared;
  }
  CHECK(compared >= 1);
}

TEST_CASE("a small bump does not change the critical structure") {
  const auto& base = scene("torus");
  auto s = make_torus();
  s->set_bump(1e-3, Vec3{0, 0, 0}, 0.5);
  auto crits = find_critical_points(*s);
  REQUIRE(crits.size() == base.crits.size());
  for (std::size_t i = 0; i < crits.size(); ++i) {
    CHECK(crits[i].index == base.crits[i].index);
    CHECK(norm(crits[i].p - base.crits[i].p) < 1e-2);
  }
  CHECK(euler_characteristic(crits) == 0);
}

TEST_CASE("tilting the torus changes the number of pieces") {
  auto s = make_surface("torus-tilted");
  auto crits = find_critical_points(*s);
  REQUIRE(crits.size() == 4);
  CHECK(euler_characteristic(crits) == 0);
  CHECK_THROWS(make_surface("klein"));
}

TEST_CASE("SVG rendering") {
  const auto& sc = scene("sphere");
  auto svg = render_svg(*sc.surface, sc.crits, sc.trajectories, {});
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
}
