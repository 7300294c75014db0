#include "brokenlines/morse.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bl::morse {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Height differences below this are roundoff, not a failure of monotonicity.
constexpr double kHeightNoise = 1e-15;

Vec3 normalize(Vec3 a) { return (1.0 / norm(a)) * a; }

std::array<Vec3, 2> tangent_basis(const Surface& s, Vec3 p) {
  Vec3 n = s.normal(p);
  Vec3 axis{1, 0, 0};
  if (std::abs(n.y) <= std::abs(n.x) && std::abs(n.y) <= std::abs(n.z)) axis = {0, 1, 0};
  if (std::abs(n.z) <= std::abs(n.x) && std::abs(n.z) <= std::abs(n.y)) axis = {0, 0, 1};
  Vec3 e1 = normalize(cross(n, axis));
  return {e1, cross(n, e1)};
}

double wrap(double a) {
  while (a > kPi) a -= 2 * kPi;
  while (a < -kPi) a += 2 * kPi;
  return a;
}

class Sphere : public Surface {
 public:
  std::string name() const override { return "sphere"; }
  Vec3 embed(double u, double v) const override {
    return {std::cos(v), std::sin(v) * std::cos(u), std::sin(v) * std::sin(u)};
  }
  std::array<double, 2> param_of(Vec3 p) const override {
    return {std::atan2(p.z, p.y), std::acos(std::clamp(p.x / norm(p), -1.0, 1.0))};
  }
  Vec3 project(Vec3 p) const override { return normalize(p); }
  Vec3 normal(Vec3 p) const override { return normalize(p); }
  std::array<double, 4> domain() const override { return {-kPi, kPi, 0, kPi}; }
  std::optional<std::array<long, 2>> lift_key(const std::vector<Vec3>&) const override { return std::nullopt; }
};

class Torus : public Surface {
 public:
  Torus(double big_r, double small_r) : big_r_(big_r), small_r_(small_r) {}
  std::string name() const override { return "torus"; }
  Vec3 embed(double u, double v) const override {
    double w = big_r_ + small_r_ * std::cos(v);
    return {w * std::cos(u), small_r_ * std::sin(v), w * std::sin(u)};
  }
  std::array<double, 2> param_of(Vec3 p) const override {
    double u = std::atan2(p.z, p.x);
    double v = std::atan2(p.y, std::hypot(p.x, p.z) - big_r_);
    if (v < -kPi / 2) v += 2 * kPi;
    return {u, v};
  }
  Vec3 center(Vec3 p) const {
    double rho = std::hypot(p.x, p.z);
    return {big_r_ * p.x / rho, 0, big_r_ * p.z / rho};
  }
  Vec3 project(Vec3 p) const override {
    Vec3 c = center(p);
    return c + small_r_ * normalize(p - c);
  }
  Vec3 normal(Vec3 p) const override { return normalize(p - center(p)); }
  std::array<double, 4> domain() const override { return {-kPi, kPi, -kPi / 2, 3 * kPi / 2}; }
  std::optional<std::array<long, 2>> lift_key(const std::vector<Vec3>& path) const override {
    if (path.empty()) return std::array<long, 2>{0, 0};
    double du = 0, dv = 0;
    auto prev = param_of(path.front());
    for (std::size_t i = 1; i < path.size(); ++i) {
      auto cur = param_of(path[i]);
      du += wrap(cur[0] - prev[0]);
      dv += wrap(cur[1] - prev[1]);
      prev = cur;
    }
    return std::array<long, 2>{std::lround(du / kPi), std::lround(dv / kPi)};
  }

 private:
  double big_r_, small_r_;
};

// Decimates stored points to roughly this spacing.
constexpr double kKeepSpacing = 1e-3;

}  // namespace

double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(Vec3 a, Vec3 b) { return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x}; }
double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

double Surface::height(Vec3 p) const {
  double h = dot(dir_, p);
  if (eps_ != 0) {
    Vec3 d = p - center_;
    h += eps_ * std::exp(-dot(d, d) / (width_ * width_));
  }
  return h;
}

Vec3 Surface::ambient_gradient(Vec3 p) const {
  Vec3 g = dir_;
  if (eps_ != 0) {
    Vec3 d = p - center_;
    double w2 = width_ * width_;
    g = g + (-2.0 * eps_ * std::exp(-dot(d, d) / w2) / w2) * d;
  }
  return g;
}

Vec3 Surface::gradient(Vec3 p) const {
  Vec3 g = ambient_gradient(p);
  Vec3 n = normal(p);
  return g - dot(n, g) * n;
}

void Surface::set_bump(double eps, Vec3 center, double width) {
  eps_ = eps;
  center_ = center;
  width_ = width;
}

std::unique_ptr<Surface> make_sphere() { return std::make_unique<Sphere>(); }

std::unique_ptr<Surface> make_torus(double big_r, double small_r, double tilt) {
  if (!(big_r > small_r && small_r > 0)) throw std::invalid_argument("torus needs R > r > 0");
  auto t = std::make_unique<Torus>(big_r, small_r);
  t->set_direction({0, std::sin(tilt), std::cos(tilt)});
  return t;
}

std::unique_ptr<Surface> make_surface(const std::string& name) {
  if (name == "sphere") return make_sphere();
  if (name == "torus") return make_torus();
  if (name == "torus-tilted") return make_torus(2.0, 1.0, 0.3);
  throw std::invalid_argument("unknown surface: " + name);
}

// ---------------------------------------------------------------------------
// Critical points

namespace {

// Tangential gradient in the chart q(a, b) = project(p + a e1 + b e2).
std::array<double, 2> chart_gradient(const Surface& s, Vec3 p, const std::array<Vec3, 2>& e, double a, double b) {
  Vec3 q = s.project(p + a * e[0] + b * e[1]);
  Vec3 g = s.gradient(q);
  return {dot(g, e[0]), dot(g, e[1])};
}

std::array<std::array<double, 2>, 2> chart_jacobian(const Surface& s, Vec3 p, const std::array<Vec3, 2>& e) {
  constexpr double d = 1e-6;
  std::array<std::array<double, 2>, 2> j{};
  for (int c = 0; c < 2; ++c) {
    auto plus = chart_gradient(s, p, e, c == 0 ? d : 0, c == 1 ? d : 0);
    auto minus = chart_gradient(s, p, e, c == 0 ? -d : 0, c == 1 ? -d : 0);
    for (int r = 0; r < 2; ++r) j[r][c] = (plus[r] - minus[r]) / (2 * d);
  }
  return j;
}

std::optional<Vec3> newton_critical(const Surface& s, Vec3 seed) {
  Vec3 p = s.project(seed);
  for (int iter = 0; iter < 100; ++iter) {
    Vec3 g = s.gradient(p);
    if (norm(g) < 1e-14) break;
    auto e = tangent_basis(s, p);
    auto j = chart_jacobian(s, p, e);
    double g1 = dot(g, e[0]), g2 = dot(g, e[1]);
    double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    if (std::abs(det) < 1e-14) return std::nullopt;
    double a = -(j[1][1] * g1 - j[0][1] * g2) / det;
    double b = -(-j[1][0] * g1 + j[0][0] * g2) / det;
    double len = std::hypot(a, b);
    if (len > 0.3) {
      a *= 0.3 / len;
      b *= 0.3 / len;
    }
    p = s.project(p + a * e[0] + b * e[1]);
    if (len < 1e-16) break;
  }
  return p;
}

}  // namespace

std::vector<CriticalPoint> find_critical_points(const Surface& s, const MorseConfig& cfg) {
  auto dom = s.domain();
  std::vector<CriticalPoint> out;
  const int k = cfg.grid_seeds;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      double u = dom[0] + (dom[1] - dom[0]) * (a + 0.5) / k;
      double v = dom[2] + (dom[3] - dom[2]) * (b + 0.5) / k;
      auto p = newton_critical(s, s.embed(u, v));
      if (!p) continue;
      double gn = norm(s.gradient(*p));
      if (gn >= cfg.tol_crit) continue;
      bool dup = false;
      for (const auto& c : out) dup = dup || norm(c.p - *p) < cfg.merge_tol;
      if (dup) continue;
      CriticalPoint c;
      c.p = *p;
      c.param = s.param_of(*p);
      c.h = s.height(*p);
      c.grad_norm = gn;
      auto e = tangent_basis(s, *p);
      auto j = chart_jacobian(s, *p, e);
      double h00 = j[0][0], h11 = j[1][1], h01 = 0.5 * (j[0][1] + j[1][0]);
      double mean = 0.5 * (h00 + h11);
      double rad = std::hypot(0.5 * (h00 - h11), h01);
      c.eigenvalues = {mean - rad, mean + rad};
      for (int i = 0; i < 2; ++i) {
        double lam = c.eigenvalues[i];
        // (h01, lam - h00) and (lam - h11, h01) both solve the eigen equation;
        // take the longer for stability.
        double x1 = h01, y1 = lam - h00, x2 = lam - h11, y2 = h01;
        double ex = x1, ey = y1;
        if (std::hypot(x2, y2) > std::hypot(x1, y1)) {
          ex = x2;
          ey = y2;
        }
        if (std::hypot(ex, ey) < 1e-300) {
          ex = i == 0 ? 1 : 0;
          ey = i == 0 ? 0 : 1;
        }
        c.eigenvectors[i] = normalize(ex * e[0] + ey * e[1]);
      }
      c.index = (c.eigenvalues[0] < 0) + (c.eigenvalues[1] < 0);
      out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& x, const CriticalPoint& y) {
    if (x.h != y.h) return x.h < y.h;
    return x.param < y.param;
  });
  return out;
}

int euler_characteristic(const std::vector<CriticalPoint>& crits) {
  int chi = 0;
  for (const auto& c : crits) chi += c.index % 2 == 0 ? 1 : -1;
  return chi;
}

// ---------------------------------------------------------------------------
// Flow

namespace {

Vec3 rk4(const Surface& s, Vec3 p, double dt) {
  Vec3 k1 = s.gradient(p);
  Vec3 k2 = s.gradient(p + (dt / 2) * k1);
  Vec3 k3 = s.gradient(p + (dt / 2) * k2);
  Vec3 k4 = s.gradient(p + dt * k3);
  return s.project(p + (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace

FlowLine integrate_flow(const Surface& s, Vec3 x0, int direction, double horizon,
                        const std::vector<CriticalPoint>& crits, int start_critical, const MorseConfig& cfg) {
  if (direction != 1 && direction != -1) throw std::invalid_argument("direction must be +1 or -1");
  Vec3 p = s.project(x0);
  if (norm(s.gradient(p)) < cfg.tol_crit) throw std::invalid_argument("flow started at a critical point");
  FlowLine line;
  line.points.push_back(p);
  line.times.push_back(0);
  double t = 0, dt = cfg.step;
  double hp = s.height(p);
  Vec3 last_kept = p;
  const int extremum_index = direction > 0 ? 2 : 0;
  while (true) {
    if (t >= horizon) {
      line.horizon_reached = true;
      break;
    }
    Vec3 q = rk4(s, p, direction * dt);
    double hq = s.height(q);
    if (direction * (hq - hp) < -kHeightNoise) {
      dt /= 2;
      if (dt < cfg.min_step) {
        line.underflow = true;
        line.monotone = false;
        break;
      }
      continue;
    }
    p = q;
    hp = hq;
    t += dt;
    dt = std::min(cfg.step, 2 * dt);
    int arrived = -1;
    for (int c = 0; c < static_cast<int>(crits.size()); ++c) {
      if (c == start_critical) continue;
      double radius = crits[c].index == extremum_index ? cfg.arrival_radius : cfg.saddle_arrival;
      if (norm(p - crits[c].p) < radius) {
        arrived = c;
        break;
      }
    }
    if (arrived >= 0 || norm(p - last_kept) >= kKeepSpacing) {
      line.points.push_back(p);
      line.times.push_back(t);
      last_kept = p;
    }
    if (arrived >= 0) {
      line.end_critical = arrived;
      break;
    }
  }
  if (line.points.size() == 1 || !(norm(line.points.back() - p) == 0)) {
    line.points.push_back(p);
    line.times.push_back(t);
  }
  return line;
}

// ---------------------------------------------------------------------------
// Shooting

namespace {

struct Indicator {
  int end;
  std::optional<std::array<long, 2>> key;
  friend bool operator==(const Indicator&, const Indicator&) = default;
};

Indicator indicator_of(const Surface& s, const FlowLine& line) { return {line.end_critical, s.lift_key(line.points)}; }

// Seeds on an ellipse whose semi-axes the linearized flow carries out in equal
// time; a round ring would leave almost every seed along the fast direction.
Vec3 ring_seed(const CriticalPoint& c, double radius, double angle) {
  double fast = std::max(c.eigenvalues[0], c.eigenvalues[1]);
  double r0 = std::pow(radius, c.eigenvalues[0] / fast);
  double r1 = std::pow(radius, c.eigenvalues[1] / fast);
  return c.p + (r0 * std::cos(angle)) * c.eigenvectors[0] + (r1 * std::sin(angle)) * c.eigenvectors[1];
}

Vec3 midpoint_of(const Surface& s, const std::vector<CriticalPoint>& crits, const Connection& c) {
  double mid = 0.5 * (crits[c.from].h + crits[c.to].h);
  const auto& pts = c.line.points;
  std::size_t best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::abs(s.height(pts[i]) - mid) < std::abs(s.height(pts[best]) - mid)) best = i;
  }
  return pts[best];
}

void add_connection(const Surface& s, const std::vector<CriticalPoint>& crits, std::vector<Connection>& out,
                    Connection c) {
  Vec3 m = midpoint_of(s, crits, c);
  for (const auto& o : out) {
    if (o.from == c.from && o.to == c.to && norm(midpoint_of(s, crits, o) - m) < 1e-2) return;
  }
  out.push_back(std::move(c));
}

}  // namespace

std::vector<Connection> find_connections(const Surface& s, const std::vector<CriticalPoint>& crits,
                                         const MorseConfig& cfg) {
  std::vector<Connection> out;
  for (int c = 0; c < static_cast<int>(crits.size()); ++c) {
    const auto& cp = crits[c];
    auto shoot = [&](Vec3 seed) { return integrate_flow(s, seed, 1, cfg.horizon, crits, c, cfg); };
    if (cp.index == 0) {
      const int k = cfg.ring_seeds;
      std::vector<double> angle(k);
      std::vector<FlowLine> lines;
      std::vector<Indicator> ind;
      for (int i = 0; i < k; ++i) {
        angle[i] = 2 * kPi * i / k;
        lines.push_back(shoot(s.project(ring_seed(cp, cfg.seed_radius, angle[i]))));
        ind.push_back(indicator_of(s, lines.back()));
      }
      for (int i = 0; i < k; ++i) {
        if (lines[i].end_critical >= 0) add_connection(s, crits, out, {c, lines[i].end_critical, lines[i]});
      }
      // A change of basin between neighbouring seeds brackets a separatrix.
      for (int i = 0; i < k; ++i) {
        int j = (i + 1) % k;
        if (ind[i] == ind[j]) continue;
        double lo = angle[i], hi = j == 0 ? 2 * kPi : angle[j];
        Indicator ind_lo = ind[i];
        for (int step = 0; step < cfg.bisection_steps; ++step) {
          double mid = 0.5 * (lo + hi);
          FlowLine line = shoot(s.project(ring_seed(cp, cfg.seed_radius, mid)));
          int end = line.end_critical;
          if (end >= 0 && crits[end].index == 1) {
            add_connection(s, crits, out, {c, end, std::move(line)});
            break;
          }
          if (indicator_of(s, line) == ind_lo) lo = mid;
          else hi = mid;
        }
      }
    } else if (cp.index == 1) {
      // The unstable direction is the eigenvector with positive eigenvalue.
      Vec3 e = cp.eigenvectors[1];
      for (double sign : {1.0, -1.0}) {
        FlowLine line = shoot(s.project(cp.p + (sign * cfg.seed_radius) * e));
        if (line.end_critical >= 0) add_connection(s, crits, out, {c, line.end_critical, std::move(line)});
      }
      // Stable branches, traced backwards. Forward shooting cannot resolve
      // separatrices that pass exponentially close to another saddle.
      Vec3 f = cp.eigenvectors[0];
      for (double sign : {1.0, -1.0}) {
        FlowLine back = integrate_flow(s, s.project(cp.p + (sign * cfg.seed_radius) * f), -1, cfg.horizon, crits, c, cfg);
        if (back.end_critical < 0) continue;
        FlowLine line;
        line.points.assign(back.points.rbegin(), back.points.rend());
        const double total = back.times.back();
        for (auto it = back.times.rbegin(); it != back.times.rend(); ++it) line.times.push_back(total - *it);
        line.end_critical = c;
        add_connection(s, crits, out, {back.end_critical, c, std::move(line)});
      }
    }
  }
  return out;
}

namespace {

Segment make_segment(const std::vector<CriticalPoint>& crits, const Connection& conn) {
  Segment seg{conn.from, conn.to, {}, {}};
  seg.points.push_back(crits[conn.from].p);
  seg.times.push_back(kNaN);
  for (std::size_t i = 0; i < conn.line.points.size(); ++i) {
    seg.points.push_back(conn.line.points[i]);
    seg.times.push_back(conn.line.times[i]);
  }
  seg.points.push_back(crits[conn.to].p);
  seg.times.push_back(kNaN);
  return seg;
}

}  // namespace

Vec3 point_at_height(const Surface& s, const Segment& seg, double t) {
  const auto& pts = seg.points;
  const double h0 = s.height(pts.front()), h1 = s.height(pts.back());
  if (t <= h0) return pts.front();
  if (t >= h1) return pts.back();
  // First stored point at or above t.
  std::size_t lo = 0, hi = pts.size() - 1;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (s.height(pts[mid]) < t) lo = mid;
    else hi = mid;
  }
  double ha = s.height(pts[lo]), hb = s.height(pts[hi]);
  double w = hb > ha ? (t - ha) / (hb - ha) : 0.5;
  Vec3 p = s.project(pts[lo] + w * (pts[hi] - pts[lo]));
  for (int iter = 0; iter < 30; ++iter) {
    double r = t - s.height(p);
    if (std::abs(r) < 1e-14) break;
    Vec3 g = s.gradient(p);
    double g2 = dot(g, g);
    if (g2 < 1e-28) break;
    Vec3 step = (r / g2) * g;
    double len = norm(step);
    if (len > 1e-2) step = (1e-2 / len) * step;
    p = s.project(p + step);
  }
  return p;
}

void reparametrize(const Surface& s, const std::vector<CriticalPoint>& crits, BrokenTrajectory& traj,
                   const MorseConfig& cfg) {
  traj.t_grid.clear();
  traj.samples.clear();
  for (std::size_t k = 0; k < traj.segments.size(); ++k) {
    const auto& seg = traj.segments[k];
    double a = crits[seg.from].h, b = crits[seg.to].h;
    int n = std::max(2, static_cast<int>(std::ceil((b - a) / cfg.reparam_spacing)));
    for (int i = (k == 0 ? 0 : 1); i <= n; ++i) {
      double t = i == n ? b : a + (b - a) * i / n;
      traj.t_grid.push_back(t);
      if (i == 0) traj.samples.push_back(crits[seg.from].p);
      else if (i == n) traj.samples.push_back(crits[seg.to].p);
      else traj.samples.push_back(point_at_height(s, seg, t));
    }
  }
}

std::vector<BrokenTrajectory> find_broken_trajectories(const Surface& s, const std::vector<CriticalPoint>& crits,
                                                       const std::vector<Connection>& connections, int x, int y,
                                                       const MorseConfig& cfg, int max_results) {
  if (!(crits.at(x).h < crits.at(y).h)) throw std::invalid_argument("need h(x) < h(y)");
  std::vector<std::vector<int>> chains;
  std::vector<int> chain;
  std::function<void(int)> dfs = [&](int at) {
    if (at == y) {
      chains.push_back(chain);
      return;
    }
    for (int e = 0; e < static_cast<int>(connections.size()); ++e) {
      const auto& conn = connections[e];
      if (conn.from != at || crits[conn.to].h > crits[y].h) continue;
      chain.push_back(e);
      dfs(conn.to);
      chain.pop_back();
    }
  };
  dfs(x);
  // Most broken first, then discovery order.
  std::stable_sort(chains.begin(), chains.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) { return a.size() > b.size(); });
  std::vector<BrokenTrajectory> out;
  for (const auto& ch : chains) {
    if (static_cast<int>(out.size()) >= max_results) break;
    BrokenTrajectory traj;
    traj.criticals.push_back(x);
    for (int e : ch) {
      traj.segments.push_back(make_segment(crits, connections[e]));
      traj.criticals.push_back(connections[e].to);
    }
    reparametrize(s, crits, traj, cfg);
    if (validate_trajectory(s, crits, traj, cfg).ok()) out.push_back(std::move(traj));
  }
  return out;
}

namespace {

double point_segment_distance(Vec3 q, Vec3 a, Vec3 b) {
  Vec3 ab = b - a;
  double len2 = dot(ab, ab);
  double w = len2 > 0 ? std::clamp(dot(q - a, ab) / len2, 0.0, 1.0) : 0.0;
  return norm(q - (a + w * ab));
}

Vec3 flow_for(const Surface& s, Vec3 p, double time, double step) {
  int n = std::max(1, static_cast<int>(std::ceil(time / step)));
  double dt = time / n;
  for (int i = 0; i < n; ++i) p = rk4(s, p, dt);
  return p;
}

}  // namespace

TrajectoryReport validate_trajectory(const Surface& s, const std::vector<CriticalPoint>& crits,
                                     const BrokenTrajectory& traj, const MorseConfig& cfg) {
  TrajectoryReport r;
  if (traj.samples.empty()) return r;
  const auto& x = crits.at(traj.criticals.front());
  const auto& y = crits.at(traj.criticals.back());
  // (a) the path starts at x at time h(x) and ends at y at time h(y).
  r.endpoint_error = std::max(norm(traj.samples.front() - x.p) + std::abs(traj.t_grid.front() - x.h),
                              norm(traj.samples.back() - y.p) + std::abs(traj.t_grid.back() - y.h));
  r.endpoints_ok = r.endpoint_error < cfg.tol_end;
  // (b) h(p(t)) = t.
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    r.reparam_residual = std::max(r.reparam_residual, std::abs(s.height(traj.samples[i]) - traj.t_grid[i]));
  }
  r.reparam_ok = r.reparam_residual < cfg.tol_reparam;
  // (c) the image is invariant under the flow.
  const auto& pts = traj.samples;
  for (std::size_t i = 0; i < pts.size(); i += cfg.invariance_stride) {
    if (norm(s.gradient(pts[i])) < cfg.tol_crit) continue;
    Vec3 q = flow_for(s, pts[i], cfg.invariance_time, cfg.step);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < pts.size(); ++j) best = std::min(best, point_segment_distance(q, pts[j], pts[j + 1]));
    r.invariance_error = std::max(r.invariance_error, best);
  }
  r.invariance_ok = r.invariance_error < cfg.tol_inv;
  return r;
}

BrokenTrajectory chord_trajectory(const Surface& s, const std::vector<CriticalPoint>& crits, int x, int y,
                                  std::array<double, 2> from, std::array<double, 2> to, int samples) {
  BrokenTrajectory traj;
  traj.criticals = {x, y};
  Segment seg{x, y, {}, {}};
  const double hx = crits.at(x).h, hy = crits.at(y).h;
  for (int i = 0; i <= samples; ++i) {
    double w = static_cast<double>(i) / samples;
    Vec3 p = s.embed(from[0] + w * (to[0] - from[0]), from[1] + w * (to[1] - from[1]));
    seg.points.push_back(p);
    seg.times.push_back(kNaN);
    traj.t_grid.push_back(hx + w * (hy - hx));
    traj.samples.push_back(p);
  }
  traj.segments.push_back(std::move(seg));
  return traj;
}

std::pair<BrokenLine, RepPoint> trajectory_to_line(const BrokenTrajectory& traj) {
  const int m = static_cast<int>(traj.segments.size());
  if (m < 1) throw std::invalid_argument("trajectory has no segments");
  BrokenLine line{m};
  std::vector<LinePoint> marks;
  for (int a = 1; a <= m; ++a) marks.push_back(LinePoint{a, ExtReal(0)});
  return {line, extract_alpha(line, marks, LinPreorder::chain(m))};
}

double flow_time_between(const Surface& s, const Segment& seg, double h1, double h2, int steps) {
  if (steps % 2) ++steps;
  auto f = [&](double h) {
    Vec3 g = s.gradient(point_at_height(s, seg, h));
    return 1.0 / dot(g, g);
  };
  double dh = (h2 - h1) / steps;
  double acc = f(h1) + f(h2);
  for (int i = 1; i < steps; ++i) acc += (i % 2 ? 4 : 2) * f(h1 + i * dh);
  return acc * dh / 3;
}

std::string render_svg(const Surface& s, const std::vector<CriticalPoint>& crits,
                       const std::vector<BrokenTrajectory>& trajectories, const std::vector<FlowLine>& extra) {
  const auto dom = s.domain();
  const double width = 720, height = width * (dom[3] - dom[2]) / (dom[1] - dom[0]), pad = 20;
  auto sx = [&](double u) { return pad + (u - dom[0]) / (dom[1] - dom[0]) * width; };
  auto sy = [&](double v) { return pad + (dom[3] - v) / (dom[3] - dom[2]) * height; };
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width + 2 * pad << "\" height=\"" << height + 2 * pad
     << "\">\n";
  os << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << width << "\" height=\"" << height
     << "\" fill=\"none\" stroke=\"#999\"/>\n";
  auto polyline = [&](const std::vector<Vec3>& pts, const char* color) {
    std::vector<std::array<double, 2>> run;
    auto flush = [&]() {
      if (run.size() > 1) {
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
        for (auto& q : run) os << sx(q[0]) << "," << sy(q[1]) << " ";
        os << "\"/>\n";
      }
      run.clear();
    };
    for (const auto& p : pts) {
      auto q = s.param_of(p);
      // Break the polyline where it crosses a seam of the chart.
      if (!run.empty() && (std::abs(q[0] - run.back()[0]) > kPi || std::abs(q[1] - run.back()[1]) > kPi)) flush();
      run.push_back(q);
    }
    flush();
  };
  for (const auto& f : extra) polyline(f.points, "#9ab");
  for (const auto& t : trajectories) polyline(t.samples, t.intermediate_count() > 0 ? "#c33" : "#36c");
  const char* colors[] = {"#2a2", "#e90", "#c22"};
  for (const auto& c : crits) {
    os << "<circle cx=\"" << sx(c.param[0]) << "\" cy=\"" << sy(c.param[1]) << "\" r=\"4\" fill=\""
       << colors[std::clamp(c.index, 0, 2)] << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace bl::morse
