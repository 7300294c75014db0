#pragma once

// Gradient flow of a height function on compact surfaces embedded in R^3,
// critical points, and broken gradient trajectories found by shooting.
//
// Everything here is floating point with explicit tolerances; the extracted
// combinatorics (component counts, RepPoints) are exact.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "brokenlines/broken_line.hpp"
#include "brokenlines/rep_space.hpp"

namespace bl::morse {

struct Vec3 {
  double x = 0, y = 0, z = 0;
  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
};
double dot(Vec3 a, Vec3 b);
Vec3 cross(Vec3 a, Vec3 b);
double norm(Vec3 a);

struct MorseConfig {
  double tol_crit = 1e-8;
  double tol_end = 1e-4;
  double tol_reparam = 1e-5;
  double tol_inv = 1e-4;
  double tol_time = 1e-3;
  double step = 1e-3;
  double min_step = 1e-12;
  double horizon = 400.0;
  /// Distance at which a flow line is taken to have reached an extremum.
  double arrival_radius = 1e-4;
  /// Distance at which a flow line is taken to have reached a saddle.
  double saddle_arrival = 1e-6;
  double seed_radius = 1e-7;
  int ring_seeds = 32;
  int bisection_steps = 60;
  double merge_tol = 1e-6;
  int grid_seeds = 10;
  /// Spacing of the uniform h-grid of a reparametrized trajectory.
  double reparam_spacing = 1e-3;
  /// Flow time used by the invariance check.
  double invariance_time = 0.02;
  int invariance_stride = 10;
};

/// A compact surface with a parametrization and a height function
/// h(p) = <d, p> + eps * exp(-|p - c|^2 / s^2).
class Surface {
 public:
  virtual ~Surface() = default;
  virtual std::string name() const = 0;
  virtual Vec3 embed(double u, double v) const = 0;
  virtual std::array<double, 2> param_of(Vec3 p) const = 0;
  /// Nearest point on the surface.
  virtual Vec3 project(Vec3 p) const = 0;
  virtual Vec3 normal(Vec3 p) const = 0;
  /// (u_min, u_max, v_min, v_max) of the parameter chart.
  virtual std::array<double, 4> domain() const = 0;
  /// Winding data distinguishing homotopy classes of paths, if meaningful.
  virtual std::optional<std::array<long, 2>> lift_key(const std::vector<Vec3>& path) const = 0;

  double height(Vec3 p) const;
  Vec3 ambient_gradient(Vec3 p) const;
  /// Tangential gradient: ∇h - <n, ∇h> n.
  Vec3 gradient(Vec3 p) const;

  void set_direction(Vec3 d) { dir_ = d; }
  void set_bump(double eps, Vec3 center, double width);

 private:
  Vec3 dir_{0, 0, 1};
  double eps_ = 0;
  Vec3 center_{};
  double width_ = 1;
};

/// Unit sphere, h = z. The chart has its polar axis along x so both critical
/// points are interior to it.
std::unique_ptr<Surface> make_sphere();
/// Torus of revolution about the y-axis, X(u, v) = ((R + r cos v) cos u, r sin v,
/// (R + r cos v) sin u), with h = cos(tilt) z + sin(tilt) y. tilt = 0 is the
/// upright torus.
std::unique_ptr<Surface> make_torus(double big_r = 2.0, double small_r = 1.0, double tilt = 0.0);
/// "sphere", "torus", "torus-tilted".
std::unique_ptr<Surface> make_surface(const std::string& name);

struct CriticalPoint {
  Vec3 p;
  std::array<double, 2> param;
  double h = 0;
  double grad_norm = 0;
  int index = 0;
  std::array<double, 2> eigenvalues{};
  /// Unit tangent eigenvectors, matching `eigenvalues`.
  std::array<Vec3, 2> eigenvectors{};
};

/// Grid-seeded Newton iteration in tangent charts, merged within merge_tol and
/// sorted by height.
std::vector<CriticalPoint> find_critical_points(const Surface& s, const MorseConfig& cfg = {});
int euler_characteristic(const std::vector<CriticalPoint>& crits);

struct FlowLine {
  std::vector<Vec3> points;
  std::vector<double> times;
  /// Index into the critical point list where the line stopped, or -1.
  int end_critical = -1;
  bool underflow = false;
  bool monotone = true;
  bool horizon_reached = false;
};

/// Fourth-order Runge-Kutta along ±grad h with projection back to the surface,
/// halving the step whenever h fails to move in the flow direction. Stops on
/// arrival near a critical point other than `start_critical`. Throws
/// std::invalid_argument if x0 is itself critical.
FlowLine integrate_flow(const Surface& s, Vec3 x0, int direction, double horizon,
                        const std::vector<CriticalPoint>& crits, int start_critical,
                        const MorseConfig& cfg = {});

struct Segment {
  int from, to;
  /// Starts at the critical point `from` and ends at `to`; the interior points
  /// come from integration.
  std::vector<Vec3> points;
  /// Integrator times of points[1 .. size-2]; the endpoints carry NaN.
  std::vector<double> times;
};

struct BrokenTrajectory {
  std::vector<int> criticals;
  std::vector<Segment> segments;
  /// Uniform grid in h (plus the heights of the breakpoints) and p(t) on it.
  std::vector<double> t_grid;
  std::vector<Vec3> samples;
  int intermediate_count() const { return static_cast<int>(criticals.size()) - 2; }
};

struct TrajectoryReport {
  double endpoint_error = 0;
  double reparam_residual = 0;
  double invariance_error = 0;
  bool endpoints_ok = false;
  bool reparam_ok = false;
  bool invariance_ok = false;
  bool ok() const { return endpoints_ok && reparam_ok && invariance_ok; }
};

/// Connections between critical points found by shooting: ring seeds around
/// minima with bisection on the basin indicator, and both unstable seeds of
/// each saddle.
struct Connection {
  int from, to;
  FlowLine line;
};
std::vector<Connection> find_connections(const Surface& s, const std::vector<CriticalPoint>& crits,
                                         const MorseConfig& cfg = {});

/// Chains of connections from x to y, reparametrized and validated; only
/// validated trajectories are returned. Throws std::invalid_argument unless
/// h(x) < h(y).
std::vector<BrokenTrajectory> find_broken_trajectories(const Surface& s, const std::vector<CriticalPoint>& crits,
                                                       const std::vector<Connection>& connections, int x, int y,
                                                       const MorseConfig& cfg = {}, int max_results = 64);

/// Fills t_grid and samples so that h(p(t)) = t.
void reparametrize(const Surface& s, const std::vector<CriticalPoint>& crits, BrokenTrajectory& traj,
                   const MorseConfig& cfg = {});

/// The point of segment k at height t, by interpolation and Newton correction.
Vec3 point_at_height(const Surface& s, const Segment& seg, double t);

/// (a) endpoints, (b) max |h(p(t)) - t|, (c) flowing sample points for a short
/// time keeps them on the sampled image.
TrajectoryReport validate_trajectory(const Surface& s, const std::vector<CriticalPoint>& crits,
                                     const BrokenTrajectory& traj, const MorseConfig& cfg = {});

/// The straight chord in parameter space from (u0, v0) to (u1, v1), sampled on
/// a uniform grid of heights between its endpoints.
BrokenTrajectory chord_trajectory(const Surface& s, const std::vector<CriticalPoint>& crits, int x, int y,
                                  std::array<double, 2> from, std::array<double, 2> to, int samples);

/// One component per segment; marks at one interior point of each segment.
std::pair<BrokenLine, RepPoint> trajectory_to_line(const BrokenTrajectory& traj);

/// ∫ dh / |grad h|^2 along segment k between heights h1 < h2.
double flow_time_between(const Surface& s, const Segment& seg, double h1, double h2, int steps = 2000);

/// Polylines of flow lines in the parameter chart, as an SVG document.
std::string render_svg(const Surface& s, const std::vector<CriticalPoint>& crits,
                       const std::vector<BrokenTrajectory>& trajectories, const std::vector<FlowLine>& extra);

}  // namespace bl::morse
