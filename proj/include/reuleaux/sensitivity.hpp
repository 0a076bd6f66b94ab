#pragma once

#include "reuleaux/geometry.hpp"

namespace reuleaux {

/// Arcs shorter than this are treated as merged vertices by the sensitivity formulas.
inline constexpr double kMinArc = 1e-9;

/// Local frame of one boundary arc: its center, the unit radial vectors to both
/// endpoints and the unit bisector pointing from the center to the arc midpoint.
struct ArcFrame {
  Point2 center;
  Point2 w_start;
  Point2 w_end;
  Point2 bisector;
  double theta = 0.0;

  /// Frame of the arc from `start` to `end` on the unit circle around `center`.
  static ArcFrame from_endpoints(const Point2& center, const Point2& start, const Point2& end);
};

/// Frame of the arc x[i] -> x[i+1] of a disk-polygon.
ArcFrame arc_frame(const DiskPolygon& p, int i);

/// Integral of v . n over a unit arc of length theta: 2 sin(theta/2) v . b.
double avg_normal_on_arc(double theta, const Point2& v, const Point2& bisector);

/// Velocity of the arc center when its endpoints move with v_start and v_end, from
/// the Gram system [1 cos; cos 1] (a, b) = (v_start . w_start, v_end . w_end).
Point2 center_velocity(const ArcFrame& frame, const Point2& v_start, const Point2& v_end);

/// Contribution of one arc to the area derivative:
/// tan(theta/2) [w_start . v_start + w_end . v_end].
double arc_area_contribution(const ArcFrame& frame, const Point2& v_start, const Point2& v_end);

/// Gradient of the disk-polygon area with respect to each vertex (the two adjacent
/// arc contributions).
PerturbationField area_gradient_disk_polygon(const DiskPolygon& p);

/// Area derivative of a disk-polygon under the vertex velocity field v.
double area_derivative_disk_polygon(const DiskPolygon& p, const PerturbationField& v);

/// Moves vertex i to x_i + t v and recomputes the two opposite vertices
///   x_{i+k}(t)   on circle(x_i + t v) and circle(x_{i-1}),
///   x_{i+k+1}(t) on circle(x_i + t v) and circle(x_{i+1}),
/// choosing the root nearest the old position. Throws StepTooLarge if an arc leaves
/// (0, pi/3), a branch flips or the result is not of constant width, and
/// TriangleImmovable for n = 3.
ReuleauxPolygon propagate_vertex_perturbation(const ReuleauxPolygon& r, int i, const Point2& v,
                                              double t);

/// Unit bisector of the angle x_{i+k} x_i x_{i+k+1}, pointing into the polygon.
Point2 vertex_bisector(const ReuleauxPolygon& r, int i);

/// Unit tangent at x_i to the arc x_{i-1} x_i, oriented so that the arc grows.
Point2 blaschke_direction(const ReuleauxPolygon& r, int i);

/// Derivative of the area when vertex i moves along v and the polygon stays of
/// constant width:
///   2 sin(th_i/2) v.b + tan(th_{i+k}/2) v.(x_i - x_{i+k}) + tan(th_{i+k+1}/2) v.(x_i - x_{i+k+1}).
double directional_derivative_reuleaux(const ReuleauxPolygon& r, int i, const Point2& v);

/// (tan(th_{i+k}/2) - tan(th_i/2)) (x_i - x_{i+k}) + (tan(th_{i+k+1}/2) - tan(th_i/2)) (x_i - x_{i+k+1})
Point2 gradient_reuleaux(const ReuleauxPolygon& r, int i);
PerturbationField gradient_reuleaux(const ReuleauxPolygon& r);
/// Largest per-vertex gradient norm.
double max_gradient_norm(const ReuleauxPolygon& r);

/// Area derivative along blaschke_direction: sin th_i (tan(th_{i+k+1}/2) - tan(th_i/2)).
double blaschke_derivative(const ReuleauxPolygon& r, int i);

/// Second derivative of the area along the bisector path at a configuration with
/// th_i = th_{i+k} = th_{i+k+1} = theta:
/// 2 (sin(theta/2) sin(theta) - cos(3 theta/2)) / (cos(theta/2) sin(theta)).
double bisector_second_derivative(double theta);

/// Length of x_{i+1} x_{i-1} when the three arcs at a vertex equal theta:
/// -8 s^3 + 4 s with s = sin(theta/2). Diameter feasibility needs a value <= 1.
double critical_angle_bound_check(double theta);

/// Rates of change of the arc lengths touched by a move of vertex i along w.
struct ThetaRates {
  double next = 0.0;      // arc x_i x_{i+1}, length th_{i+k+1}
  double previous = 0.0;  // arc x_{i-1} x_i, length th_{i+k}
  double opposite = 0.0;  // arc x_{i+k} x_{i+k+1}, length th_i
};

/// next and previous use -cos(angle(w, x_i x_{i+-1})) / cos(th/2); opposite is
/// obtained by implicit differentiation of the two circle constraints that pin
/// x_{i+k} and x_{i+k+1}.
ThetaRates theta_rates(const ReuleauxPolygon& r, int i, const Point2& w);

/// Closed-form rate of the opposite arc,
///   -(cos(w, x_i x_{i+k}) cos(th_{i+k+1} + th_{i+1}/2) / sin th_{i+k}
///     + cos(w, x_i x_{i+k+1}) cos(th_{i+k} + th_{i+1}/2) / sin th_{i+k+1}) / cos(th_i/2).
/// Exact when th_i = th_{i+k} = th_{i+k+1} = th_{i+1}; only an approximation otherwise.
double opposite_theta_rate_symmetric(const ReuleauxPolygon& r, int i, const Point2& w);

/// Velocities of x_{i+k} and x_{i+k+1} when x_i moves with w.
std::pair<Point2, Point2> opposite_vertex_velocities(const ReuleauxPolygon& r, int i, const Point2& w);

}  // namespace reuleaux
