#include "reuleaux/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace reuleaux {

namespace {

constexpr double kPi = std::numbers::pi;

void require_movable(const ReuleauxPolygon& r) {
  if (r.size() == 3) {
    throw Error(Errc::TriangleImmovable, "single-vertex perturbations do not exist for the Reuleaux triangle");
  }
}

void require_arc(double theta) {
  if (!(theta > kMinArc)) throw Error(Errc::SingularArc, "arc length below the merge threshold");
}

Point2 solve2(const Point2& row0, const Point2& row1, double rhs0, double rhs1) {
  const double det = cross(row0, row1);
  if (std::abs(det) < 1e-14) throw Error(Errc::SingularArc, "tangent circles in vertex velocity solve");
  return Point2((rhs0 * row1.y() - rhs1 * row0.y()) / det, (row0.x() * rhs1 - row1.x() * rhs0) / det);
}

}  // namespace

ArcFrame ArcFrame::from_endpoints(const Point2& center, const Point2& start, const Point2& end) {
  ArcFrame f;
  f.center = center;
  f.w_start = start - center;
  f.w_end = end - center;
  f.theta = std::atan2(cross(f.w_start, f.w_end), dot(f.w_start, f.w_end));
  if (!(f.theta > kMinArc && f.theta < kPi - kMinArc)) {
    throw Error(Errc::SingularArc, "arc must be non-degenerate and shorter than a half circle");
  }
  f.bisector = normalized(f.w_start + f.w_end);
  return f;
}

ArcFrame arc_frame(const DiskPolygon& p, int i) {
  return ArcFrame::from_endpoints(p.arc_center(i), p.vertex(i), p.vertex(i + 1));
}

double avg_normal_on_arc(double theta, const Point2& v, const Point2& bisector) {
  if (!(theta > 0.0 && theta < kPi)) throw Error(Errc::OutOfRange, "arc length must lie in (0, pi)");
  return 2.0 * std::sin(theta / 2.0) * dot(v, bisector);
}

Point2 center_velocity(const ArcFrame& f, const Point2& v_start, const Point2& v_end) {
  const double c = dot(f.w_start, f.w_end);
  const double det = 1.0 - c * c;
  if (std::sqrt(std::max(det, 0.0)) < 1e-12) throw Error(Errc::SingularArc, "Gram system is singular");
  const double r0 = dot(v_start, f.w_start);
  const double r1 = dot(v_end, f.w_end);
  const double a = (r0 - c * r1) / det;
  const double b = (r1 - c * r0) / det;
  return a * f.w_start + b * f.w_end;
}

double arc_area_contribution(const ArcFrame& f, const Point2& v_start, const Point2& v_end) {
  if (std::abs(std::sin(f.theta)) < 1e-12) throw Error(Errc::SingularArc, "Gram system is singular");
  return std::tan(f.theta / 2.0) * (dot(f.w_start, v_start) + dot(f.w_end, v_end));
}

PerturbationField area_gradient_disk_polygon(const DiskPolygon& p) {
  const int n = p.size();
  std::vector<ArcFrame> frames;
  frames.reserve(n);
  for (int i = 0; i < n; ++i) frames.push_back(arc_frame(p, i));
  PerturbationField grad(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const ArcFrame& before = frames[wrap_index(j - 1, n)];
    const ArcFrame& after = frames[j];
    grad[j] = std::tan(before.theta / 2.0) * before.w_end + std::tan(after.theta / 2.0) * after.w_start;
  }
  return grad;
}

double area_derivative_disk_polygon(const DiskPolygon& p, const PerturbationField& v) {
  if (static_cast<int>(v.size()) != p.size()) throw Error(Errc::InvalidInput, "field size mismatch");
  double total = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    total += arc_area_contribution(arc_frame(p, i), v[i], v[wrap_index(i + 1, p.size())]);
  }
  return total;
}

ReuleauxPolygon propagate_vertex_perturbation(const ReuleauxPolygon& r, int i, const Point2& v, double t) {
  require_movable(r);
  const int n = r.size();
  const int k = r.k();
  if (i < 0 || i >= n) throw Error(Errc::OutOfRange, "vertex index outside [0, n)");
  if (t == 0.0) return r;

  std::vector<Point2> x(r.vertices().begin(), r.vertices().end());
  const int a = (i + k) % n;
  const int b = (i + k + 1) % n;
  const Point2 moved = x[i] + t * v;
  Point2 xa, xb;
  try {
    xa = circle_circle_intersection_near(moved, r.vertex(i - 1), x[a]);
    xb = circle_circle_intersection_near(moved, r.vertex(i + 1), x[b]);
  } catch (const Error&) {
    throw Error(Errc::StepTooLarge, "opposite vertices cannot be reconstructed");
  }
  if (distance(xa, x[a]) > 0.5 || distance(xb, x[b]) > 0.5) {
    throw Error(Errc::StepTooLarge, "intersection branch flipped");
  }
  x[i] = moved;
  x[a] = xa;
  x[b] = xb;

  ReuleauxPolygon out = [&] {
    try {
      return ReuleauxPolygon::from_vertices(std::move(x));
    } catch (const Error& e) {
      throw Error(Errc::StepTooLarge, e.what());
    }
  }();
  if (out.size() != n || !(out.theta_min() > 0.0) || !(out.theta_max() < kPi / 3.0)) {
    throw Error(Errc::StepTooLarge, "an arc length left (0, pi/3)");
  }
  return out;
}

Point2 vertex_bisector(const ReuleauxPolygon& r, int i) {
  const auto [a, b] = opposite_indices(wrap_index(i, r.size()), r.size());
  return normalized((r.vertex(a) - r.vertex(i)) + (r.vertex(b) - r.vertex(i)));
}

Point2 blaschke_direction(const ReuleauxPolygon& r, int i) {
  require_movable(r);
  const auto [a, b] = opposite_indices(wrap_index(i, r.size()), r.size());
  (void)b;
  Point2 t = normalized(perp(r.vertex(i) - r.vertex(a)));
  if (dot(t, r.vertex(i) - r.vertex(i - 1)) < 0.0) t = -t;
  return t;
}

double directional_derivative_reuleaux(const ReuleauxPolygon& r, int i, const Point2& v) {
  require_movable(r);
  const auto [a, b] = opposite_indices(wrap_index(i, r.size()), r.size());
  const double th0 = r.theta(i), tha = r.theta(a), thb = r.theta(b);
  require_arc(th0);
  require_arc(tha);
  require_arc(thb);
  const Point2& x0 = r.vertex(i);
  return 2.0 * std::sin(th0 / 2.0) * dot(v, vertex_bisector(r, i)) +
         std::tan(tha / 2.0) * dot(v, x0 - r.vertex(a)) + std::tan(thb / 2.0) * dot(v, x0 - r.vertex(b));
}

Point2 gradient_reuleaux(const ReuleauxPolygon& r, int i) {
  require_movable(r);
  const auto [a, b] = opposite_indices(wrap_index(i, r.size()), r.size());
  const double th0 = r.theta(i), tha = r.theta(a), thb = r.theta(b);
  require_arc(th0);
  require_arc(tha);
  require_arc(thb);
  const double t0 = std::tan(th0 / 2.0);
  const Point2& x0 = r.vertex(i);
  return (std::tan(tha / 2.0) - t0) * (x0 - r.vertex(a)) + (std::tan(thb / 2.0) - t0) * (x0 - r.vertex(b));
}

PerturbationField gradient_reuleaux(const ReuleauxPolygon& r) {
  PerturbationField g(static_cast<std::size_t>(r.size()));
  for (int i = 0; i < r.size(); ++i) g[i] = gradient_reuleaux(r, i);
  return g;
}

double max_gradient_norm(const ReuleauxPolygon& r) {
  double m = 0.0;
  for (int i = 0; i < r.size(); ++i) m = std::max(m, norm(gradient_reuleaux(r, i)));
  return m;
}

double blaschke_derivative(const ReuleauxPolygon& r, int i) {
  require_movable(r);
  const auto [a, b] = opposite_indices(wrap_index(i, r.size()), r.size());
  (void)a;
  const double th0 = r.theta(i), thb = r.theta(b);
  require_arc(th0);
  require_arc(thb);
  return std::sin(th0) * (std::tan(thb / 2.0) - std::tan(th0 / 2.0));
}

double bisector_second_derivative(double theta) {
  if (!(theta > 0.0 && theta <= kPi / 3.0 + 1e-15)) {
    throw Error(Errc::OutOfRange, "theta must lie in (0, pi/3]");
  }
  const double h = theta / 2.0;
  return 2.0 * (std::sin(h) * std::sin(theta) - std::cos(3.0 * h)) / (std::cos(h) * std::sin(theta));
}

double critical_angle_bound_check(double theta) {
  const double s = std::sin(theta / 2.0);
  return -8.0 * s * s * s + 4.0 * s;
}

std::pair<Point2, Point2> opposite_vertex_velocities(const ReuleauxPolygon& r, int i, const Point2& w) {
  require_movable(r);
  const auto [a, b] = opposite_indices(wrap_index(i, r.size()), r.size());
  const Point2& x0 = r.vertex(i);
  // x_a stays on circle(x_{i-1}) and at unit distance from x_i; likewise x_b with x_{i+1}.
  const Point2 ra = r.vertex(a) - x0, sa = r.vertex(a) - r.vertex(i - 1);
  const Point2 rb = r.vertex(b) - x0, sb = r.vertex(b) - r.vertex(i + 1);
  return {solve2(ra, sa, dot(ra, w), 0.0), solve2(rb, sb, dot(rb, w), 0.0)};
}

ThetaRates theta_rates(const ReuleauxPolygon& r, int i, const Point2& w) {
  require_movable(r);
  const auto [a, b] = opposite_indices(wrap_index(i, r.size()), r.size());
  const Point2& x0 = r.vertex(i);
  auto adjacent_rate = [&](const Point2& neighbour, double theta) {
    const Point2 e = normalized(neighbour - x0);
    return -dot(w, e) / std::cos(theta / 2.0);
  };
  ThetaRates out;
  out.next = adjacent_rate(r.vertex(i + 1), r.theta(b));
  out.previous = adjacent_rate(r.vertex(i - 1), r.theta(a));
  const auto [va, vb] = opposite_vertex_velocities(r, i, w);
  const Point2 e = normalized(r.vertex(b) - r.vertex(a));
  out.opposite = dot(e, vb - va) / std::cos(r.theta(i) / 2.0);
  return out;
}

double opposite_theta_rate_symmetric(const ReuleauxPolygon& r, int i, const Point2& w) {
  require_movable(r);
  const auto [a, b] = opposite_indices(wrap_index(i, r.size()), r.size());
  const Point2& x0 = r.vertex(i);
  const double tha = r.theta(a), thb = r.theta(b), th1 = r.theta(i + 1);
  require_arc(tha);
  require_arc(thb);
  auto cos_angle = [&](const Point2& u) { return dot(u, w) / (norm(u) * norm(w)); };
  const double rate = -cos_angle(r.vertex(a) - x0) * std::cos(thb + th1 / 2.0) / std::sin(tha) -
                      cos_angle(r.vertex(b) - x0) * std::cos(tha + th1 / 2.0) / std::sin(thb);
  return norm(w) * rate / std::cos(r.theta(i) / 2.0);
}

}  // namespace reuleaux
