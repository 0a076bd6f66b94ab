#include "reuleaux/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace reuleaux {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::InvalidPolygon: return "InvalidPolygon";
    case Errc::DegenerateCircles: return "DegenerateCircles";
    case Errc::InvalidN: return "InvalidN";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::SingularArc: return "SingularArc";
    case Errc::StepTooLarge: return "StepTooLarge";
    case Errc::TriangleImmovable: return "TriangleImmovable";
    case Errc::CoincidentPoints: return "CoincidentPoints";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::InconsistentQ: return "InconsistentQ";
    case Errc::RedundantCenter: return "RedundantCenter";
    case Errc::Stall: return "StallError";
    case Errc::NonOddReduction: return "NonOddReduction";
    case Errc::Parse: return "ParseError";
  }
  return "Unknown";
}

std::array<Point2, 2> circle_circle_intersections(const Point2& c1, const Point2& c2, double eps) {
  const Point2 d = c2 - c1;
  const double len = norm(d);
  if (!(len > eps && len < 2.0 - eps)) {
    std::ostringstream msg;
    msg << "unit circles at distance " << len << " do not cross transversally";
    throw Error(Errc::DegenerateCircles, msg.str());
  }
  const Point2 mid = 0.5 * (c1 + c2);
  const double h = std::sqrt(1.0 - 0.25 * len * len);
  const Point2 offset = perp(d / len) * h;
  return {mid + offset, mid - offset};
}

Point2 circle_circle_intersection(const Point2& c1, const Point2& c2, Side pick, double eps) {
  const auto roots = circle_circle_intersections(c1, c2, eps);
  return pick == Side::Left ? roots[0] : roots[1];
}

Point2 circle_circle_intersection_near(const Point2& c1, const Point2& c2, const Point2& previous,
                                       double eps) {
  const auto roots = circle_circle_intersections(c1, c2, eps);
  return norm2(roots[0] - previous) <= norm2(roots[1] - previous) ? roots[0] : roots[1];
}

std::pair<int, int> opposite_indices(int i, int n) {
  if (n < 3 || n % 2 == 0) throw Error(Errc::InvalidN, "opposite indices need odd n >= 3");
  if (i < 0 || i >= n) throw Error(Errc::OutOfRange, "vertex index outside [0, n)");
  const int k = (n - 1) / 2;
  return {(i + k) % n, (i + k + 1) % n};
}

double signed_polygon_area(std::span<const Point2> v) {
  const std::size_t n = v.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) twice += cross(v[i], v[(i + 1) % n]);
  return 0.5 * twice;
}

int canonicalize_vertices(std::vector<Point2>& v, double merge_distance) {
  const std::size_t original = v.size();
  std::vector<Point2> kept;
  kept.reserve(v.size());
  for (const auto& p : v) {
    if (kept.empty() || distance(kept.back(), p) >= merge_distance) kept.push_back(p);
  }
  while (kept.size() > 1 && distance(kept.back(), kept.front()) < merge_distance) kept.pop_back();
  if (signed_polygon_area(kept) < 0.0) std::reverse(kept.begin(), kept.end());
  v = std::move(kept);
  return static_cast<int>(original - v.size());
}

DiskPolygon DiskPolygon::from_vertices(std::vector<Point2> vertices, const Tolerances& tol) {
  if (vertices.size() < 3) throw Error(Errc::InvalidN, "a disk-polygon needs at least 3 vertices");
  canonicalize_vertices(vertices, tol.merge);
  const int n = static_cast<int>(vertices.size());
  if (n < 3) throw Error(Errc::InvalidN, "fewer than 3 distinct vertices");
  if (!(signed_polygon_area(vertices) > 0.0)) {
    throw Error(Errc::InvalidPolygon, "vertices are collinear");
  }

  std::vector<Point2> centers;
  std::vector<double> lengths;
  centers.reserve(n);
  lengths.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Point2& a = vertices[i];
    const Point2& b = vertices[(i + 1) % n];
    const double chord = distance(a, b);
    if (chord > 2.0 - 1e-9) throw Error(Errc::InvalidPolygon, "chord too long for a unit arc");
    // Interior lies to the left of a counter-clockwise edge; so does the arc center.
    centers.push_back(circle_circle_intersection(a, b, Side::Left, 1e-15));
    lengths.push_back(chord_angle(chord));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double excess = distance(vertices[j], centers[i]) - 1.0;
      if (excess > tol.cw) {
        std::ostringstream msg;
        msg << "vertex " << j << " lies outside the disk of arc " << i << " by " << excess;
        throw Error(Errc::InvalidPolygon, msg.str());
      }
    }
  }
  return DiskPolygon(std::move(vertices), std::move(centers), std::move(lengths));
}

namespace {

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a > std::numbers::pi) a -= two_pi;
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

}  // namespace

DiskArrangement intersect_unit_disks(std::span<const Point2> centers, double min_arc) {
  const int n = static_cast<int>(centers.size());
  if (n < 2) throw Error(Errc::InvalidN, "need at least two disks");

  struct Arc {
    int disk;
    double start, end;
  };
  std::vector<Arc> arcs;
  std::vector<int> arc_of_disk(n, -1);

  for (int i = 0; i < n; ++i) {
    // Arc of circle i inside disk j: half-width acos(d/2) around the direction to c_j.
    double ref = 0.0, lo = -1e300, hi = 1e300;
    bool first = true;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Point2 d = centers[j] - centers[i];
      const double len = norm(d);
      if (!(len > 1e-15 && len < 2.0)) {
        throw Error(Errc::DegenerateCircles, "disk centers coincide or are too far apart");
      }
      const double half = std::acos(len / 2.0);
      const double dir = std::atan2(d.y(), d.x());
      if (first) {
        ref = dir;
        first = false;
      }
      const double rel = wrap_angle(dir - ref);
      lo = std::max(lo, rel - half);
      hi = std::min(hi, rel + half);
    }
    if (hi - lo > min_arc) arcs.push_back({i, ref + lo, ref + hi});
  }
  if (arcs.size() < 2) throw Error(Errc::DegenerateCircles, "disk intersection is empty or degenerate");

  // Outward normals turn counter-clockwise along the boundary of a convex set.
  auto mid_direction = [](const Arc& a) {
    const double m = 0.5 * (a.start + a.end);
    return std::atan2(std::sin(m), std::cos(m));
  };
  std::sort(arcs.begin(), arcs.end(),
            [&](const Arc& a, const Arc& b) { return mid_direction(a) < mid_direction(b); });

  const int m = static_cast<int>(arcs.size());
  std::vector<Point2> vertices, arc_centers;
  std::vector<double> lengths, starts, ends;
  std::vector<int> disk_of_arc;
  for (int a = 0; a < m; ++a) {
    const Arc& arc = arcs[a];
    vertices.push_back(centers[arc.disk] + unit_vector(arc.start));
    arc_centers.push_back(centers[arc.disk]);
    lengths.push_back(arc.end - arc.start);
    starts.push_back(arc.start);
    ends.push_back(arc.end);
    disk_of_arc.push_back(arc.disk);
    arc_of_disk[arc.disk] = a;
  }
  for (int a = 0; a < m; ++a) {
    const Point2 end = arc_centers[a] + unit_vector(ends[a]);
    if (distance(end, vertices[(a + 1) % m]) > 1e-7) {
      throw Error(Errc::DegenerateCircles, "boundary arcs do not chain");
    }
  }
  return DiskArrangement{DiskPolygon(std::move(vertices), std::move(arc_centers), std::move(lengths)),
                         std::move(disk_of_arc), std::move(arc_of_disk), std::move(starts),
                         std::move(ends)};
}

const char* to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::VertexCount: return "vertex-count";
    case ViolationKind::Parity: return "parity";
    case ViolationKind::Diameter: return "diameter";
    case ViolationKind::Inequality: return "inequality";
    case ViolationKind::AngleSum: return "angle-sum";
    case ViolationKind::AngleRange: return "angle-range";
  }
  return "unknown";
}

std::string Violation::describe() const {
  std::ostringstream out;
  out << to_string(kind);
  if (i >= 0) out << " i=" << i;
  if (j >= 0) out << " j=" << j;
  out << " residual=" << residual;
  return out.str();
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  out << (pass ? "pass" : "fail") << " (max residual " << max_residual << ")";
  if (dropped_vertices > 0) out << ", " << dropped_vertices << " merged vertices dropped";
  for (const auto& v : violations) out << "; " << v.describe();
  return out.str();
}

ValidationReport validate_constant_width(std::span<const Point2> x, const Tolerances& tol) {
  ValidationReport report;
  const int n = static_cast<int>(x.size());
  if (n < 3) {
    report.violations.push_back({ViolationKind::VertexCount, n, -1, 0.0});
    return report;
  }
  if (n % 2 == 0) {
    report.violations.push_back({ViolationKind::Parity, n, -1, 0.0});
    return report;
  }
  const int k = (n - 1) / 2;
  auto is_diameter = [&](int i, int j) {
    const int d = wrap_index(j - i, n);
    return d == k || d == k + 1;
  };

  for (int i = 0; i < n; ++i) {
    const int j = (i + k) % n;
    const double r = distance(x[i], x[j]) - 1.0;
    report.max_residual = std::max(report.max_residual, std::abs(r));
    if (std::abs(r) > tol.cw) report.violations.push_back({ViolationKind::Diameter, i, j, r});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (is_diameter(i, j)) continue;
      const double excess = distance(x[i], x[j]) - 1.0;
      report.max_residual = std::max(report.max_residual, std::max(0.0, excess));
      if (excess > tol.cw) report.violations.push_back({ViolationKind::Inequality, i, j, excess});
    }
  }

  if (report.violations.empty()) {
    double sum = 0.0;
    const double slack = tol.geom + n * tol.cw;
    for (int i = 0; i < n; ++i) {
      const double t = chord_angle(distance(x[(i + k) % n], x[(i + k + 1) % n]));
      sum += t;
      if (t > std::numbers::pi / 3.0 + slack) {
        report.violations.push_back({ViolationKind::AngleRange, i, -1, t - std::numbers::pi / 3.0});
      }
    }
    const double r = sum - std::numbers::pi;
    if (std::abs(r) > slack) report.violations.push_back({ViolationKind::AngleSum, -1, -1, r});
  }
  report.pass = report.violations.empty();
  return report;
}

ValidationReport validate_constant_width(const DiskPolygon& p, const Tolerances& tol) {
  return validate_constant_width(p.vertices(), tol);
}

ReuleauxPolygon::ReuleauxPolygon(std::vector<Point2> v, int dropped)
    : vertices_(std::move(v)), dropped_(dropped) {
  const int n = size();
  const int kk = k();
  theta_.resize(n);
  for (int i = 0; i < n; ++i) {
    theta_[i] = chord_angle(distance(vertices_[(i + kk) % n], vertices_[(i + kk + 1) % n]));
  }
}

ReuleauxPolygon ReuleauxPolygon::from_vertices(std::vector<Point2> vertices, const Tolerances& tol) {
  const int dropped = canonicalize_vertices(vertices, tol.merge);
  ValidationReport report = validate_constant_width(vertices, tol);
  report.dropped_vertices = dropped;
  if (!report.pass) {
    const bool count_problem =
        !report.violations.empty() && (report.violations.front().kind == ViolationKind::Parity ||
                                        report.violations.front().kind == ViolationKind::VertexCount);
    throw Error(count_problem ? Errc::InvalidN : Errc::InvalidPolygon, report.summary());
  }
  return ReuleauxPolygon(std::move(vertices), dropped);
}

ReuleauxPolygon ReuleauxPolygon::regular(int n) {
  if (n < 3 || n % 2 == 0) throw Error(Errc::InvalidN, "regular Reuleaux polygons need odd n >= 3");
  const double pi = std::numbers::pi;
  const double circumradius = 1.0 / (2.0 * std::cos(pi / (2.0 * n)));
  std::vector<Point2> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) v.push_back(circumradius * unit_vector(pi / 2.0 + 2.0 * pi * i / n));
  return ReuleauxPolygon(std::move(v), 0);
}

double ReuleauxPolygon::theta_min() const { return *std::min_element(theta_.begin(), theta_.end()); }
double ReuleauxPolygon::theta_max() const { return *std::max_element(theta_.begin(), theta_.end()); }

DiskPolygon ReuleauxPolygon::as_disk_polygon() const {
  // Arc x_i -> x_{i+1} is centered at x_{i+k+1} and is the arc opposite that vertex.
  const int n = size();
  std::vector<Point2> centers(n);
  std::vector<double> lengths(n);
  for (int i = 0; i < n; ++i) {
    const int c = (i + k() + 1) % n;
    centers[i] = vertices_[c];
    lengths[i] = theta_[c];
  }
  return DiskPolygon(vertices_, std::move(centers), std::move(lengths));
}

}  // namespace reuleaux
