#include "reuleaux/area.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

namespace reuleaux {

namespace {

void check_chord(double chord) {
  if (!(chord >= 0.0 && chord <= kMaxChord)) {
    throw Error(Errc::OutOfRange, "chord length must lie in [0, 2)");
  }
}

}  // namespace

double segment_area(double x) {
  check_chord(x);
  const double h = 0.5 * x;
  return std::asin(h) - h * std::sqrt(1.0 - h * h);
}

double segment_area_d1(double x) {
  check_chord(x);
  return x * x / (2.0 * std::sqrt(4.0 - x * x));
}

double segment_area_d2(double x) {
  check_chord(x);
  const double s = 4.0 - x * x;
  return x * (8.0 - x * x) / (2.0 * s * std::sqrt(s));
}

AreaBreakdown area_disk_polygon(const DiskPolygon& p) {
  AreaBreakdown out;
  out.polygon_part = signed_polygon_area(p.vertices());
  out.segment_parts.reserve(p.size());
  out.total = out.polygon_part;
  for (int i = 0; i < p.size(); ++i) {
    out.segment_parts.push_back(segment_area(p.chord(i)));
    out.total += out.segment_parts.back();
  }
  return out;
}

double area(const DiskPolygon& p) { return area_disk_polygon(p).total; }

double area(const ReuleauxPolygon& r) { return disk_polygon_area_formula(r.vertices()); }

double disk_polygon_area_formula(std::span<const Point2> x) {
  const std::size_t n = x.size();
  double total = signed_polygon_area(x);
  for (std::size_t i = 0; i < n; ++i) total += segment_area(distance(x[i], x[(i + 1) % n]));
  return total;
}

double area_unit_disk_intersection(std::span<const Point2> centers) {
  const DiskArrangement arr = intersect_unit_disks(centers);
  // Each arc contributes (1/2) int (x dy - y dx) = (1/2) [dphi + c x (u(end) - u(start))].
  double total = 0.0;
  for (std::size_t a = 0; a < arr.disk_of_arc.size(); ++a) {
    const Point2& c = arr.polygon.arc_center(static_cast<long>(a));
    const double s = arr.start_angle[a], e = arr.end_angle[a];
    total += 0.5 * ((e - s) + cross(c, unit_vector(e) - unit_vector(s)));
  }
  return total;
}

double area_regular_reuleaux(int n) {
  if (n < 3 || n % 2 == 0) throw Error(Errc::InvalidN, "regular Reuleaux polygons need odd n >= 3");
  const double a = std::numbers::pi / n;
  return std::numbers::pi / 2.0 - n * std::sin(a) / (2.0 * (std::cos(a) + 1.0));
}

double area_oracle_discretized(const DiskPolygon& p, int m) {
  if (m < 16) throw Error(Errc::OutOfRange, "oracle needs at least 16 samples per arc");
  std::vector<Point2> fine;
  fine.reserve(static_cast<std::size_t>(p.size()) * m);
  for (int i = 0; i < p.size(); ++i) {
    const Point2& c = p.arc_center(i);
    const Point2 a = p.vertex(i) - c;
    const double start = std::atan2(a.y(), a.x());
    const double sweep = p.arc_length(i);
    for (int s = 0; s < m; ++s) fine.push_back(c + unit_vector(start + sweep * s / m));
  }
  return signed_polygon_area(fine);
}

bool write_area_table_csv(std::ostream& out, int n_max) {
  if (n_max < 3 || n_max % 2 == 0) throw Error(Errc::InvalidN, "n_max must be odd and >= 3");
  out << "n,A_n\n";
  bool increasing = true;
  double previous = -1.0;
  for (int n = 3; n <= n_max; n += 2) {
    const double a = area_regular_reuleaux(n);
    if (!(a > previous)) increasing = false;
    previous = a;
    out << n << ',' << std::setprecision(17) << a << '\n';
  }
  return increasing;
}

}  // namespace reuleaux
