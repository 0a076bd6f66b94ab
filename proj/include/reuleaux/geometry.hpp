#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reuleaux/point.hpp"

namespace reuleaux {

/// Residual thresholds shared by construction and validation.
struct Tolerances {
  double geom = 1e-9;   // construction residuals (unit distances, angle sums)
  double cw = 1e-8;     // constant-width equalities and inequalities
  double merge = 1e-7;  // vertices closer than this are treated as one
};

enum class Side { Left, Right };

/// Intersection of the unit circles around c1 and c2 lying on the chosen side of
/// the directed segment c1 -> c2. Throws DegenerateCircles unless
/// eps < |c1 - c2| < 2 - eps.
Point2 circle_circle_intersection(const Point2& c1, const Point2& c2, Side pick,
                                  double eps = 1e-12);

/// Both intersections, {left, right}.
std::array<Point2, 2> circle_circle_intersections(const Point2& c1, const Point2& c2,
                                                  double eps = 1e-12);

/// The intersection closest to `previous`; used for continuity tracking.
Point2 circle_circle_intersection_near(const Point2& c1, const Point2& c2,
                                       const Point2& previous, double eps = 1e-12);

/// Endpoints (i + k, i + k + 1) mod n of the arc opposite vertex i, n = 2k + 1.
std::pair<int, int> opposite_indices(int i, int n);

/// Signed shoelace area; positive for counter-clockwise order.
double signed_polygon_area(std::span<const Point2> vertices);

/// Reverses clockwise input and drops cyclically consecutive vertices closer than
/// `merge_distance`. Returns the number of dropped vertices.
int canonicalize_vertices(std::vector<Point2>& vertices, double merge_distance);

struct DiskArrangement;

/// Intersection of unit disks, stored as counter-clockwise vertices with the arc
/// x[i] -> x[i+1] lying on the unit circle around arc_centers[i].
class DiskPolygon {
 public:
  /// Builds the disk-polygon spanned by the given vertices (the intersection of
  /// all unit disks containing them). Clockwise input is reversed.
  static DiskPolygon from_vertices(std::vector<Point2> vertices, const Tolerances& tol = {});

  int size() const noexcept { return static_cast<int>(vertices_.size()); }
  std::span<const Point2> vertices() const noexcept { return vertices_; }
  std::span<const Point2> arc_centers() const noexcept { return arc_centers_; }
  std::span<const double> arc_lengths() const noexcept { return arc_lengths_; }

  const Point2& vertex(long i) const { return vertices_[wrap_index(i, size())]; }
  const Point2& arc_center(long i) const { return arc_centers_[wrap_index(i, size())]; }
  double arc_length(long i) const { return arc_lengths_[wrap_index(i, size())]; }
  double chord(long i) const { return distance(vertex(i), vertex(i + 1)); }

 private:
  friend class ReuleauxPolygon;
  friend DiskArrangement intersect_unit_disks(std::span<const Point2>, double);
  DiskPolygon(std::vector<Point2> v, std::vector<Point2> c, std::vector<double> l)
      : vertices_(std::move(v)), arc_centers_(std::move(c)), arc_lengths_(std::move(l)) {}

  std::vector<Point2> vertices_;
  std::vector<Point2> arc_centers_;
  std::vector<double> arc_lengths_;
};

/// Boundary structure of an intersection of unit disks given by centers.
struct DiskArrangement {
  DiskPolygon polygon;
  std::vector<int> disk_of_arc;  // disk index of each boundary arc
  std::vector<int> arc_of_disk;  // boundary arc of each disk, -1 when redundant
  std::vector<double> start_angle;  // polar angle of each arc's start, about its center
  std::vector<double> end_angle;    // end angle, start_angle < end_angle
};

/// Computes the boundary arcs of the intersection of the unit disks around the
/// given centers. Redundant disks are reported with arc_of_disk = -1.
/// Throws DegenerateCircles when two centers coincide or are 2 or more apart.
DiskArrangement intersect_unit_disks(std::span<const Point2> centers, double min_arc = 1e-12);

enum class ViolationKind { VertexCount, Parity, Diameter, Inequality, AngleSum, AngleRange };

const char* to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  int i = -1;
  int j = -1;
  double residual = 0.0;

  std::string describe() const;
};

struct ValidationReport {
  bool pass = false;
  double max_residual = 0.0;
  std::vector<Violation> violations;
  int dropped_vertices = 0;

  std::string summary() const;
};

/// Checks the constant-width constraint set: |x_i - x_{i+k}| = 1, |x_i - x_j| <= 1,
/// odd n >= 3. The derived arc-length invariants are only checked once the defining
/// constraints hold, since they are meaningless otherwise.
ValidationReport validate_constant_width(std::span<const Point2> vertices, const Tolerances& tol = {});
ValidationReport validate_constant_width(const DiskPolygon& p, const Tolerances& tol = {});

/// A Reuleaux polygon with n = 2k + 1 vertices. theta[i] is the length of the
/// arc opposite vertex i, whose endpoints are x[i+k] and x[i+k+1].
class ReuleauxPolygon {
 public:
  /// Validates and canonicalizes; throws InvalidPolygon with the validation summary.
  static ReuleauxPolygon from_vertices(std::vector<Point2> vertices, const Tolerances& tol = {});

  /// Regular Reuleaux n-gon, vertex 0 on the positive y-axis, centered at the origin.
  static ReuleauxPolygon regular(int n);

  int size() const noexcept { return static_cast<int>(vertices_.size()); }
  int k() const noexcept { return (size() - 1) / 2; }
  std::span<const Point2> vertices() const noexcept { return vertices_; }
  std::span<const double> theta() const noexcept { return theta_; }

  const Point2& vertex(long i) const { return vertices_[wrap_index(i, size())]; }
  double theta(long i) const { return theta_[wrap_index(i, size())]; }
  double theta_min() const;
  double theta_max() const;
  int dropped_vertices() const noexcept { return dropped_; }

  DiskPolygon as_disk_polygon() const;

 private:
  ReuleauxPolygon(std::vector<Point2> v, int dropped);

  std::vector<Point2> vertices_;
  std::vector<double> theta_;
  int dropped_ = 0;
};

inline ReuleauxPolygon build_regular_reuleaux(int n) { return ReuleauxPolygon::regular(n); }

/// Arc length subtended by a chord of the unit circle.
inline double chord_angle(double chord) { return 2.0 * std::asin(std::min(1.0, chord / 2.0)); }

}  // namespace reuleaux
