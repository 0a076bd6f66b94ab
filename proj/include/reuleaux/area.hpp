#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "reuleaux/geometry.hpp"

namespace reuleaux {

/// Largest chord accepted by the segment formulas; arcsin is ill-conditioned near 2.
inline constexpr double kMaxChord = 2.0 - 1e-9;

/// Area of the unit-disk segment cut off by a chord of the given length:
/// asin(x/2) - (x/2) sqrt(1 - x^2/4). Throws OutOfRange outside [0, kMaxChord].
double segment_area(double chord);
/// x^2 / (2 sqrt(4 - x^2))
double segment_area_d1(double chord);
/// x (8 - x^2) / (2 (4 - x^2)^{3/2})
double segment_area_d2(double chord);

struct AreaBreakdown {
  double polygon_part = 0.0;
  std::vector<double> segment_parts;  // one per boundary arc
  double total = 0.0;
};

/// Shoelace area of the vertex polygon plus one circular segment per arc.
AreaBreakdown area_disk_polygon(const DiskPolygon& p);
double area(const DiskPolygon& p);
double area(const ReuleauxPolygon& r);

/// Area of the disk-polygon spanned by raw vertices, evaluated by the closed form
/// polygon + sum f(|x_i - x_{i+1}|) with no validation. Used as the objective of the
/// vertex Lagrangian, where finite differences leave the feasible set.
double disk_polygon_area_formula(std::span<const Point2> vertices);

/// Area of the intersection of the unit disks around the given centers, by Green's
/// theorem over the boundary arcs.
double area_unit_disk_intersection(std::span<const Point2> centers);

/// Closed-form area of the regular Reuleaux n-gon:
/// pi/2 - n sin(pi/n) / (2 (cos(pi/n) + 1)).
double area_regular_reuleaux(int n);

/// Samples each boundary arc at m points and applies the shoelace formula to the
/// resulting fine polygon. O(m^-2) accurate; only meant for cross-checks.
double area_oracle_discretized(const DiskPolygon& p, int m);

/// Writes `n,A_n` rows for n = 3, 5, ..., n_max. Returns false if the sequence is
/// not strictly increasing.
bool write_area_table_csv(std::ostream& out, int n_max);

}  // namespace reuleaux
