#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reuleaux/block_matrix.hpp"
#include "reuleaux/geometry.hpp"
#include "reuleaux/sensitivity.hpp"

namespace reuleaux {

struct OracleReport {
  std::string name;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  int samples = 0;
  bool pass = false;
  std::string notes;
};

using LongVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using PolygonFunctional = std::function<double(const ReuleauxPolygon&)>;
using CoordinateFunctional = std::function<long double(const LongVector&)>;

/// (fn(R(h)) - fn(R(-h))) / (2h) along propagate_vertex_perturbation.
double fd_directional(const PolygonFunctional& fn, const ReuleauxPolygon& r, int i, const Point2& v, double h);

/// (fn(R(h)) - 2 fn(R) + fn(R(-h))) / h^2 along the same path.
double fd_directional_second(const PolygonFunctional& fn, const ReuleauxPolygon& r, int i, const Point2& v,
                             double h);

/// Central first differences in every coordinate.
Eigen::VectorXd fd_gradient(const CoordinateFunctional& fn, const Eigen::VectorXd& x, double h);

/// Central second differences, symmetrized. Coordinates are perturbed in long double
/// so the steps are exact.
BlockMatrix fd_hessian(const CoordinateFunctional& fn, const Eigen::VectorXd& x, double h);

/// Point of a unit arc handed to quadrature integrands.
struct ArcSample {
  double phi = 0.0;  // angle from the bisector
  Point2 normal;     // outward unit normal
  Point2 tangent;    // counter-clockwise unit tangent
};

/// Composite Simpson over the unit arc of length theta centered on `bisector`,
/// with m panels (rounded up to even).
double arc_quadrature(double theta, const std::function<double(const ArcSample&)>& integrand, int m,
                      const Point2& bisector = Point2(1.0, 0.0));

/// Vertex Lagrangian evaluated in long double, independent of the area module.
long double lagrangian_vertices_extended(const LongVector& x, const std::vector<double>& lambda);

/// Area of the intersection of unit disks, evaluated in long double with the arc
/// adjacency of `pattern` (the arrangement at the base point).
long double area_from_centers_extended(const LongVector& c, const DiskArrangement& pattern);

LongVector to_long(const Eigen::VectorXd& x);
Eigen::VectorXd flatten(std::span<const Point2> points);

using DirectionalDerivative = std::function<double(const ReuleauxPolygon&, int, const Point2&)>;

struct CertifyOptions {
  std::uint64_t seed = 20240917;
  /// Implementation of the constrained directional derivative under test.
  DirectionalDerivative directional = directional_derivative_reuleaux;
};

/// One closed form paired with its oracle.
struct Pairing {
  std::string name;
  std::function<OracleReport(const CertifyOptions&)> run;
};

const std::vector<Pairing>& pairing_registry();
std::vector<OracleReport> run_pairings(const CertifyOptions& options);

/// The ten acceptance criteria, in order.
std::vector<OracleReport> acceptance_checks(const CertifyOptions& options);

/// Pairings followed by acceptance checks.
std::vector<OracleReport> certify(const CertifyOptions& options);
bool all_pass(const std::vector<OracleReport>& reports);

/// JSON array of reports.
std::string reports_to_json(const std::vector<OracleReport>& reports);

}  // namespace reuleaux
