#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "reuleaux/block_matrix.hpp"
#include "reuleaux/geometry.hpp"

namespace reuleaux {

struct Multipliers {
  std::vector<double> lambda;
  double residual = 0.0;  // norm of the stationarity defect after the least-squares fit
};

/// Nonzero part of the gradient of C_i = |x_i - x_{i+k}| - 1: the entries at
/// j = i and j = i + k.
struct ConstraintGradient {
  int i = 0;
  int j = 0;
  Point2 at_i;
  Point2 at_j;
};

struct CriticalConeVector {
  PerturbationField w;
  std::vector<double> q;  // w_{i+k} - w_i = q_i D_i^perp, D_i = x_{i+k} - x_i
};

// ---- vertices as variables ----

/// |x_i - x_{i+k}| - 1 for every i. Throws CoincidentPoints.
std::vector<double> constraint_values(std::span<const Point2> x);
std::vector<ConstraintGradient> constraint_gradients(std::span<const Point2> x);
/// Stacked constraint gradients, n x 2n.
Eigen::MatrixXd constraint_jacobian(std::span<const Point2> x);
/// Numerical rank of the constraint Jacobian.
int constraint_rank(std::span<const Point2> x, double tol = 1e-10);

/// Area gradient of the disk-polygon spanned by the vertices of r, flattened.
Eigen::VectorXd area_gradient_vertices(const ReuleauxPolygon& r);

/// Least-squares solution of grad|D| + sum_i lambda_i grad C_i = 0.
Multipliers solve_multipliers_vertices(const ReuleauxPolygon& r);

/// L(x, lambda) = polygon area + sum f(|x_i - x_{i+1}|) + sum lambda_i |x_i - x_{i+k}|.
double lagrangian_vertices(std::span<const Point2> x, std::span<const double> lambda);

/// Constant skew blocks of the shoelace area: B_{i,i+1} = [0 1/2; -1/2 0].
BlockMatrix hessian_polygon_area(int n);
/// Hessian of sum f(|x_i - x_{i+1}|).
BlockMatrix hessian_segments(std::span<const Point2> x);
/// Hessian of sum lambda_i |x_i - x_{i+k}|.
BlockMatrix hessian_constraints(std::span<const Point2> x, std::span<const double> lambda);
/// Sum of the three parts above.
BlockMatrix hessian_lagrangian_vertices(const ReuleauxPolygon& r, const Multipliers& m);

/// Blaschke coefficients q_0 = q_1 = 1, q_{-k} = 2 cos(pi/n), all others 0.
std::vector<double> blaschke_q(int n);

/// Rebuilds w with w_0 = 0 by walking i -> i + k and setting
/// w_{i+k} = w_i + q_i D_i^perp. Throws InconsistentQ if the walk does not close.
CriticalConeVector critical_cone_from_q(const ReuleauxPolygon& r, std::span<const double> q);

/// max |(x_{i+k} - x_i) . (w_{i+k} - w_i)|
double cone_residual(const ReuleauxPolygon& r, const PerturbationField& w);

/// w^T H w with H = hessian_lagrangian_vertices at the solved multipliers.
double quadratic_form_vertices(const ReuleauxPolygon& r, const CriticalConeVector& v);

/// q-space value at the regular n-gon:
/// skew + (1/2) tan(pi/2n) (2 sum q_i^2 - 2 (cos(pi/n) + 1) sum q_i q_{i+k}),
/// where skew = sum w_i x w_{i+1} is evaluated from w.
double quadratic_form_vertices_reduced(int n, const CriticalConeVector& v);

// ---- centers as variables ----

/// Area of the intersection of unit disks around the flattened centers.
double area_from_centers(const Eigen::VectorXd& c);

/// Per-center area gradient, the integral of the outward normal over each
/// boundary arc. Throws RedundantCenter if a disk contributes no arc.
PerturbationField gradient_centers(std::span<const Point2> c);

/// Least-squares solution of grad A(c) + sum_i lambda_i grad |c_i - c_{i+k}| = 0,
/// with the centers taken at the vertices of r.
Multipliers solve_multipliers_centers(const ReuleauxPolygon& r);

/// Block Hessian of the area with respect to the centers:
///   (i,i)   sin th_i (b b^T - t t^T) - cot(phi_e) e_e e_e^T - cot(phi_s) e_s e_s^T
///   (i,nx)  e_e (p_e - c_nx)^T / sin(phi_e)
///   (i,pv)  e_s (p_s - c_pv)^T / sin(phi_s)
/// where the arc of disk i runs from p_s (shared with disk pv) to p_e (shared with
/// disk nx), e_s = p_s - c_i, e_e = p_e - c_i and phi is the angle between the two
/// radii at the shared vertex.
BlockMatrix hessian_area_centers(std::span<const Point2> c);
BlockMatrix hessian_area_centers(const ReuleauxPolygon& r);

/// Blaschke move of the centers of the regular n-gon: w_0 is the unit vector
/// perpendicular to c_0 - c_k, w_{-k} is perpendicular to c_1 - c_{-k} and scaled so
/// that the diameter c_{-k} c_0 keeps its length to first order; all others are 0.
PerturbationField blaschke_centers(const ReuleauxPolygon& r);

/// w^T (hess A + sum lambda_i hess |c_i - c_{i+k}|) w for the Blaschke move at the
/// regular n-gon, with solved multipliers. Throws InvalidN for n < 5.
double quadratic_form_blaschke_centers(int n);

}  // namespace reuleaux
