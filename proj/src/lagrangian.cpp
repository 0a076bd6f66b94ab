#include "reuleaux/lagrangian.hpp"

#include <cmath>
#include <numbers>

#include "reuleaux/area.hpp"
#include "reuleaux/sensitivity.hpp"

namespace reuleaux {

namespace {

constexpr double kPi = std::numbers::pi;

int half_of(std::size_t n) {
  if (n < 3 || n % 2 == 0) throw Error(Errc::InvalidN, "n must be odd and at least 3");
  return static_cast<int>(n / 2);
}

// Adds the Hessian of s * |x_i - x_j| (plus an extra radial curvature term) to H.
void add_distance_hessian(BlockMatrix& h, int i, int j, const Point2& d, double radial, double tangential) {
  const double len = norm(d);
  const Eigen::Vector2d u = to_eigen(d / len);
  const Mat2 p = u * u.transpose();
  const Mat2 aa = radial * p + (tangential / len) * (Mat2::Identity() - p);
  h.add_block(i, i, aa);
  h.add_block(j, j, aa);
  h.add_block(i, j, -aa);
  h.add_block(j, i, -aa);
}

Multipliers least_squares_multipliers(std::span<const Point2> x, const Eigen::VectorXd& grad) {
  const Eigen::MatrixXd a = constraint_jacobian(x).transpose();
  const Eigen::VectorXd rhs = -grad;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < a.cols()) throw Error(Errc::RankDeficient, "constraint gradients are linearly dependent");
  const Eigen::VectorXd lambda = qr.solve(rhs);
  Multipliers m;
  m.lambda.assign(lambda.data(), lambda.data() + lambda.size());
  m.residual = (a * lambda - rhs).norm();
  return m;
}

std::vector<Point2> unflatten(const Eigen::VectorXd& c) {
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(c.size() / 2));
  for (Eigen::Index i = 0; i + 1 < c.size(); i += 2) out.emplace_back(c[i], c[i + 1]);
  return out;
}

DiskArrangement full_arrangement(std::span<const Point2> c) {
  DiskArrangement arr = intersect_unit_disks(c);
  for (int a : arr.arc_of_disk) {
    if (a < 0) throw Error(Errc::RedundantCenter, "a disk does not contribute a boundary arc");
  }
  return arr;
}

}  // namespace

std::vector<double> constraint_values(std::span<const Point2> x) {
  const int n = static_cast<int>(x.size());
  const int k = half_of(x.size());
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const double d = distance(x[i], x[(i + k) % n]);
    if (d < 1e-12) throw Error(Errc::CoincidentPoints, "diameter endpoints coincide");
    out[i] = d - 1.0;
  }
  return out;
}

std::vector<ConstraintGradient> constraint_gradients(std::span<const Point2> x) {
  const int n = static_cast<int>(x.size());
  const int k = half_of(x.size());
  std::vector<ConstraintGradient> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + k) % n;
    const Point2 d = x[i] - x[j];
    const double len = norm(d);
    if (len < 1e-12) throw Error(Errc::CoincidentPoints, "diameter endpoints coincide");
    out.push_back({i, j, d / len, -(d / len)});
  }
  return out;
}

Eigen::MatrixXd constraint_jacobian(std::span<const Point2> x) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, 2 * n);
  for (const ConstraintGradient& g : constraint_gradients(x)) {
    jac(g.i, 2 * g.i) = g.at_i.x();
    jac(g.i, 2 * g.i + 1) = g.at_i.y();
    jac(g.i, 2 * g.j) = g.at_j.x();
    jac(g.i, 2 * g.j + 1) = g.at_j.y();
  }
  return jac;
}

int constraint_rank(std::span<const Point2> x, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraint_jacobian(x));
  const Eigen::VectorXd s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > tol * s[0]) ++rank;
  }
  return rank;
}

Eigen::VectorXd area_gradient_vertices(const ReuleauxPolygon& r) {
  return area_gradient_disk_polygon(r.as_disk_polygon()).flatten();
}

Multipliers solve_multipliers_vertices(const ReuleauxPolygon& r) {
  return least_squares_multipliers(r.vertices(), area_gradient_vertices(r));
}

double lagrangian_vertices(std::span<const Point2> x, std::span<const double> lambda) {
  const int n = static_cast<int>(x.size());
  const int k = half_of(x.size());
  if (lambda.size() != x.size()) throw Error(Errc::InvalidInput, "one multiplier per vertex required");
  double total = disk_polygon_area_formula(x);
  for (int i = 0; i < n; ++i) total += lambda[i] * distance(x[i], x[(i + k) % n]);
  return total;
}

BlockMatrix hessian_polygon_area(int n) {
  BlockMatrix h(n);
  Mat2 b;
  b << 0.0, 0.5, -0.5, 0.0;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    h.add_block(i, j, b);
    h.add_block(j, i, b.transpose());
  }
  return h;
}

BlockMatrix hessian_segments(std::span<const Point2> x) {
  const int n = static_cast<int>(x.size());
  BlockMatrix h(n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const Point2 d = x[i] - x[j];
    const double len = norm(d);
    if (len < 1e-12) throw Error(Errc::CoincidentPoints, "adjacent vertices coincide");
    add_distance_hessian(h, i, j, d, segment_area_d2(len), segment_area_d1(len));
  }
  return h;
}

BlockMatrix hessian_constraints(std::span<const Point2> x, std::span<const double> lambda) {
  const int n = static_cast<int>(x.size());
  const int k = half_of(x.size());
  if (lambda.size() != x.size()) throw Error(Errc::InvalidInput, "one multiplier per vertex required");
  BlockMatrix h(n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + k) % n;
    const Point2 d = x[i] - x[j];
    if (norm(d) < 1e-12) throw Error(Errc::CoincidentPoints, "diameter endpoints coincide");
    add_distance_hessian(h, i, j, d, 0.0, lambda[i]);
  }
  return h;
}

BlockMatrix hessian_lagrangian_vertices(const ReuleauxPolygon& r, const Multipliers& m) {
  BlockMatrix h = hessian_polygon_area(r.size());
  h += hessian_segments(r.vertices());
  h += hessian_constraints(r.vertices(), m.lambda);
  return h;
}

std::vector<double> blaschke_q(int n) {
  const int k = half_of(static_cast<std::size_t>(std::max(n, 0)));
  if (n < 5) throw Error(Errc::InvalidN, "Blaschke coefficients need n >= 5");
  std::vector<double> q(n, 0.0);
  q[0] = 1.0;
  q[1] = 1.0;
  q[n - k] = 2.0 * std::cos(kPi / n);
  return q;
}

CriticalConeVector critical_cone_from_q(const ReuleauxPolygon& r, std::span<const double> q) {
  const int n = r.size();
  const int k = r.k();
  if (n < 5) throw Error(Errc::InvalidN, "the critical cone is trivial for the triangle");
  if (static_cast<int>(q.size()) != n) throw Error(Errc::InvalidInput, "one coefficient per vertex required");

  std::vector<Point2> w(n);
  int j = 0;
  double scale = 1.0;
  for (double v : q) scale = std::max(scale, std::abs(v));
  for (int step = 0; step < n; ++step) {
    const int next = (j + k) % n;
    const Point2 value = w[j] + q[j] * perp(r.vertex(next) - r.vertex(j));
    if (step + 1 < n) {
      w[next] = value;
    } else if (norm(value - w[next]) > 1e-10 * scale) {
      throw Error(Errc::InconsistentQ, "q does not close around the diameter cycle");
    }
    j = next;
  }
  return {PerturbationField(std::move(w)), std::vector<double>(q.begin(), q.end())};
}

double cone_residual(const ReuleauxPolygon& r, const PerturbationField& w) {
  const int n = r.size();
  const int k = r.k();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const int j = (i + k) % n;
    worst = std::max(worst, std::abs(dot(r.vertex(j) - r.vertex(i), w[j] - w[i])));
  }
  return worst;
}

double quadratic_form_vertices(const ReuleauxPolygon& r, const CriticalConeVector& v) {
  return hessian_lagrangian_vertices(r, solve_multipliers_vertices(r)).quadratic_form(v.w);
}

double quadratic_form_vertices_reduced(int n, const CriticalConeVector& v) {
  const int k = half_of(static_cast<std::size_t>(std::max(n, 0)));
  if (static_cast<int>(v.q.size()) != n || static_cast<int>(v.w.size()) != n) {
    throw Error(Errc::InvalidInput, "cone vector size does not match n");
  }
  double skew = 0.0, squares = 0.0, pairs = 0.0;
  for (int i = 0; i < n; ++i) {
    skew += cross(v.w[i], v.w[(i + 1) % n]);
    squares += v.q[i] * v.q[i];
    pairs += v.q[i] * v.q[(i + k) % n];
  }
  return skew + 0.5 * std::tan(kPi / (2.0 * n)) * (2.0 * squares - 2.0 * (std::cos(kPi / n) + 1.0) * pairs);
}

double area_from_centers(const Eigen::VectorXd& c) {
  const std::vector<Point2> centers = unflatten(c);
  return area_unit_disk_intersection(centers);
}

PerturbationField gradient_centers(std::span<const Point2> c) {
  const DiskArrangement arr = full_arrangement(c);
  PerturbationField g(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int a = arr.arc_of_disk[i];
    const Point2 ps = c[i] + unit_vector(arr.start_angle[a]);
    const Point2 pe = c[i] + unit_vector(arr.end_angle[a]);
    g[i] = perp(ps - pe);
  }
  return g;
}

Multipliers solve_multipliers_centers(const ReuleauxPolygon& r) {
  return least_squares_multipliers(r.vertices(), gradient_centers(r.vertices()).flatten());
}

BlockMatrix hessian_area_centers(std::span<const Point2> c) {
  const DiskArrangement arr = full_arrangement(c);
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(arr.disk_of_arc.size());
  BlockMatrix h(n);
  for (int i = 0; i < n; ++i) {
    const int a = arr.arc_of_disk[i];
    const int pv = arr.disk_of_arc[(a + m - 1) % m];
    const int nx = arr.disk_of_arc[(a + 1) % m];
    const double s = arr.start_angle[a], e = arr.end_angle[a];
    const Point2 es = unit_vector(s), ee = unit_vector(e);
    const Point2 ps = c[i] + es, pe = c[i] + ee;

    const Eigen::Vector2d b = to_eigen(unit_vector(0.5 * (s + e)));
    const Eigen::Vector2d t(-b.y(), b.x());
    Mat2 diag = std::sin(e - s) * (b * b.transpose() - t * t.transpose());

    const Point2 rs = ps - c[pv], re = pe - c[nx];
    const double sin_s = std::abs(cross(es, rs)), cos_s = dot(es, rs);
    const double sin_e = std::abs(cross(ee, re)), cos_e = dot(ee, re);
    if (sin_s < 1e-12 || sin_e < 1e-12) throw Error(Errc::SingularArc, "tangent boundary circles");
    diag -= (cos_e / sin_e) * outer(ee, ee) + (cos_s / sin_s) * outer(es, es);

    h.add_block(i, i, diag);
    h.add_block(i, nx, outer(ee, re) / sin_e);
    h.add_block(i, pv, outer(es, rs) / sin_s);
  }
  return h;
}

BlockMatrix hessian_area_centers(const ReuleauxPolygon& r) { return hessian_area_centers(r.vertices()); }

PerturbationField blaschke_centers(const ReuleauxPolygon& r) {
  const int n = r.size();
  const int k = r.k();
  if (n < 5) throw Error(Errc::InvalidN, "no Blaschke move exists for the triangle");
  PerturbationField w(static_cast<std::size_t>(n));
  const Point2 w0 = normalized(perp(r.vertex(0) - r.vertex(k)));
  const Point2 u = normalized(perp(r.vertex(1) - r.vertex(k + 1)));
  const Point2 d = r.vertex(k + 1) - r.vertex(0);
  w[0] = w0;
  w[k + 1] = (dot(d, w0) / dot(d, u)) * u;
  return w;
}

double quadratic_form_blaschke_centers(int n) {
  if (n < 5 || n % 2 == 0) throw Error(Errc::InvalidN, "Blaschke moves need odd n >= 5");
  const ReuleauxPolygon r = ReuleauxPolygon::regular(n);
  const Multipliers m = solve_multipliers_centers(r);
  BlockMatrix h = hessian_area_centers(r);
  h += hessian_constraints(r.vertices(), m.lambda);
  return h.quadratic_form(blaschke_centers(r));
}

}  // namespace reuleaux
