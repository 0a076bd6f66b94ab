#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "reuleaux/area.hpp"
#include "reuleaux/lagrangian.hpp"
#include "reuleaux/verify.hpp"
#include "support.hpp"

using namespace reuleaux;
using rt::kPi;

namespace {

double vertex_form_value(int n) { return 2 * std::tan(kPi / (2 * n)) * (1 - 2 * std::cos(kPi / n)); }

bool arcs_equal(const ReuleauxPolygon& r, double tol) { return r.theta_max() - r.theta_min() < tol; }

// Projects q onto the closing subspace sum q_i D_i^perp = 0.
std::vector<double> closing_q(const ReuleauxPolygon& r, std::vector<double> q) {
  const int n = r.size();
  Eigen::MatrixXd m(2, n);
  for (int i = 0; i < n; ++i) {
    const Point2 d = perp(r.vertex(i + r.k()) - r.vertex(i));
    m(0, i) = d.x();
    m(1, i) = d.y();
  }
  Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(q.data(), n);
  v -= m.transpose() * (m * m.transpose()).ldlt().solve(m * v);
  return {v.data(), v.data() + n};
}

Eigen::MatrixXd skew_free_diag(const Point2& a, const Point2& b) {
  return (Eigen::Matrix2d::Identity() - to_eigen(a) * to_eigen(a).transpose()) +
         (Eigen::Matrix2d::Identity() - to_eigen(b) * to_eigen(b).transpose());
}

}  // namespace

TEST(Constraints, ValuesAtRegularAndScaled) {
  const ReuleauxPolygon r = build_regular_reuleaux(7);
  for (double v : constraint_values(r.vertices())) EXPECT_NEAR(v, 0.0, 1e-12);
  std::vector<Point2> scaled;
  for (const Point2& p : r.vertices()) scaled.push_back(1.1 * p);
  for (double v : constraint_values(scaled)) EXPECT_NEAR(v, 0.1, 1e-12);
}

TEST(Constraints, ValuesMatchDirectDistances) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Point2> x;
  for (int i = 0; i < 9; ++i) x.emplace_back(u(rng), u(rng));
  const std::vector<double> c = constraint_values(x);
  for (int i = 0; i < 9; ++i) {
    const double dx = x[i].x() - x[(i + 4) % 9].x(), dy = x[i].y() - x[(i + 4) % 9].y();
    EXPECT_NEAR(c[i], std::sqrt(dx * dx + dy * dy) - 1, 1e-15);
  }
  x[4] = x[0];
  try {
    constraint_values(x);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CoincidentPoints);
  }
}

TEST(Constraints, GradientStructureAndRank) {
  const ReuleauxPolygon r = build_regular_reuleaux(5);
  const std::vector<ConstraintGradient> g = constraint_gradients(r.vertices());
  ASSERT_EQ(g.size(), 5u);
  for (const ConstraintGradient& c : g) {
    EXPECT_EQ(c.j, (c.i + 2) % 5);
    EXPECT_NEAR(norm2(c.at_i) + norm2(c.at_j), 2.0, 1e-14);
  }
  const Eigen::MatrixXd jac = constraint_jacobian(r.vertices());
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (j != i && j != (i + 2) % 5) {
        EXPECT_EQ(jac.block(i, 2 * j, 1, 2).norm(), 0.0);
      }
    }
  }
  EXPECT_EQ(constraint_rank(r.vertices()), 5);
  // Independent elimination.
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
  lu.setThreshold(1e-10);
  EXPECT_EQ(lu.rank(), 5);
}

TEST(VertexMultipliers, RegularValues) {
  for (int n = 3; n <= 31; n += 2) {
    const Multipliers m = solve_multipliers_vertices(build_regular_reuleaux(n));
    for (double l : m.lambda) EXPECT_NEAR(l, -std::tan(kPi / (2 * n)), 1e-10) << n;
    EXPECT_LT(m.residual, 1e-10);
  }
  EXPECT_NEAR(solve_multipliers_vertices(build_regular_reuleaux(7)).lambda[0], -0.2282434744, 1e-9);
}

TEST(VertexMultipliers, NonRegularLeavesResidual) {
  for (const ReuleauxPolygon& r : rt::corpus(7, 10, 5)) {
    const Multipliers m = solve_multipliers_vertices(r);
    EXPECT_GT(m.residual, 1e-6);
    // The residual is the norm of the stationarity defect.
    Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(m.lambda.data(), 7);
    const Eigen::VectorXd defect = area_gradient_vertices(r) + constraint_jacobian(r.vertices()).transpose() * lam;
    EXPECT_NEAR(defect.norm(), m.residual, 1e-12);
  }
}

TEST(VertexHessian, MatchesFiniteDifferences) {
  for (int n : {5, 7, 9}) {
    const ReuleauxPolygon r = build_regular_reuleaux(n);
    const Multipliers m = solve_multipliers_vertices(r);
    const BlockMatrix an = hessian_lagrangian_vertices(r, m);
    const BlockMatrix fd = fd_hessian(
        [&](const LongVector& x) { return lagrangian_vertices_extended(x, m.lambda); }, flatten(r.vertices()), 1e-5);
    EXPECT_LT(an.max_abs_diff(fd), n == 5 ? 1e-6 : 1e-5) << n;
    EXPECT_LT(an.asymmetry(), 1e-12);
  }
}

TEST(VertexHessian, MatchesFiniteDifferencesOffRegular) {
  for (const ReuleauxPolygon& r : rt::corpus(7, 3, 40)) {
    const Multipliers m = solve_multipliers_vertices(r);
    const BlockMatrix fd = fd_hessian(
        [&](const LongVector& x) { return lagrangian_vertices_extended(x, m.lambda); }, flatten(r.vertices()), 1e-5);
    EXPECT_LT(hessian_lagrangian_vertices(r, m).max_abs_diff(fd), 1e-5);
  }
}

TEST(VertexHessian, PolygonPartRowsCancel) {
  const BlockMatrix h = hessian_polygon_area(7);
  for (int i = 0; i < 7; ++i) {
    Mat2 row = Mat2::Zero();
    for (int j = 0; j < 7; ++j) row += h.block(i, j);
    EXPECT_EQ(row.norm(), 0.0);
  }
  EXPECT_EQ(h.asymmetry(), 0.0);
  for (int i = 0; i < 7; ++i) {
    const Mat2 b = h.block(i, (i + 1) % 7);
    EXPECT_EQ((b + b.transpose()).norm(), 0.0);
  }
}

TEST(VertexHessian, ConstraintDiagonalAtRegular) {
  for (int n : {5, 7, 11}) {
    const ReuleauxPolygon r = build_regular_reuleaux(n);
    const int k = r.k();
    const std::vector<double> lam(n, -std::tan(kPi / (2 * n)));
    const BlockMatrix h = hessian_constraints(r.vertices(), lam);
    for (int i = 0; i < n; ++i) {
      const Point2 da = r.vertex(i) - r.vertex(i + k), db = r.vertex(i) - r.vertex(i + k + 1);
      const Eigen::MatrixXd expected = -std::tan(kPi / (2 * n)) * skew_free_diag(da, db);
      EXPECT_LT((h.block(i, i) - expected).norm(), 1e-14);
    }
  }
}

TEST(CriticalCone, ZeroQIsZeroField) {
  const ReuleauxPolygon r = build_regular_reuleaux(7);
  const CriticalConeVector v = critical_cone_from_q(r, std::vector<double>(7, 0.0));
  for (const Point2& w : v.w) EXPECT_EQ(norm(w), 0.0);
  EXPECT_EQ(quadratic_form_vertices(r, v), 0.0);
}

TEST(CriticalCone, BlaschkeVectorIsInCone) {
  for (int n = 5; n <= 31; n += 2) {
    const ReuleauxPolygon r = build_regular_reuleaux(n);
    const std::vector<double> q = blaschke_q(n);
    EXPECT_EQ(q[0], 1.0);
    EXPECT_EQ(q[1], 1.0);
    EXPECT_NEAR(q[n - r.k()], 2 * std::cos(kPi / n), 1e-15);
    const CriticalConeVector v = critical_cone_from_q(r, q);
    EXPECT_LT(cone_residual(r, v.w), 1e-10);
    EXPECT_EQ(norm(v.w[0]), 0.0);
  }
}

TEST(CriticalCone, RandomClosingQ) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int n : {5, 7, 9}) {
    const ReuleauxPolygon r = build_regular_reuleaux(n);
    for (int s = 0; s < 20; ++s) {
      std::vector<double> q(n);
      for (double& x : q) x = g(rng);
      const CriticalConeVector v = critical_cone_from_q(r, closing_q(r, q));
      EXPECT_LT(cone_residual(r, v.w), 1e-10);
      for (int i = 0; i < n; ++i) {
        const Point2 d = r.vertex(i + r.k()) - r.vertex(i);
        EXPECT_NEAR(dot(d, v.w[(i + r.k()) % n] - v.w[i]), 0.0, 1e-10);
      }
    }
  }
}

TEST(CriticalCone, OpenWalkRejected) {
  const ReuleauxPolygon r = build_regular_reuleaux(7);
  std::vector<double> q(7, 0.0);
  q[2] = 1.0;
  try {
    critical_cone_from_q(r, q);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InconsistentQ);
  }
}

TEST(QuadraticForm, BlaschkeValueAndSign) {
  EXPECT_NEAR(vertex_form_value(5), -0.4016, 1e-4);
  for (int n = 5; n <= 31; n += 2) {
    const ReuleauxPolygon r = build_regular_reuleaux(n);
    const CriticalConeVector v = critical_cone_from_q(r, blaschke_q(n));
    const double full = quadratic_form_vertices(r, v);
    const double contracted = hessian_lagrangian_vertices(r, solve_multipliers_vertices(r)).quadratic_form(v.w);
    EXPECT_NEAR(full, vertex_form_value(n), 1e-10) << n;
    EXPECT_NEAR(contracted, vertex_form_value(n), 1e-10) << n;
    EXPECT_NEAR(quadratic_form_vertices_reduced(n, v), vertex_form_value(n), 1e-10) << n;
    EXPECT_LT(full, 0.0);
  }
}

TEST(QuadraticForm, BlaschkeSkewTermCancels) {
  for (int n = 5; n <= 15; n += 2) {
    const ReuleauxPolygon r = build_regular_reuleaux(n);
    const CriticalConeVector v = critical_cone_from_q(r, blaschke_q(n));
    EXPECT_NEAR(hessian_polygon_area(n).quadratic_form(v.w), 0.0, 1e-14);
  }
}

TEST(QuadraticForm, ReducedFormAgreesForRandomClosingQ) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int n : {5, 7, 9, 11}) {
    const ReuleauxPolygon r = build_regular_reuleaux(n);
    for (int s = 0; s < 10; ++s) {
      std::vector<double> q(n);
      for (double& x : q) x = g(rng);
      const CriticalConeVector v = critical_cone_from_q(r, closing_q(r, q));
      EXPECT_NEAR(quadratic_form_vertices(r, v), quadratic_form_vertices_reduced(n, v), 1e-10);
    }
  }
}

TEST(QuadraticForm, TranslationGaugeIsInvisible) {
  const ReuleauxPolygon r = build_regular_reuleaux(9);
  const CriticalConeVector v = critical_cone_from_q(r, blaschke_q(9));
  CriticalConeVector shifted = v;
  for (std::size_t i = 0; i < shifted.w.size(); ++i) shifted.w[i] = shifted.w[i] + Point2(0.3, -1.2);
  EXPECT_NEAR(quadratic_form_vertices(r, shifted), quadratic_form_vertices(r, v), 1e-12);
  PerturbationField t(9);
  for (int i = 0; i < 9; ++i) t[i] = Point2(0.3, -1.2);
  EXPECT_NEAR(hessian_lagrangian_vertices(r, solve_multipliers_vertices(r)).quadratic_form(t), 0.0, 1e-12);
}

TEST(CenterGradient, RegularPointsInwardAlongBisectors) {
  for (int n : {5, 7, 9}) {
    const ReuleauxPolygon r = build_regular_reuleaux(n);
    const PerturbationField g = gradient_centers(r.vertices());
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(norm(g[i]), norm(g[0]), 1e-14);
      EXPECT_NEAR(dot(normalized(g[i]), vertex_bisector(r, i)), 1.0, 1e-14);
    }
  }
}

TEST(CenterGradient, MatchesDifferencesAndSumsToZero) {
  for (const ReuleauxPolygon& r : rt::corpus(7, 10, 90)) {
    const PerturbationField g = gradient_centers(r.vertices());
    Point2 sum(0, 0);
    for (const Point2& v : g) sum += v;
    EXPECT_LT(norm(sum), 1e-10);
    const Eigen::VectorXd c = flatten(r.vertices());
    const double h = 1e-6;
    for (int j = 0; j < 14; ++j) {
      Eigen::VectorXd cp = c, cm = c;
      cp[j] += h;
      cm[j] -= h;
      const double fd = (area_from_centers(cp) - area_from_centers(cm)) / (2 * h);
      const double an = j % 2 == 0 ? g[j / 2].x() : g[j / 2].y();
      EXPECT_LT(std::abs(an - fd), 1e-5 * std::max(std::abs(fd), 1e-3));
    }
    EXPECT_NEAR(area_from_centers(c), area(r), 1e-13);
  }
}

TEST(CenterGradient, RedundantDiskRejected) {
  const ReuleauxPolygon r = build_regular_reuleaux(5);
  std::vector<Point2> c(r.vertices().begin(), r.vertices().end());
  c.push_back({0, 0});
  try {
    gradient_centers(c);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RedundantCenter);
  }
}

TEST(CenterMultipliers, RegularAreEqualAndPositive) {
  for (int n = 5; n <= 21; n += 2) {
    const Multipliers m = solve_multipliers_centers(build_regular_reuleaux(n));
    for (double l : m.lambda) {
      EXPECT_NEAR(l, m.lambda[0], 1e-12);
      EXPECT_NEAR(l, std::tan(kPi / (2 * n)), 1e-10);
      EXPECT_GT(l, 0.0);
    }
    EXPECT_LT(m.residual, 1e-10);
  }
}

TEST(CenterMultipliers, NonRegularAreUnequal) {
  for (const ReuleauxPolygon& r : rt::corpus(7, 10, 95)) {
    const Multipliers m = solve_multipliers_centers(r);
    const auto [lo, hi] = std::minmax_element(m.lambda.begin(), m.lambda.end());
    EXPECT_GT(*hi - *lo, 1e-6);
  }
}

TEST(Multipliers, SignFlipsBetweenFormulations) {
  for (int n = 5; n <= 31; n += 2) {
    const ReuleauxPolygon r = build_regular_reuleaux(n);
    for (double l : solve_multipliers_vertices(r).lambda) EXPECT_LT(l, 0.0);
    for (double l : solve_multipliers_centers(r).lambda) EXPECT_GT(l, 0.0);
  }
}

TEST(Multipliers, StationarityExactlyAtRegular) {
  std::vector<ReuleauxPolygon> all;
  for (int n = 5; n <= 15; n += 2) all.push_back(build_regular_reuleaux(n));
  for (int n : {5, 7, 9, 11}) {
    for (const ReuleauxPolygon& r : rt::corpus(n, 50, 3000 + n)) all.push_back(r);
  }
  for (const ReuleauxPolygon& r : all) {
    const bool regular = arcs_equal(r, 1e-8);
    EXPECT_EQ(solve_multipliers_vertices(r).residual < 1e-9, regular);
    EXPECT_EQ(solve_multipliers_centers(r).residual < 1e-9, regular);
  }
}

TEST(CenterHessian, MatchesFiniteDifferences) {
  for (int n : {5, 7, 9}) {
    const ReuleauxPolygon r = build_regular_reuleaux(n);
    const BlockMatrix an = hessian_area_centers(r);
    const DiskArrangement pattern = intersect_unit_disks(r.vertices());
    const BlockMatrix fd = fd_hessian([&](const LongVector& c) { return area_from_centers_extended(c, pattern); },
                                      flatten(r.vertices()), 1e-4);
    EXPECT_LT(an.max_abs_diff(fd), 1e-5) << n;
    EXPECT_LT(an.asymmetry(), 1e-12);
    // Blocks vanish exactly where the difference Hessian does.
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const bool zero = an.block(i, j).norm() == 0.0;
        EXPECT_EQ(zero, fd.block(i, j).norm() < 1e-6) << i << ' ' << j;
      }
    }
  }
}

// Short arcs inflate the fourth derivatives, so the step is smaller than at regular points.
TEST(CenterHessian, MatchesFiniteDifferencesOffRegular) {
  for (const ReuleauxPolygon& r : rt::corpus(9, 3, 120)) {
    const DiskArrangement pattern = intersect_unit_disks(r.vertices());
    const BlockMatrix fd = fd_hessian([&](const LongVector& c) { return area_from_centers_extended(c, pattern); },
                                      flatten(r.vertices()), 1e-5);
    EXPECT_LT(hessian_area_centers(r).max_abs_diff(fd), 1e-5);
  }
}

TEST(CenterBlaschke, NegativeWithPositiveRatio) {
  for (int n = 5; n <= 31; n += 2) {
    const double q = quadratic_form_blaschke_centers(n);
    EXPECT_LT(q, 0.0) << n;
    const double ratio = q / (1 - 2 * std::cos(kPi / n));
    EXPECT_GT(ratio, 0.0);
    EXPECT_NEAR(ratio, 2 * std::tan(kPi / (2 * n)), 1e-10) << n;
  }
  try {
    quadratic_form_blaschke_centers(3);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidN);
  }
}

TEST(CenterBlaschke, MoveKeepsDiametersToFirstOrder) {
  for (int n : {5, 7, 9}) {
    const ReuleauxPolygon r = build_regular_reuleaux(n);
    const PerturbationField w = blaschke_centers(r);
    int moving = 0;
    for (int i = 0; i < n; ++i) {
      if (norm(w[i]) > 0) ++moving;
      const Point2 d = r.vertex(i) - r.vertex(i + r.k());
      EXPECT_NEAR(dot(d, w[i] - w[(i + r.k()) % n]), 0.0, 1e-12);
    }
    EXPECT_EQ(moving, 2);
  }
}
