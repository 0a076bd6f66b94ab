#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "reuleaux/area.hpp"
#include "reuleaux/optimize.hpp"
#include "reuleaux/sensitivity.hpp"
#include "support.hpp"

using namespace reuleaux;
using rt::kPi;

namespace {

OptimizeConfig config(Mode mode) {
  OptimizeConfig cfg;
  cfg.mode = mode;
  return cfg;
}

}  // namespace

TEST(StepVertex, ZeroStepOrDirectionIsIdentity) {
  const ReuleauxPolygon r = rt::corpus(7, 1, 1).front();
  const ReuleauxPolygon a = step_vertex(r, 2, 0.0, {1, 0});
  const ReuleauxPolygon reg = build_regular_reuleaux(7);
  const ReuleauxPolygon b = step_vertex(reg, 2, 0.1, gradient_reuleaux(reg, 2) * 0.0);
  for (int i = 0; i < 7; ++i) {
    EXPECT_EQ(a.vertex(i), r.vertex(i));
    EXPECT_EQ(b.vertex(i), reg.vertex(i));
  }
  EXPECT_LT(norm(gradient_reuleaux(reg, 2)), 1e-12);
}

TEST(StepVertex, DescentDirectionLowersArea) {
  for (const ReuleauxPolygon& r : rt::corpus(7, 10, 20)) {
    for (int i = 0; i < 7; ++i) {
      const Point2 g = gradient_reuleaux(r, i);
      if (norm(g) < 1e-8) continue;
      const ReuleauxPolygon s = step_vertex(r, i, 1e-3 / norm(g), -g);
      EXPECT_LT(area(s), area(r));
    }
  }
}

TEST(StepVertex, TriangleCannotMove) {
  EXPECT_THROW(step_vertex(build_regular_reuleaux(3), 0, 0.1, {1, 0}), Error);
}

TEST(Run, MaximizeReachesRegularArea) {
  for (const ReuleauxPolygon& r : rt::corpus(7, 4, 700)) {
    const OptimizeResult res = run(r, config(Mode::Maximize));
    EXPECT_TRUE(res.converged);
    EXPECT_EQ(res.polygon.size(), 7);
    EXPECT_NEAR(area(res.polygon), area_regular_reuleaux(7), 1e-8);
    EXPECT_EQ(classify_critical(res.polygon, 1e-6), CriticalClass::RegularMaxCandidate);
    for (std::size_t j = 1; j < res.trace.records.size(); ++j) {
      EXPECT_GT(res.trace.records[j].area, res.trace.records[j - 1].area);
    }
  }
}

TEST(Run, MinimizeMergesDownToTriangle) {
  for (const ReuleauxPolygon& r : rt::corpus(7, 4, 710)) {
    const OptimizeResult res = run(r, config(Mode::Minimize));
    EXPECT_TRUE(res.converged);
    EXPECT_EQ(res.polygon.size(), 3);
    EXPECT_EQ(res.merges, 2);
    EXPECT_NEAR(area(res.polygon), (kPi - std::sqrt(3.0)) / 2, 1e-6);
    for (std::size_t j = 1; j < res.trace.records.size(); ++j) {
      EXPECT_LT(res.trace.records[j].area, res.trace.records[j - 1].area);
      EXPECT_EQ(res.trace.records[j].n % 2, 1);
    }
  }
}

TEST(Run, MinimizeLeavesRegularStart) {
  const ReuleauxPolygon r = build_regular_reuleaux(9);
  const ReuleauxPolygon s = step_vertex(r, 0, 0.01, vertex_bisector(r, 0));
  EXPECT_LT(area(s), area(r));
  const OptimizeResult res = run(r, config(Mode::Minimize));
  ASSERT_GE(res.trace.records.size(), 2u);
  EXPECT_LT(res.trace.records[1].area, res.trace.records[0].area);
  EXPECT_EQ(res.polygon.size(), 3);
}

TEST(Run, DeterministicTraces) {
  const ReuleauxPolygon r = random_reuleaux(9, 4242);
  ASSERT_EQ(r.vertices()[3], random_reuleaux(9, 4242).vertices()[3]);
  for (Mode m : {Mode::Maximize, Mode::Minimize}) {
    std::ostringstream a, b;
    run(r, config(m)).trace.write_csv(a);
    run(r, config(m)).trace.write_csv(b);
    EXPECT_EQ(a.str(), b.str());
  }
}

TEST(Run, IterationLimitReported) {
  OptimizeConfig cfg = config(Mode::Maximize);
  cfg.max_iters = 2;
  const OptimizeResult res = run(rt::corpus(7, 1, 3).front(), cfg);
  EXPECT_FALSE(res.converged);
  EXPECT_EQ(res.stop_reason, "iteration limit");
  EXPECT_EQ(res.trace.records.size(), 3u);
}

TEST(Run, BadConfigRejected) {
  OptimizeConfig cfg;
  cfg.shrink = 1.5;
  EXPECT_THROW(run(build_regular_reuleaux(5), cfg), Error);
  cfg = OptimizeConfig{};
  cfg.grad_tol = 0;
  EXPECT_THROW(run(build_regular_reuleaux(5), cfg), Error);
}

TEST(Run, TraceCsvHeader) {
  std::ostringstream s;
  run(build_regular_reuleaux(5), config(Mode::Maximize)).trace.write_csv(s);
  EXPECT_EQ(s.str().substr(0, s.str().find('\n')), "iter,n,area,grad_norm,theta_min,theta_max");
}

TEST(Iterates, ConstraintResidualsStaySmall) {
  ReuleauxPolygon r = rt::corpus(9, 1, 31).front();
  for (int step = 0; step < 60; ++step) {
    const int i = step % 9;
    const Point2 g = gradient_reuleaux(r, i);
    if (norm(g) < 1e-12) continue;
    r = step_vertex(r, i, 0.2, g);
    EXPECT_LT(validate_constant_width(r.vertices()).max_residual, Tolerances{}.cw);
  }
}

TEST(Merge, ShortArcCollapsesToOddValidPolygon) {
  // Push one arc towards zero along descent moves, then merge.
  ReuleauxPolygon r = rt::corpus(7, 1, 55).front();
  OptimizeConfig cfg = config(Mode::Minimize);
  const OptimizeResult res = run(r, cfg);
  ASSERT_EQ(res.merges, 2);
  for (const TraceRecord& rec : res.trace.records) EXPECT_TRUE(rec.n == 7 || rec.n == 5 || rec.n == 3);

  // Direct merge on a 5-gon with a tiny arc.
  ReuleauxPolygon p = build_regular_reuleaux(5);
  for (int s = 0; s < 400 && p.theta_min() > 1e-6; ++s) {
    int j = 0;
    for (int i = 0; i < 5; ++i) {
      if (p.theta(i) < p.theta(j)) j = i;
    }
    try {
      p = step_vertex(p, (j + 2) % 5, 0.01, -gradient_reuleaux(p, (j + 2) % 5) - vertex_bisector(p, (j + 2) % 5));
    } catch (const Error&) {
      break;
    }
  }
  int j = 0;
  for (int i = 0; i < 5; ++i) {
    if (p.theta(i) < p.theta(j)) j = i;
  }
  const ReuleauxPolygon m = merge_vanishing_arc(p, j);
  EXPECT_EQ(m.size(), 3);
  EXPECT_TRUE(validate_constant_width(m.vertices()).pass);
  EXPECT_THROW(merge_vanishing_arc(build_regular_reuleaux(3), 0), Error);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify_critical(build_regular_reuleaux(3), 1e-8), CriticalClass::Triangle);
  EXPECT_EQ(classify_critical(build_regular_reuleaux(11), 1e-8), CriticalClass::RegularMaxCandidate);
  const ReuleauxPolygon r = build_regular_reuleaux(11);
  const ReuleauxPolygon p = propagate_vertex_perturbation(r, 4, vertex_bisector(r, 4), 0.01);
  EXPECT_GT(max_gradient_norm(p), 1e-8);
  EXPECT_EQ(classify_critical(p, 1e-8), CriticalClass::NonCritical);
  EXPECT_STREQ(to_string(CriticalClass::RegularMaxCandidate), "regular_max_candidate");
}

TEST(RandomInstances, ValidAndSeeded) {
  for (int n : {5, 7, 9, 15}) {
    const ReuleauxPolygon a = random_reuleaux(n, 99), b = random_reuleaux(n, 99), c = random_reuleaux(n, 100);
    EXPECT_TRUE(validate_constant_width(a.vertices()).pass);
    EXPECT_EQ(a.vertices()[0], b.vertices()[0]);
    EXPECT_NE(a.vertices()[0], c.vertices()[0]);
    EXPECT_GT(a.theta_min(), 0.05 * kPi / n);
  }
  EXPECT_EQ(random_reuleaux(3, 1).size(), 3);
}
