#include "reuleaux/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>

#include "reuleaux/area.hpp"
#include "reuleaux/sensitivity.hpp"

namespace reuleaux {

namespace {

constexpr double kMinStep = 1e-14;

std::optional<ReuleauxPolygon> try_propagate(const ReuleauxPolygon& r, int i, const Point2& d, double t) {
  try {
    return propagate_vertex_perturbation(r, i, d, t);
  } catch (const Error& e) {
    if (e.code() == Errc::StepTooLarge) return std::nullopt;
    throw;
  }
}

TraceRecord record(int iter, const ReuleauxPolygon& r) {
  TraceRecord rec;
  rec.iter = iter;
  rec.n = r.size();
  rec.area = area(r);
  rec.grad_norm = r.size() > 3 && r.theta_min() > kMinArc ? max_gradient_norm(r) : 0.0;
  rec.theta_min = r.theta_min();
  rec.theta_max = r.theta_max();
  return rec;
}

// Strictly improving move of vertex i; the trial step adapts per vertex.
std::optional<ReuleauxPolygon> improve_vertex(const ReuleauxPolygon& r, int i, double current_area,
                                              const OptimizeConfig& cfg, double& step) {
  Point2 g = gradient_reuleaux(r, i);
  Point2 d = cfg.mode == Mode::Maximize ? g : -g;
  if (norm(g) < cfg.grad_tol) {
    if (cfg.mode == Mode::Maximize) return std::nullopt;
    // Critical vertex: the area is concave along the bisector, so either side descends.
    d = vertex_bisector(r, i);
  }
  for (double t = step; t * norm(d) > kMinStep; t *= cfg.shrink) {
    std::optional<ReuleauxPolygon> trial = try_propagate(r, i, d, t);
    if (!trial) continue;
    const double a = area(*trial);
    const bool better = cfg.mode == Mode::Maximize ? a > current_area : a < current_area;
    if (better) {
      step = std::min(cfg.step0, 2.0 * t);
      return trial;
    }
  }
  step = cfg.step0;
  return std::nullopt;
}

int vanishing_arc(const ReuleauxPolygon& r, double merge_tol) {
  int best = -1;
  for (int j = 0; j < r.size(); ++j) {
    if (r.theta(j) < merge_tol && (best < 0 || r.theta(j) < r.theta(best))) best = j;
  }
  return best;
}

}  // namespace

void OptimizeConfig::check() const {
  if (!(step0 > 0.0)) throw Error(Errc::InvalidInput, "step0 must be positive");
  if (!(shrink > 0.0 && shrink < 1.0)) throw Error(Errc::InvalidInput, "shrink must lie in (0, 1)");
  if (!(grad_tol > 0.0)) throw Error(Errc::InvalidInput, "grad_tol must be positive");
  if (!(merge_tol >= Tolerances{}.merge)) throw Error(Errc::InvalidInput, "merge_tol below the merge distance");
  if (max_iters < 0) throw Error(Errc::InvalidInput, "max_iters must be nonnegative");
}

void Trace::write_csv(std::ostream& out) const {
  out << "iter,n,area,grad_norm,theta_min,theta_max\n" << std::setprecision(17);
  for (const TraceRecord& r : records) {
    out << r.iter << ',' << r.n << ',' << r.area << ',' << r.grad_norm << ',' << r.theta_min << ','
        << r.theta_max << '\n';
  }
}

ReuleauxPolygon step_vertex(const ReuleauxPolygon& r, int i, double step, const Point2& direction,
                            double shrink) {
  if (step == 0.0 || norm(direction) == 0.0) return r;
  if (r.size() == 3) {
    throw Error(Errc::TriangleImmovable, "single-vertex perturbations do not exist for the Reuleaux triangle");
  }
  for (double t = step; std::abs(t) * norm(direction) > kMinStep; t *= shrink) {
    if (std::optional<ReuleauxPolygon> out = try_propagate(r, i, direction, t)) return *out;
  }
  throw Error(Errc::Stall, "no feasible step above 1e-14");
}

ReuleauxPolygon merge_vanishing_arc(const ReuleauxPolygon& r, int j) {
  const int n = r.size();
  const int k = r.k();
  if (n < 5) throw Error(Errc::InvalidN, "the triangle cannot be reduced");
  std::vector<Point2> x(r.vertices().begin(), r.vertices().end());
  auto wrap = [n](int i) { return static_cast<int>(wrap_index(i, n)); };

  auto reduced = [&](std::vector<Point2> v, int drop_a, int drop_b) -> std::optional<ReuleauxPolygon> {
    std::vector<Point2> kept;
    for (int i = 0; i < n; ++i) {
      if (i != drop_a && i != drop_b) kept.push_back(v[i]);
    }
    if (kept.size() % 2 == 0) throw Error(Errc::NonOddReduction, "merge produced an even vertex count");
    try {
      return ReuleauxPolygon::from_vertices(std::move(kept));
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  std::optional<ReuleauxPolygon> a, b;
  try {
    // x_{j+k} joins x_{j+k+1}; x_{j-1} follows onto the circles of its two partners.
    std::vector<Point2> v = x;
    v[wrap(j - 1)] = circle_circle_intersection_near(v[wrap(j + k - 1)], v[wrap(j + k + 1)], v[wrap(j - 1)]);
    a = reduced(std::move(v), wrap(j), wrap(j + k));
  } catch (const Error& e) {
    if (e.code() == Errc::NonOddReduction) throw;
  }
  try {
    // x_{j+k+1} joins x_{j+k}; x_{j+1} follows.
    std::vector<Point2> v = x;
    v[wrap(j + 1)] = circle_circle_intersection_near(v[wrap(j + k)], v[wrap(j + k + 2)], v[wrap(j + 1)]);
    b = reduced(std::move(v), wrap(j), wrap(j + k + 1));
  } catch (const Error& e) {
    if (e.code() == Errc::NonOddReduction) throw;
  }
  if (a && b) return area(*a) <= area(*b) ? *a : *b;
  if (a) return *a;
  if (b) return *b;
  throw Error(Errc::Stall, "vertex merge did not produce a valid Reuleaux polygon");
}

OptimizeResult run(const ReuleauxPolygon& r0, const OptimizeConfig& cfg) {
  cfg.check();
  OptimizeResult out{r0, {}, 0, false, ""};
  ReuleauxPolygon& r = out.polygon;
  std::vector<double> steps(r.size(), cfg.step0);

  for (int iter = 0;; ++iter) {
    if (cfg.mode == Mode::Minimize) {
      for (int j = vanishing_arc(r, cfg.merge_tol); j >= 0 && r.size() >= 5;
           j = vanishing_arc(r, cfg.merge_tol)) {
        r = merge_vanishing_arc(r, j);
        ++out.merges;
        steps.assign(r.size(), cfg.step0);
      }
    }
    out.trace.records.push_back(record(iter, r));

    if (r.size() == 3) {
      out.converged = true;
      out.stop_reason = "triangle";
      return out;
    }
    if (cfg.mode == Mode::Maximize && out.trace.records.back().grad_norm < cfg.grad_tol) {
      out.converged = true;
      out.stop_reason = "gradient below tolerance";
      return out;
    }
    if (iter >= cfg.max_iters) {
      out.stop_reason = "iteration limit";
      return out;
    }

    double current = out.trace.records.back().area;
    bool moved = false;
    for (int i = 0; i < r.size(); ++i) {
      if (std::optional<ReuleauxPolygon> next = improve_vertex(r, i, current, cfg, steps[i])) {
        r = *next;
        current = area(r);
        moved = true;
        if (cfg.mode == Mode::Minimize && vanishing_arc(r, cfg.merge_tol) >= 0) break;
      }
    }
    if (!moved) throw Error(Errc::Stall, "a full sweep made no progress");
  }
}

const char* to_string(CriticalClass c) noexcept {
  switch (c) {
    case CriticalClass::RegularMaxCandidate: return "regular_max_candidate";
    case CriticalClass::Triangle: return "triangle";
    case CriticalClass::NonCritical: return "non_critical";
  }
  return "unknown";
}

CriticalClass classify_critical(const ReuleauxPolygon& r, double tol) {
  if (r.size() == 3) return CriticalClass::Triangle;
  for (int i = 0; i < r.size(); ++i) {
    if (!(norm(gradient_reuleaux(r, i)) < tol)) return CriticalClass::NonCritical;
  }
  return CriticalClass::RegularMaxCandidate;
}

ReuleauxPolygon random_reuleaux(int n, std::uint64_t seed, int steps, double amplitude) {
  ReuleauxPolygon r = ReuleauxPolygon::regular(n);
  if (n == 3) return r;
  if (steps < 0) steps = 4 * n;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> vertex(0, n - 1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> size(0.0, amplitude);
  // Keeps samples away from merged vertices, where the sensitivity formulas are singular.
  const double floor = 0.05 * std::numbers::pi / n;
  for (int s = 0; s < steps; ++s) {
    const int i = vertex(rng);
    const Point2 d = unit_vector(angle(rng));
    const double t = size(rng);
    std::optional<ReuleauxPolygon> next = try_propagate(r, i, d, t);
    if (next && next->theta_min() > floor) r = *next;
  }
  return r;
}

}  // namespace reuleaux
