#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "reuleaux/geometry.hpp"

namespace reuleaux {

enum class Mode { Maximize, Minimize };

struct OptimizeConfig {
  Mode mode = Mode::Maximize;
  double step0 = 0.5;
  double shrink = 0.5;
  int max_iters = 20000;
  double grad_tol = 1e-7;
  double merge_tol = 1e-5;

  /// Throws InvalidInput unless step0 > 0, shrink in (0,1), grad_tol > 0 and
  /// merge_tol >= the vertex merge distance.
  void check() const;
};

struct TraceRecord {
  int iter = 0;
  int n = 0;
  double area = 0.0;
  double grad_norm = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;
};

struct Trace {
  std::vector<TraceRecord> records;
  /// iter,n,area,grad_norm,theta_min,theta_max
  void write_csv(std::ostream& out) const;
};

struct OptimizeResult {
  ReuleauxPolygon polygon;
  Trace trace;
  int merges = 0;
  bool converged = false;
  std::string stop_reason;
};

/// One feasible move of vertex i along `direction` by `step`, halving the step
/// until propagate_vertex_perturbation succeeds. Throws Stall if no feasible step
/// above 1e-14 exists.
ReuleauxPolygon step_vertex(const ReuleauxPolygon& r, int i, double step, const Point2& direction,
                            double shrink = 0.5);

/// Collapses the arc opposite vertex j (length theta_j ~ 0): x_{j+k} and x_{j+k+1}
/// are snapped together by moving x_{j-1} (or x_{j+1}) onto the matching circle
/// intersection, then x_j and the duplicate are dropped. Of the two snaps the one
/// with smaller area wins. Returns a Reuleaux polygon with n - 2 vertices.
ReuleauxPolygon merge_vanishing_arc(const ReuleauxPolygon& r, int j);

/// Cyclic single-vertex gradient moves with backtracking. Maximize stops once every
/// per-vertex gradient is below grad_tol. Minimize merges vertices whenever an arc
/// drops below merge_tol and stops at the triangle. Throws Stall if a full sweep
/// makes no progress.
OptimizeResult run(const ReuleauxPolygon& r0, const OptimizeConfig& cfg);

enum class CriticalClass { RegularMaxCandidate, Triangle, NonCritical };
const char* to_string(CriticalClass c) noexcept;
CriticalClass classify_critical(const ReuleauxPolygon& r, double tol);

/// Regular n-gon followed by `steps` random feasible single-vertex moves of size up
/// to `amplitude`, drawn from a mt19937_64 seeded with `seed`.
ReuleauxPolygon random_reuleaux(int n, std::uint64_t seed, int steps = -1, double amplitude = 0.06);

}  // namespace reuleaux
