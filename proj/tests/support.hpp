#pragma once

// Test-side oracles. These avoid the library's closed forms on purpose.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "reuleaux/geometry.hpp"
#include "reuleaux/optimize.hpp"
#include "reuleaux/sensitivity.hpp"

namespace rt {

using reuleaux::Point2;
using reuleaux::ReuleauxPolygon;

inline constexpr double kPi = std::numbers::pi;

inline double shoelace(const std::vector<Point2>& pts) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2& a = pts[i];
    const Point2& b = pts[(i + 1) % pts.size()];
    s += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * s;
}

/// Shoelace over m samples per boundary arc. Arc angles come from atan2, not from
/// the library's stored arc lengths.
inline double sampled_area(const reuleaux::DiskPolygon& p, int m) {
  std::vector<Point2> pts;
  for (int i = 0; i < p.size(); ++i) {
    const Point2 c = p.arc_center(i);
    const Point2 a = p.vertex(i) - c, b = p.vertex(i + 1) - c;
    const double a0 = std::atan2(a.y(), a.x());
    double sweep = std::atan2(b.y(), b.x()) - a0;
    while (sweep <= 0) sweep += 2 * kPi;
    for (int s = 0; s < m; ++s) {
      const double phi = a0 + sweep * s / m;
      pts.emplace_back(c.x() + std::cos(phi), c.y() + std::sin(phi));
    }
  }
  return shoelace(pts);
}

/// Composite Simpson on [a, b] with m (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int m) {
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int j = 1; j < m; ++j) s += (j % 2 ? 4.0 : 2.0) * f(a + j * h);
  return s * h / 3.0;
}

/// Central difference of fn along the constrained path t -> R(t) moving vertex i by t v.
inline double constrained_fd(const std::function<double(const ReuleauxPolygon&)>& fn, const ReuleauxPolygon& r,
                             int i, const Point2& v, double h) {
  return (fn(reuleaux::propagate_vertex_perturbation(r, i, v, h)) -
          fn(reuleaux::propagate_vertex_perturbation(r, i, v, -h))) /
         (2 * h);
}

inline double constrained_fd2(const std::function<double(const ReuleauxPolygon&)>& fn, const ReuleauxPolygon& r,
                              int i, const Point2& v, double h) {
  return (fn(reuleaux::propagate_vertex_perturbation(r, i, v, h)) - 2 * fn(r) +
          fn(reuleaux::propagate_vertex_perturbation(r, i, v, -h))) /
         (h * h);
}

inline std::vector<ReuleauxPolygon> corpus(int n, int count, std::uint64_t seed) {
  std::vector<ReuleauxPolygon> out;
  for (int s = 0; s < count; ++s) out.push_back(reuleaux::random_reuleaux(n, seed + static_cast<std::uint64_t>(s)));
  return out;
}

inline Point2 random_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  return reuleaux::unit_vector(angle(rng));
}

/// Moves vertex 0 along d until theta_0 = theta_{k+1} (by bisection), if a sign
/// change shows up within |t| <= 0.2.
inline std::optional<ReuleauxPolygon> equalize_first_pair(const ReuleauxPolygon& r, const Point2& d) {
  const int k = r.k();
  auto gap = [&](double t) -> std::optional<double> {
    try {
      ReuleauxPolygon p = reuleaux::propagate_vertex_perturbation(r, 0, d, t);
      return p.theta(0) - p.theta(k + 1);
    } catch (const reuleaux::Error&) {
      return std::nullopt;
    }
  };
  for (double sign : {1.0, -1.0}) {
    double lo = 0.0;
    std::optional<double> g_lo = gap(0.0);
    for (double t = 0.005; t <= 0.2; t += 0.005) {
      std::optional<double> g = gap(sign * t);
      if (!g) break;
      if ((*g > 0) != (*g_lo > 0)) {
        double a = lo, b = sign * t;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (a + b);
          std::optional<double> gm = gap(mid);
          if (!gm) return std::nullopt;
          if ((*gm > 0) == (*g_lo > 0)) a = mid; else b = mid;
        }
        return reuleaux::propagate_vertex_perturbation(r, 0, d, 0.5 * (a + b));
      }
      lo = sign * t;
      g_lo = g;
    }
  }
  return std::nullopt;
}

}  // namespace rt
