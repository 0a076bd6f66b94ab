#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reuleaux/geometry.hpp"
#include "reuleaux/lagrangian.hpp"

namespace reuleaux {

/// Raw vertices from `{"n": int, "vertices": [[x, y], ...]}`. Throws Parse on
/// malformed text or when n does not match the vertex count.
std::vector<Point2> parse_polygon_json(const std::string& text);

/// Parses and validates; the result is canonicalized counter-clockwise.
ReuleauxPolygon load_polygon_json(const std::string& text);
ReuleauxPolygon load_polygon_file(const std::string& path);

std::string polygon_to_json(std::span<const Point2> vertices);
inline std::string polygon_to_json(const ReuleauxPolygon& r) { return polygon_to_json(r.vertices()); }

/// Accepts `regular:N`, `random:N`, `random:N:seed=S` or a path to a polygon JSON
/// file. `default_seed` is used by `random:N`.
ReuleauxPolygon resolve_polygon(const std::string& spec, std::uint64_t default_seed = 42);

/// `{"formulation": ..., "lambda": [...], "residual": r}`
std::string multipliers_to_json(const Multipliers& m, const std::string& formulation);

struct RenderOptions {
  double scale = 300.0;  // SVG user units per unit of width
  bool show_gradient = false;
};

/// Boundary arcs as elliptical-arc path commands, vertices as dots and, on request,
/// one arrow per vertex with a nonzero area gradient.
std::string render_svg(const ReuleauxPolygon& r, const RenderOptions& options = {});

}  // namespace reuleaux
