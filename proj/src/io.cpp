#include "reuleaux/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "reuleaux/optimize.hpp"
#include "reuleaux/sensitivity.hpp"

namespace reuleaux {

namespace {

int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw Error(Errc::Parse, "bad " + what + ": '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

}  // namespace

std::vector<Point2> parse_polygon_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("malformed polygon JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
    throw Error(Errc::Parse, "polygon JSON needs a \"vertices\" array");
  }
  std::vector<Point2> out;
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw Error(Errc::Parse, "each vertex must be a pair of numbers");
    }
    try {
      out.emplace_back(v[0].get<double>(), v[1].get<double>());
    } catch (const Error&) {
      throw Error(Errc::Parse, "vertex coordinates must be finite");
    }
  }
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() || j["n"].get<long long>() != static_cast<long long>(out.size())) {
      throw Error(Errc::Parse, "\"n\" does not match the number of vertices");
    }
  }
  return out;
}

ReuleauxPolygon load_polygon_json(const std::string& text) {
  return ReuleauxPolygon::from_vertices(parse_polygon_json(text));
}

ReuleauxPolygon load_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_polygon_json(buf.str());
}

std::string polygon_to_json(std::span<const Point2> vertices) {
  nlohmann::json j;
  j["n"] = vertices.size();
  j["vertices"] = nlohmann::json::array();
  for (const Point2& p : vertices) j["vertices"].push_back({p.x(), p.y()});
  return j.dump(2);
}

ReuleauxPolygon resolve_polygon(const std::string& spec, std::uint64_t default_seed) {
  const std::vector<std::string> parts = split(spec, ':');
  if (!parts.empty() && parts[0] == "regular") {
    if (parts.size() != 2) throw Error(Errc::Parse, "expected regular:N");
    return ReuleauxPolygon::regular(parse_int(parts[1], "vertex count"));
  }
  if (!parts.empty() && parts[0] == "random") {
    if (parts.size() < 2 || parts.size() > 3) throw Error(Errc::Parse, "expected random:N or random:N:seed=S");
    const int n = parse_int(parts[1], "vertex count");
    std::uint64_t seed = default_seed;
    if (parts.size() == 3) {
      if (parts[2].rfind("seed=", 0) != 0) throw Error(Errc::Parse, "expected seed=S");
      const std::string s = parts[2].substr(5);
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
      if (ec != std::errc() || ptr != s.data() + s.size()) throw Error(Errc::Parse, "bad seed: '" + s + "'");
    }
    if (n < 3 || n % 2 == 0) throw Error(Errc::InvalidN, "Reuleaux polygons need odd n >= 3");
    return random_reuleaux(n, seed);
  }
  return load_polygon_file(spec);
}

std::string multipliers_to_json(const Multipliers& m, const std::string& formulation) {
  nlohmann::json j;
  j["formulation"] = formulation;
  j["lambda"] = m.lambda;
  j["residual"] = m.residual;
  return j.dump(2);
}

std::string render_svg(const ReuleauxPolygon& r, const RenderOptions& options) {
  if (!(options.scale > 0.0)) throw Error(Errc::InvalidInput, "scale must be positive");
  const double s = options.scale;
  const double pad = 0.1 * s;
  double min_x = 1e300, max_y = -1e300, max_x = -1e300, min_y = 1e300;
  // Each boundary arc bulges at most 1 - cos(pi/6) beyond the vertex hull.
  for (const Point2& p : r.vertices()) {
    min_x = std::min(min_x, p.x() - 0.15);
    max_x = std::max(max_x, p.x() + 0.15);
    min_y = std::min(min_y, p.y() - 0.15);
    max_y = std::max(max_y, p.y() + 0.15);
  }
  auto sx = [&](double x) { return pad + s * (x - min_x); };
  auto sy = [&](double y) { return pad + s * (max_y - y); };
  const double width = 2 * pad + s * (max_x - min_x), height = 2 * pad + s * (max_y - min_y);

  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "  <defs><marker id=\"arrowhead\" markerWidth=\"8\" markerHeight=\"6\" refX=\"8\" refY=\"3\" "
         "orient=\"auto\"><path d=\"M0,0 L8,3 L0,6 z\" fill=\"#c0392b\"/></marker></defs>\n";

  // Counter-clockwise arcs in the plane are clockwise on screen (sweep flag 1).
  const int n = r.size();
  out << "  <path class=\"boundary\" fill=\"#eef3fb\" stroke=\"#1f3b73\" stroke-width=\"2\" d=\"M "
      << sx(r.vertex(0).x()) << ' ' << sy(r.vertex(0).y());
  for (int i = 0; i < n; ++i) {
    const Point2& q = r.vertex(i + 1);
    out << " A " << s << ' ' << s << " 0 0 1 " << sx(q.x()) << ' ' << sy(q.y());
  }
  out << " Z\"/>\n";

  for (int i = 0; i < n; ++i) {
    out << "  <circle class=\"vertex\" cx=\"" << sx(r.vertex(i).x()) << "\" cy=\"" << sy(r.vertex(i).y())
        << "\" r=\"3\" fill=\"#1f3b73\"/>\n";
  }

  if (options.show_gradient && n >= 5) {
    const PerturbationField g = gradient_reuleaux(r);
    double longest = 0.0;
    for (const Point2& v : g) longest = std::max(longest, norm(v));
    if (longest > 1e-12) {
      const double k = 0.25 / longest;
      for (int i = 0; i < n; ++i) {
        if (norm(g[i]) <= 1e-12) continue;
        const Point2 a = r.vertex(i), b = a + k * g[i];
        out << "  <path class=\"gradient-arrow\" d=\"M " << sx(a.x()) << ' ' << sy(a.y()) << " L " << sx(b.x())
            << ' ' << sy(b.y()) << "\" stroke=\"#c0392b\" stroke-width=\"1.5\" marker-end=\"url(#arrowhead)\"/>\n";
      }
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace reuleaux
