#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "reuleaux/area.hpp"
#include "reuleaux/io.hpp"
#include "reuleaux/lagrangian.hpp"
#include "reuleaux/optimize.hpp"
#include "reuleaux/verify.hpp"

namespace reuleaux::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string trace;
  std::string mode;
  std::optional<double> tol;
  std::uint64_t seed = 42;
  double scale = 300.0;
  bool show_gradient = false;
  int n_max = 101;
  std::string fault;
};

// Thrown for bad input files, generator specs and flag values.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ReuleauxPolygon load(const Options& o) {
  if (o.input.empty()) throw UsageError("--input is required");
  try {
    return resolve_polygon(o.input, o.seed);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw UsageError("cannot write " + o.output);
  f << text;
}

int cmd_area(const Options& o, std::ostream& out) {
  const ReuleauxPolygon r = load(o);
  const AreaBreakdown a = area_disk_polygon(r.as_disk_polygon());
  nlohmann::json j;
  j["n"] = r.size();
  j["area"] = a.total;
  j["polygon_part"] = a.polygon_part;
  j["segment_parts"] = a.segment_parts;
  j["regular_area"] = area_regular_reuleaux(r.size());
  emit(o, j.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_grad(const Options& o, std::ostream& out) {
  const ReuleauxPolygon r = load(o);
  const double tol = o.tol.value_or(1e-10);
  nlohmann::json j;
  j["n"] = r.size();
  j["gradient"] = nlohmann::json::array();
  if (r.size() >= 5) {
    for (const Point2& g : gradient_reuleaux(r)) j["gradient"].push_back({g.x(), g.y()});
    j["max_norm"] = max_gradient_norm(r);
  }
  j["classification"] = to_string(classify_critical(r, tol));
  emit(o, j.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_hess(const Options& o, std::ostream& out) {
  const ReuleauxPolygon r = load(o);
  std::ostringstream s;
  if (o.mode.empty() || o.mode == "vertices") {
    hessian_lagrangian_vertices(r, solve_multipliers_vertices(r)).write_csv(s);
  } else if (o.mode == "centers") {
    hessian_area_centers(r).write_csv(s);
  } else {
    throw UsageError("--mode must be vertices or centers");
  }
  emit(o, s.str(), out);
  return kExitOk;
}

int cmd_multipliers(const Options& o, std::ostream& out) {
  const ReuleauxPolygon r = load(o);
  if (o.mode.empty() || o.mode == "vertices") {
    emit(o, multipliers_to_json(solve_multipliers_vertices(r), "vertices") + "\n", out);
  } else if (o.mode == "centers") {
    emit(o, multipliers_to_json(solve_multipliers_centers(r), "centers") + "\n", out);
  } else {
    throw UsageError("--mode must be vertices or centers");
  }
  return kExitOk;
}

int cmd_optimize(const Options& o, std::ostream& out, std::ostream& err) {
  const ReuleauxPolygon r = load(o);
  OptimizeConfig cfg;
  if (o.mode.empty() || o.mode == "maximize") {
    cfg.mode = Mode::Maximize;
  } else if (o.mode == "minimize") {
    cfg.mode = Mode::Minimize;
  } else {
    throw UsageError("--mode must be maximize or minimize");
  }
  if (o.tol) cfg.grad_tol = *o.tol;
  try {
    cfg.check();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const OptimizeResult res = run(r, cfg);
  if (!o.trace.empty()) {
    std::ofstream f(o.trace);
    if (!f) throw UsageError("cannot write " + o.trace);
    res.trace.write_csv(f);
  }
  emit(o, polygon_to_json(res.polygon) + "\n", out);
  err << std::setprecision(17) << "stop: " << res.stop_reason << ", n=" << res.polygon.size()
      << ", area=" << area(res.polygon) << ", merges=" << res.merges << '\n';
  return res.converged ? kExitOk : kExitVerificationFailed;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.n_max < 3 || o.n_max % 2 == 0) throw UsageError("--n-max must be odd and >= 3");
  std::ostringstream s;
  const bool increasing = write_area_table_csv(s, o.n_max);
  emit(o, s.str(), out);
  return increasing ? kExitOk : kExitVerificationFailed;
}

int cmd_certify(const Options& o, std::ostream& out, std::ostream& err) {
  CertifyOptions opt;
  opt.seed = o.seed;
  if (o.fault == "directional-sign") {
    opt.directional = [](const ReuleauxPolygon& r, int i, const Point2& v) {
      return -directional_derivative_reuleaux(r, i, v);
    };
  } else if (!o.fault.empty()) {
    throw UsageError("unknown fault '" + o.fault + "'");
  }
  const std::vector<OracleReport> reports = certify(opt);
  emit(o, reports_to_json(reports) + "\n", out);
  int failed = 0;
  for (const OracleReport& r : reports) {
    if (!r.pass) {
      ++failed;
      err << "FAIL " << r.name << ": " << r.notes << '\n';
    }
  }
  err << reports.size() - failed << '/' << reports.size() << " checks passed\n";
  return failed == 0 ? kExitOk : kExitVerificationFailed;
}

int cmd_render(const Options& o, std::ostream& out) {
  const ReuleauxPolygon r = load(o);
  if (!(o.scale > 0.0)) throw UsageError("--scale must be positive");
  emit(o, render_svg(r, RenderOptions{o.scale, o.show_gradient}), out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Area, sensitivities and optimality checks for Reuleaux polygons", "reuleaux"};
  app.require_subcommand(1, 1);
  Options o;

  const std::string input_help = "polygon JSON path or generator spec (regular:N, random:N[:seed=S])";
  auto add_input = [&](CLI::App* c) { c->add_option("-i,--input", o.input, input_help); };
  auto add_output = [&](CLI::App* c) { c->add_option("-o,--output", o.output, "output path (default stdout)"); };
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "RNG seed"); };

  CLI::App* area_cmd = app.add_subcommand("area", "area and its polygon/segment breakdown (JSON)");
  CLI::App* grad_cmd = app.add_subcommand("grad", "per-vertex area gradient (JSON)");
  CLI::App* hess_cmd = app.add_subcommand("hess", "Hessian at the input (CSV)");
  CLI::App* mult_cmd = app.add_subcommand("multipliers", "least-squares Lagrange multipliers (JSON)");
  CLI::App* opt_cmd = app.add_subcommand("optimize", "maximize or minimize area by vertex moves");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "regular areas n,A_n for n = 3, 5, ..., n_max (CSV)");
  CLI::App* cert_cmd = app.add_subcommand("certify", "run every oracle pairing and acceptance check");
  CLI::App* render_cmd = app.add_subcommand("render", "draw the polygon (SVG)");

  for (CLI::App* c : {area_cmd, grad_cmd, hess_cmd, mult_cmd, opt_cmd, render_cmd}) {
    add_input(c);
    add_seed(c);
  }
  for (CLI::App* c : {area_cmd, grad_cmd, hess_cmd, mult_cmd, opt_cmd, sweep_cmd, cert_cmd, render_cmd}) {
    add_output(c);
  }
  grad_cmd->add_option("--tol", o.tol, "criticality threshold on the gradient norm");
  hess_cmd->add_option("--mode", o.mode, "vertices (default) or centers");
  mult_cmd->add_option("--mode", o.mode, "vertices (default) or centers");
  opt_cmd->add_option("--mode", o.mode, "maximize (default) or minimize");
  opt_cmd->add_option("--tol", o.tol, "gradient tolerance for convergence");
  opt_cmd->add_option("--trace", o.trace, "write the per-sweep trace CSV here");
  sweep_cmd->add_option("n_max,--n-max", o.n_max, "largest odd n");
  add_seed(cert_cmd);
  cert_cmd->add_option("--inject-fault", o.fault, "mutation test: directional-sign");
  render_cmd->add_option("--scale", o.scale, "user units per width unit");
  render_cmd->add_flag("--show-gradient", o.show_gradient, "overlay area-gradient arrows");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (area_cmd->parsed()) return cmd_area(o, out);
    if (grad_cmd->parsed()) return cmd_grad(o, out);
    if (hess_cmd->parsed()) return cmd_hess(o, out);
    if (mult_cmd->parsed()) return cmd_multipliers(o, out);
    if (opt_cmd->parsed()) return cmd_optimize(o, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(o, out);
    if (cert_cmd->parsed()) return cmd_certify(o, out, err);
    if (render_cmd->parsed()) return cmd_render(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
  return kExitUsage;
}

}  // namespace reuleaux::cli
