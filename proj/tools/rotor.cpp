// rotor: sample kinematics, run reconstructions and the verification suite.
//
// Exit codes: 0 ok, 1 tolerance failure, 2 configuration error, 3 numerical degeneracy.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <rotor/acceptance.hpp>
#include <rotor/curve.hpp>
#include <rotor/ellipse.hpp>
#include <rotor/expr.hpp>
#include <rotor/reconstruction.hpp>
#include <rotor/surface.hpp>
#include <rotor/table.hpp>

namespace {

using namespace rotor;
using nlohmann::json;

constexpr double kPi = std::numbers::pi;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Run {
  std::string command;
  std::string curve = "ellipse";
  Params params;
  std::vector<std::string> expr;  // x, y[, z] when the curve is given by formulas
  std::string frame = "origin";
  int samples = 101;
  std::optional<double> step;
  std::string out;
  std::string format = "csv";
  std::string preset;
  std::optional<std::pair<double, double>> domain;
  bool second_order = false;
  std::string surface = "sphere";
  Params surface_params;
  std::string chart_u = "t", chart_v = "0.3*sin(t)";
  std::string filter;
  bool psi_fault = false;
  bool verbose = false;
};

Params parse_assignments(const std::vector<std::string>& items) {
  Params p;
  for (const auto& s : items) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + s + "'");
    try {
      std::size_t used = 0;
      std::string v = s.substr(eq + 1);
      p[s.substr(0, eq)] = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
    } catch (const std::logic_error&) {
      throw ConfigError("not a number in '" + s + "'");
    }
  }
  return p;
}

std::pair<double, double> parse_domain(const std::string& s) {
  auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(s);
    double a = std::stod(s.substr(0, comma)), b = std::stod(s.substr(comma + 1));
    if (!(b > a)) throw ConfigError("domain needs t0 < t1");
    return {a, b};
  } catch (const std::logic_error&) {
    throw ConfigError("domain must be 't0,t1', got '" + s + "'");
  }
}

Params params_from_json(const json& j, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be an object");
  Params p;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw ConfigError(std::string(what) + "." + k + " must be a number");
    p[k] = v.get<double>();
  }
  return p;
}

void apply_config(Run& run, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "command") {
        run.command = v.get<std::string>();
      } else if (key == "curve") {
        if (v.is_string()) {
          run.curve = v.get<std::string>();
          continue;
        }
        for (const auto& [ck, cv] : v.items()) {
          if (ck == "name") run.curve = cv.get<std::string>();
          else if (ck == "params") run.params = params_from_json(cv, "curve.params");
          else if (ck == "x" || ck == "y" || ck == "z") continue;
          else if (ck == "t0" || ck == "t1") continue;
          else throw ConfigError("unknown key curve." + ck);
        }
        if (v.contains("x")) {
          run.expr = {v.at("x").get<std::string>(), v.at("y").get<std::string>()};
          if (v.contains("z")) run.expr.push_back(v.at("z").get<std::string>());
          run.domain = {v.at("t0").get<double>(), v.at("t1").get<double>()};
        }
      } else if (key == "frame") {
        run.frame = v.get<std::string>();
      } else if (key == "samples") {
        run.samples = v.get<int>();
      } else if (key == "step") {
        run.step = v.get<double>();
      } else if (key == "out") {
        run.out = v.get<std::string>();
      } else if (key == "format") {
        run.format = v.get<std::string>();
      } else if (key == "preset") {
        run.preset = v.get<std::string>();
      } else if (key == "domain") {
        auto d = v.get<std::vector<double>>();
        if (d.size() != 2 || !(d[1] > d[0])) throw ConfigError("domain must be [t0, t1] with t0 < t1");
        run.domain = {d[0], d[1]};
      } else if (key == "second_order") {
        run.second_order = v.get<bool>();
      } else if (key == "surface") {
        run.surface = v.at("kind").get<std::string>();
        if (v.contains("params")) run.surface_params = params_from_json(v.at("params"), "surface.params");
      } else if (key == "chart") {
        run.chart_u = v.at("u").get<std::string>();
        run.chart_v = v.at("v").get<std::string>();
        if (v.contains("t0")) run.domain = {v.at("t0").get<double>(), v.at("t1").get<double>()};
      } else if (key == "filter") {
        run.filter = v.get<std::string>();
      } else if (key == "inject_psi_fault") {
        run.psi_fault = v.get<bool>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

void emit(const Run& run, const std::string& text) {
  if (run.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(run.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + run.out);
  f << text;
}

void emit_table(const Run& run, const Table& t) {
  if (run.format == "csv") emit(run, to_csv(t));
  else if (run.format == "json") emit(run, to_json(t));
  else throw ConfigError("format must be csv or json");
}

FrameSpec parse_frame(const std::string& s) {
  FrameSpec f;
  if (s == "origin") return f;
  if (s == "focus") return f.kind = FrameSpec::Focus, f;
  if (s == "local") return f.kind = FrameSpec::Local, f;
  if (s.rfind("point:", 0) == 0) {
    std::vector<double> xs;
    std::stringstream ss(s.substr(6));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        xs.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::logic_error&) {
        throw ConfigError("bad frame point '" + s + "'");
      }
    }
    if (xs.size() < 2 || xs.size() > 3) throw ConfigError("frame point needs 2 or 3 coordinates");
    f.kind = FrameSpec::Point;
    f.point = {xs[0], xs[1], xs.size() == 3 ? xs[2] : 0.0};
    return f;
  }
  throw ConfigError("frame must be origin, focus, local or point:ax,ay");
}

AnyCurve build_curve(const Run& run) {
  if (!run.expr.empty()) {
    if (!run.domain) throw ConfigError("formula curves need --domain t0,t1");
    auto [t0, t1] = *run.domain;
    if (run.expr.size() == 3) return expr::make_expr_curve(run.expr[0], run.expr[1], run.expr[2], t0, t1);
    return expr::make_expr_curve(run.expr[0], run.expr[1], t0, t1);
  }
  return make_catalog_curve(run.curve, run.params);
}

int run_kinematics(const Run& run) {
  FrameSpec frame = parse_frame(run.frame);
  std::optional<EllipseParams> ellipse;
  if (frame.kind == FrameSpec::Focus) {
    if (run.curve != "ellipse" || !run.expr.empty()) throw ConfigError("focus frame is only valid with the ellipse");
    ellipse = EllipseParams::make(detail::take(run.params, "a", 2), detail::take(run.params, "b", 1));
  }
  emit_table(run, kinematics_table(build_curve(run), frame, run.samples, ellipse));
  return 0;
}

int run_surface(const Run& run) {
  Surface s = make_catalog_surface(run.surface, run.surface_params);
  auto [t0, t1] = run.domain.value_or(std::pair{0.0, 2 * kPi});
  ChartCurve c = make_expr_chart_curve(run.chart_u, run.chart_v, t0, t1);
  emit_table(run, surface_table(s, c, run.samples));
  return 0;
}

int run_ellipse(const Run& run) {
  EllipseParams p = EllipseParams::make(detail::take(run.params, "a", 2), detail::take(run.params, "b", 1));
  emit_table(run, ellipse_table(p, run.samples));
  return 0;
}

template <class V, class F>
int finish_reconstruction(const Run& run, const Trajectory<V>& tr, F&& exact, double tol) {
  emit_table(run, trajectory_table(tr));
  double err = max_error(tr, exact);
  std::cerr << "max_error=" << format_real(err) << "\n";
  return err < tol ? 0 : 1;
}

int run_reconstruct(const Run& run) {
  const std::string preset = run.preset.empty() && run.params.empty() && run.expr.empty() && run.curve == "ellipse"
                                 ? "ellipse-origin"
                                 : run.preset;
  if (preset == "ellipse-origin" || preset == "ellipse-focus") {
    EllipseParams p = EllipseParams::make(detail::take(run.params, "a", 2), detail::take(run.params, "b", 1));
    double step = run.step.value_or(2 * kPi / 1e4);
    PlaneReconstructionProblem pr = preset == "ellipse-origin" ? ellipse_origin_problem(p, step, run.second_order)
                                                               : ellipse_focus_problem(p, step, run.second_order);
    if (run.domain) throw ConfigError("ellipse presets run over [0, 2pi]");
    return finish_reconstruction(run, reconstruct_plane(pr), [&](double th) { return p.point(th); }, 1e-6);
  }
  if (preset == "circle") {
    PlaneCurve c = make_plane_curve("circle", run.params);
    auto [t0, t1] = run.domain.value_or(std::pair{c.t0(), c.t1()});
    auto pr = plane_problem_from_curve(c, {}, t0, t1, run.step.value_or((t1 - t0) / 1e4), run.second_order);
    return finish_reconstruction(run, reconstruct_plane(pr), [&](double t) { return c(t); }, 1e-6);
  }
  if (preset == "helix") {
    Params hp = {{"radius", 1}, {"pitch", 1}, {"x0", 2}, {"y0", 2}, {"z0", 1}, {"t0", -kPi}, {"t1", 2 * kPi}};
    for (const auto& [k, v] : run.params) hp[k] = v;
    SpaceCurve c = make_space_curve("helix", hp);
    auto [t0, t1] = run.domain.value_or(std::pair{0.0, kPi});
    auto pr = space_problem_from_curve(c, t0, t1, run.step.value_or((t1 - t0) / 1e4), run.second_order);
    return finish_reconstruction(run, reconstruct_space(pr), [&](double t) { return c(t); }, 1e-5);
  }
  if (!preset.empty()) throw ConfigError("unknown preset '" + preset + "'");
  AnyCurve any = build_curve(run);
  if (auto* pc = std::get_if<PlaneCurve>(&any)) {
    FrameSpec f = parse_frame(run.frame);
    if (f.kind == FrameSpec::Focus || f.kind == FrameSpec::Local) throw ConfigError("reconstruct takes origin or point frames");
    Vec2 center{f.point.x, f.point.y};
    auto [t0, t1] = run.domain.value_or(std::pair{pc->t0(), pc->t1()});
    auto pr = plane_problem_from_curve(*pc, center, t0, t1, run.step.value_or((t1 - t0) / 1e4), run.second_order);
    return finish_reconstruction(run, reconstruct_plane(pr), [&](double t) { return (*pc)(t); }, 1e-6);
  }
  const auto& sc = std::get<SpaceCurve>(any);
  if (run.frame != "origin") throw ConfigError("space reconstruction runs about the origin");
  auto [t0, t1] = run.domain.value_or(std::pair{sc.t0(), sc.t1()});
  auto pr = space_problem_from_curve(sc, t0, t1, run.step.value_or((t1 - t0) / 1e4), run.second_order);
  return finish_reconstruction(run, reconstruct_space(pr), [&](double t) { return sc(t); }, 1e-6);
}

int run_verify(const Run& run) {
  acceptance::Options opt;
  if (run.psi_fault) opt.psi_fault = 1e-2;
  bool all = true, any = false;
  for (const auto& c : acceptance::criteria()) {
    if (!acceptance::selected(c, run.filter)) continue;
    any = true;
    acceptance::Result r = acceptance::run_one(c, opt);
    std::cout << acceptance::format_line(r) << "\n" << std::flush;
    if (run.verbose && !r.detail.empty()) std::cerr << r.id << ": " << r.detail << "\n";
    all = all && r.pass;
  }
  if (!any) throw ConfigError("no criterion matches filter '" + run.filter + "'");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotating-frame kinematics of curves"};
  app.require_subcommand(1);
  app.fallthrough();

  Run run;
  std::string config, curve, frame, out, format, preset, domain, surface, filter;
  double a = 0, b = 0, radius = 0, pitch = 0, step = 0;
  int samples = 0;
  std::string x, y, z, u, v;
  std::vector<std::string> param, surface_param;
  bool second_order = false, fault = false, verbose = false;

  auto* o_config = app.add_option("--config", config, "JSON run configuration; flags override its fields");
  auto* o_curve = app.add_option("--curve", curve, "catalog curve name");
  auto* o_a = app.add_option("--a", a, "catalog parameter a");
  auto* o_b = app.add_option("--b", b, "catalog parameter b");
  auto* o_radius = app.add_option("--radius", radius, "catalog parameter radius");
  auto* o_pitch = app.add_option("--pitch", pitch, "catalog parameter pitch");
  auto* o_param = app.add_option("--param", param, "other catalog parameters, key=value");
  auto* o_x = app.add_option("--x", x, "x(t) formula");
  auto* o_y = app.add_option("--y", y, "y(t) formula");
  auto* o_z = app.add_option("--z", z, "z(t) formula");
  auto* o_frame = app.add_option("--frame", frame, "origin | focus | point:ax,ay | local");
  auto* o_samples = app.add_option("--samples", samples, "number of samples (>= 2)");
  auto* o_step = app.add_option("--step", step, "integration step");
  auto* o_out = app.add_option("--out", out, "output path (default stdout)");
  auto* o_format = app.add_option("--format", format, "csv | json");
  auto* o_preset = app.add_option("--preset", preset, "ellipse-origin | ellipse-focus | circle | helix");
  auto* o_domain = app.add_option("--domain", domain, "parameter range t0,t1");
  auto* o_second = app.add_flag("--second-order", second_order, "reconstruct from the distance acceleration");
  auto* o_surface = app.add_option("--surface", surface, "sphere | torus | plane | cylinder | graph");
  auto* o_sparam = app.add_option("--surface-param", surface_param, "surface parameters, key=value");
  auto* o_u = app.add_option("--u", u, "chart curve u(t)");
  auto* o_v = app.add_option("--v", v, "chart curve v(t)");
  auto* o_filter = app.add_option("--filter", filter, "run only criteria with this id or tag");
  auto* o_fault = app.add_flag("--inject-psi-fault", fault, "perturb closed-form psi values by 1e-2");
  auto* o_verbose = app.add_flag("--verbose", verbose, "print criterion details to stderr");

  for (const char* name : {"kinematics", "reconstruct", "surface", "ellipse", "verify"})
    app.add_subcommand(name)->callback([&run, name] { run.command = name; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::string cmd = run.command;
    if (o_config->count()) apply_config(run, config);
    if (!run.command.empty() && run.command != cmd)
      throw ConfigError("config command '" + run.command + "' does not match '" + cmd + "'");
    run.command = cmd;
    if (o_curve->count()) run.curve = curve, run.expr.clear();
    if (o_a->count()) run.params["a"] = a;
    if (o_b->count()) run.params["b"] = b;
    if (o_radius->count()) run.params["radius"] = radius;
    if (o_pitch->count()) run.params["pitch"] = pitch;
    if (o_param->count())
      for (const auto& [k, val] : parse_assignments(param)) run.params[k] = val;
    if (o_x->count() || o_y->count() || o_z->count()) {
      if (!o_x->count() || !o_y->count()) throw ConfigError("formula curves need both --x and --y");
      run.expr = {x, y};
      if (o_z->count()) run.expr.push_back(z);
    }
    if (o_frame->count()) run.frame = frame;
    if (o_samples->count()) run.samples = samples;
    if (o_step->count()) run.step = step;
    if (o_out->count()) run.out = out;
    if (o_format->count()) run.format = format;
    if (o_preset->count()) run.preset = preset;
    if (o_domain->count()) run.domain = parse_domain(domain);
    if (o_second->count()) run.second_order = second_order;
    if (o_surface->count()) run.surface = surface;
    if (o_sparam->count()) run.surface_params = parse_assignments(surface_param);
    if (o_u->count()) run.chart_u = u;
    if (o_v->count()) run.chart_v = v;
    if (o_filter->count()) run.filter = filter;
    if (o_fault->count()) run.psi_fault = fault;
    if (o_verbose->count()) run.verbose = verbose;

    if (run.samples < 2) throw ConfigError("samples must be at least 2");
    if (run.step && !(*run.step > 0)) throw ConfigError("step must be positive");
    if (run.format != "csv" && run.format != "json") throw ConfigError("format must be csv or json");

    if (run.command == "kinematics") return run_kinematics(run);
    if (run.command == "reconstruct") return run_reconstruct(run);
    if (run.command == "surface") return run_surface(run);
    if (run.command == "ellipse") return run_ellipse(run);
    return run_verify(run);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const PointError& e) {
    std::cerr << kind_name(e.kind()) << " at t=" << format_real(e.t());
    if (!e.detail().empty()) std::cerr << " (" << e.detail() << ")";
    std::cerr << "\n";
    return is_config_error(e.kind()) ? 2 : 3;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return is_config_error(e.kind()) ? 2 : 3;
  }
}
