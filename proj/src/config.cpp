#include "bor/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace bor {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw InputError("config: " + key + ": " + what);
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(where.empty() ? "<root>" : where, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) fail(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
}

double get_double(const json& j, const std::string& key) {
  if (!j.is_number()) fail(key, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) fail(key, "expected an integer");
  return j.get<int>();
}

// 2.5, [re, im] or {"re": .., "im": ..}
cplx get_complex(const json& j, const std::string& key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object() && j.contains("re")) {
    check_keys(j, key, {"re", "im"});
    return {get_double(j["re"], key + ".re"), j.contains("im") ? get_double(j["im"], key + ".im") : 0.0};
  }
  fail(key, "expected a number, [re, im] or {re, im}");
}

Vec3 get_vec3(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) fail(key, "expected an array of 3 numbers");
  return {get_double(j[0], key), get_double(j[1], key), get_double(j[2], key)};
}

CVec3 get_cvec3(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) fail(key, "expected an array of 3 (complex) numbers");
  return {get_complex(j[0], key), get_complex(j[1], key), get_complex(j[2], key)};
}

std::vector<double> get_doubles(const json& j, const std::string& key) {
  if (!j.is_array()) fail(key, "expected an array of numbers");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(get_double(x, key));
  return v;
}

std::string get_string(const json& j, const std::string& key) {
  if (!j.is_string()) fail(key, "expected a string");
  return j.get<std::string>();
}

bool get_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) fail(key, "expected true or false");
  return j.get<bool>();
}

std::string resolve(const std::string& path, const std::string& base) {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base) / path).string();
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: not valid JSON: ") + e.what());
  }
  check_keys(j, "", {"geometry", "k", "N", "M", "order", "cycle_node", "alias_tol", "cycle_row",
                     "incident", "outputs", "output_dir", "workers", "sweep", "converge"});
  RunConfig c;
  c.base_dir = base_dir;
  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    check_keys(g, "geometry", {"type", "major_radius", "minor_radius", "a", "b", "rc", "rs", "zc", "zs", "file"});
    if (g.contains("type")) c.geometry.type = get_string(g["type"], "geometry.type");
    if (g.contains("major_radius")) c.geometry.major_radius = get_double(g["major_radius"], "geometry.major_radius");
    if (g.contains("minor_radius")) c.geometry.minor_radius = get_double(g["minor_radius"], "geometry.minor_radius");
    if (g.contains("a")) c.geometry.a = get_double(g["a"], "geometry.a");
    if (g.contains("b")) c.geometry.b = get_double(g["b"], "geometry.b");
    for (auto [key, dst] : {std::pair{"rc", &c.geometry.rc}, std::pair{"rs", &c.geometry.rs},
                            std::pair{"zc", &c.geometry.zc}, std::pair{"zs", &c.geometry.zs}})
      if (g.contains(key)) *dst = get_doubles(g[key], std::string("geometry.") + key);
    if (g.contains("file")) c.geometry.file = resolve(get_string(g["file"], "geometry.file"), base_dir);
  }
  if (j.contains("k")) c.k = get_complex(j["k"], "k");
  if (j.contains("N")) c.N = get_int(j["N"], "N");
  if (j.contains("M")) c.M = get_int(j["M"], "M");
  if (j.contains("order")) c.order = get_int(j["order"], "order");
  if (j.contains("cycle_node")) c.cycle_node = get_int(j["cycle_node"], "cycle_node");
  if (j.contains("alias_tol")) c.alias_tol = get_double(j["alias_tol"], "alias_tol");
  if (j.contains("cycle_row")) c.cycle_row = get_string(j["cycle_row"], "cycle_row");
  if (j.contains("incident")) {
    const json& s = j["incident"];
    check_keys(s, "incident", {"type", "direction", "polarization", "position", "moment"});
    if (s.contains("type")) c.incident.type = get_string(s["type"], "incident.type");
    if (s.contains("direction")) c.incident.direction = get_vec3(s["direction"], "incident.direction");
    if (s.contains("polarization")) c.incident.polarization = get_cvec3(s["polarization"], "incident.polarization");
    if (s.contains("position")) c.incident.position = get_vec3(s["position"], "incident.position");
    if (s.contains("moment")) c.incident.moment = get_cvec3(s["moment"], "incident.moment");
  }
  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    check_keys(o, "outputs", {"points_file", "rcs", "diagnostics", "extinction", "extinction_points", "residual_stride"});
    if (o.contains("points_file")) c.outputs.points_file = resolve(get_string(o["points_file"], "outputs.points_file"), base_dir);
    if (o.contains("rcs")) {
      check_keys(o["rcs"], "outputs.rcs", {"theta", "phi"});
      if (o["rcs"].contains("theta")) c.outputs.rcs_theta = get_doubles(o["rcs"]["theta"], "outputs.rcs.theta");
      if (o["rcs"].contains("phi")) c.outputs.rcs_phi = get_doubles(o["rcs"]["phi"], "outputs.rcs.phi");
    }
    if (o.contains("diagnostics")) c.outputs.diagnostics = get_bool(o["diagnostics"], "outputs.diagnostics");
    if (o.contains("extinction")) c.outputs.extinction = get_bool(o["extinction"], "outputs.extinction");
    if (o.contains("extinction_points")) c.outputs.extinction_points = get_int(o["extinction_points"], "outputs.extinction_points");
    if (o.contains("residual_stride")) c.outputs.residual_stride = get_int(o["residual_stride"], "outputs.residual_stride");
  }
  if (j.contains("output_dir")) c.output_dir = resolve(get_string(j["output_dir"], "output_dir"), base_dir);
  if (j.contains("workers")) c.workers = get_int(j["workers"], "workers");
  if (j.contains("sweep")) {
    check_keys(j["sweep"], "sweep", {"k"});
    if (j["sweep"].contains("k")) {
      const json& ks = j["sweep"]["k"];
      if (!ks.is_array()) fail("sweep.k", "expected an array");
      for (const auto& x : ks) c.sweep_k.push_back(get_complex(x, "sweep.k"));
    }
  }
  if (j.contains("converge")) {
    check_keys(j["converge"], "converge", {"N"});
    if (j["converge"].contains("N")) {
      const json& ns = j["converge"]["N"];
      if (!ns.is_array()) fail("converge.N", "expected an array");
      for (const auto& x : ns) c.converge_N.push_back(get_int(x, "converge.N"));
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const fs::path parent = fs::path(path).parent_path();
  return parse_config(ss.str(), parent.empty() ? "." : parent.string());
}

void validate(const RunConfig& c) {
  auto check_N = [](int n, const std::string& key) {
    if (n < 3 || n % 2 == 0) fail(key, "N must be an odd integer >= 3 (got " + std::to_string(n) + ")");
  };
  check_N(c.N, "N");
  if (c.M < 0) fail("M", "must be >= 0");
  if (c.order != 2 && c.order != 6 && c.order != 10 && c.order != 16) fail("order", "must be 2, 6, 10 or 16");
  auto check_k = [](cplx k, const std::string& key) {
    if (!std::isfinite(k.real()) || !std::isfinite(k.imag())) fail(key, "must be finite");
    if (k.imag() < 0) fail(key, "Im k must be >= 0");
  };
  check_k(c.k, "k");
  for (cplx k : c.sweep_k) check_k(k, "sweep.k");
  for (int n : c.converge_N) check_N(n, "converge.N");
  if (c.cycle_node >= c.N) fail("cycle_node", "must be < N");
  if (c.cycle_row != "stabilized" && c.cycle_row != "naive") fail("cycle_row", "must be stabilized or naive");
  const std::set<std::string> gtypes{"torus", "ellipse-torus", "fourier", "samples"};
  if (!gtypes.count(c.geometry.type)) fail("geometry.type", "must be torus, ellipse-torus, fourier or samples");
  if (c.geometry.type == "samples" && !fs::exists(c.geometry.file)) fail("geometry.file", "file not found: " + c.geometry.file);
  const std::set<std::string> itypes{"plane-wave", "electric-dipole", "magnetic-dipole", "none"};
  if (!itypes.count(c.incident.type)) fail("incident.type", "must be plane-wave, electric-dipole, magnetic-dipole or none");
  if (!c.outputs.points_file.empty() && !fs::exists(c.outputs.points_file))
    fail("outputs.points_file", "file not found: " + c.outputs.points_file);
  if (c.outputs.extinction && c.incident.type != "electric-dipole" && c.incident.type != "magnetic-dipole")
    fail("outputs.extinction", "needs a dipole source inside the body");
  if (c.outputs.extinction_points < 1) fail("outputs.extinction_points", "must be >= 1");
  if (c.outputs.residual_stride < 1) fail("outputs.residual_stride", "must be >= 1");
  if (c.outputs.rcs_theta.empty() != c.outputs.rcs_phi.empty()) fail("outputs.rcs", "needs both theta and phi");
  if (c.workers < 0) fail("workers", "must be >= 0");
}

GeneratingCurve make_curve(const GeometrySpec& g, const std::string& base_dir) {
  if (g.type == "torus") return GeneratingCurve::torus(g.major_radius, g.minor_radius);
  if (g.type == "ellipse-torus") return GeneratingCurve::ellipse_torus(g.major_radius, g.a, g.b);
  if (g.type == "fourier") return GeneratingCurve(g.rc, g.rs, g.zc, g.zs);
  if (g.type == "samples") return GeneratingCurve::from_csv(resolve(g.file, base_dir));
  fail("geometry.type", "unknown type " + g.type);
}

IncidentField make_incident(const IncidentSpec& s, cplx k) {
  if (s.type == "plane-wave") return IncidentField::plane_wave(k, s.direction, s.polarization);
  if (s.type == "electric-dipole") return IncidentField::electric_dipole(k, s.position, s.moment);
  if (s.type == "magnetic-dipole") return IncidentField::magnetic_dipole(k, s.position, s.moment);
  if (s.type == "none") return IncidentField::none(k);
  fail("incident.type", "unknown type " + s.type);
}

SolverOptions solver_options(const RunConfig& c) {
  SolverOptions o;
  o.n = c.N;
  o.M = c.M;
  o.order = c.order;
  o.cycle_node = c.cycle_node;
  o.alias_tol = c.alias_tol;
  o.cycle_row = c.cycle_row == "naive" ? CycleRow::Naive : CycleRow::Stabilized;
  return o;
}

}  // namespace bor
