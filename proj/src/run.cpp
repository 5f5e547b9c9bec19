#include "bor/run.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bor/kernel_table.hpp"
#include "bor/modal_green.hpp"

namespace bor {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("output_dir: cannot create " + dir + ": " + ec.message());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Vec3> evaluation_points(const RunConfig& cfg, const GeneratingCurve& curve) {
  if (!cfg.outputs.points_file.empty()) return read_points(cfg.outputs.points_file);
  return exterior_points(curve, cfg.outputs.extinction_points);
}

double field_difference(const std::vector<FieldSample>& a, const std::vector<FieldSample>& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double num = 0.0, den = 0.0;
    for (int c = 0; c < 3; ++c) {
      num += std::norm(a[i].E[c] - b[i].E[c]) + std::norm(a[i].H[c] - b[i].H[c]);
      den += std::norm(b[i].E[c]) + std::norm(b[i].H[c]);
    }
    worst = std::max(worst, std::sqrt(num / (den > 0 ? den : 1.0)));
  }
  return worst;
}

}  // namespace

std::vector<Vec3> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open points file: " + path);
  std::vector<Vec3> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    Vec3 p;
    if (!(ls >> p[0] >> p[1] >> p[2])) {
      if (pts.empty()) continue;  // header
      throw InputError("malformed row in points file: " + line);
    }
    pts.push_back(p);
  }
  if (pts.empty()) throw InputError("points file has no rows: " + path);
  return pts;
}

std::vector<Vec3> exterior_points(const GeneratingCurve& curve, int count) {
  double extent = 0.0;
  for (int i = 0; i < 512; ++i) {
    const CurvePoint p = curve.at(curve.length() * i / 512);
    extent = std::max(extent, std::hypot(p.r, p.z));
  }
  const double R = 1.5 * extent;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> pts;
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double rr = std::sqrt(1.0 - z * z);
    const double ph = golden * i;
    pts.push_back({R * rr * std::cos(ph), R * rr * std::sin(ph), R * z});
  }
  return pts;
}

double extinction_error(const DebyeSolution& sol, const IncidentField& incident,
                        const std::vector<Vec3>& points) {
  const std::vector<FieldSample> scat = eval_fields(sol, points);
  std::vector<FieldSample> neg(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    FieldSample t = truncated_field(incident, points[i], sol.M);
    for (int c = 0; c < 3; ++c) {
      t.E[c] = -t.E[c];
      t.H[c] = -t.H[c];
    }
    neg[i] = t;
  }
  return field_difference(scat, neg);
}

void write_fields_csv(const std::string& path, const std::vector<FieldSample>& samples) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw InputError("cannot write " + path);
  std::fprintf(f, "x,y,z,ReEx,ImEx,ReEy,ImEy,ReEz,ImEz,ReHx,ImHx,ReHy,ImHy,ReHz,ImHz\n");
  for (const FieldSample& s : samples) {
    std::fprintf(f, "%.17g,%.17g,%.17g", s.x[0], s.x[1], s.x[2]);
    for (const CVec3* v : {&s.E, &s.H})
      for (int c = 0; c < 3; ++c) std::fprintf(f, ",%.17g,%.17g", (*v)[c].real(), (*v)[c].imag());
    std::fprintf(f, "\n");
  }
  std::fclose(f);
}

void write_rcs_csv(const std::string& path, const RcsPattern& pattern) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw InputError("cannot write " + path);
  std::fprintf(f, "theta,phi,sigma\n");
  for (const FarFieldSample& s : pattern.samples)
    std::fprintf(f, "%.17g,%.17g,%.17g\n", s.theta * 180.0 / kPi, s.phi * 180.0 / kPi, s.sigma);
  std::fclose(f);
}

json run_solve(const RunConfig& cfg, bool write_files) {
  validate(cfg);
  const GeneratingCurve curve = make_curve(cfg.geometry, cfg.base_dir);
  const IncidentField incident = make_incident(cfg.incident, cfg.k);
  const SolverOptions opts = solver_options(cfg);
  DebyeSolution sol = [&] {
    try {
      return solve_all(incident, curve, opts);
    } catch (const SolverError& e) {
      throw SolverError(std::string("solve: ") + e.what());
    }
  }();

  json s;
  s["k"] = cjson(cfg.k);
  s["N"] = cfg.N;
  s["M"] = cfg.M;
  s["order"] = cfg.order;
  s["geometry"] = cfg.geometry.type;
  s["incident"] = incident.describe();
  s["cycle_row"] = cfg.cycle_row;
  s["curve_length"] = curve.length();
  json modes = json::array();
  double worst_res = 0.0, worst_cond = 0.0;
  for (const ModeReport& r : sol.reports) {
    modes.push_back({{"m", r.m}, {"residual", r.residual}, {"condition_estimate", 1.0 / r.rcond}});
    worst_res = std::max(worst_res, r.residual);
    worst_cond = std::max(worst_cond, 1.0 / r.rcond);
  }
  s["modes"] = modes;
  s["max_residual"] = worst_res;
  s["max_condition_estimate"] = worst_cond;
  s["harmonic"] = {{"a1", cjson(sol.a1())}, {"a2", cjson(sol.a2())}};
  json timings = sol.timings;

  if (write_files) ensure_dir(cfg.output_dir);
  if (cfg.outputs.diagnostics) {
    auto t0 = std::chrono::steady_clock::now();
    double div = 0.0, nx = 0.0;
    for (int m = -cfg.M; m <= cfg.M; ++m) {
      ConsistencyReport c = consistency(sol, m);
      div = std::max(div, c.divergence);
      nx = std::max(nx, c.n_cross);
    }
    ResidualReport br = boundary_residual(sol, incident, cfg.outputs.residual_stride);
    s["diagnostics"] = {{"divergence_consistency", div},
                        {"n_cross_consistency", nx},
                        {"boundary_residual",
                         {{"max", br.max_abs}, {"l2", br.l2}, {"relative", br.relative()}, {"node_stride", cfg.outputs.residual_stride}}}};
    timings["diagnostics"] = seconds_since(t0);
  }
  if (cfg.outputs.extinction) {
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<Vec3> pts = exterior_points(curve, cfg.outputs.extinction_points);
    s["extinction"] = {{"points", pts.size()}, {"max_relative_error", extinction_error(sol, incident, pts)}};
    timings["extinction"] = seconds_since(t0);
  }
  json outputs = json::object();
  if (!cfg.outputs.points_file.empty()) {
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<FieldSample> f = eval_fields(sol, read_points(cfg.outputs.points_file));
    if (write_files) {
      write_fields_csv((fs::path(cfg.output_dir) / "fields.csv").string(), f);
      outputs["fields"] = "fields.csv";
    }
    timings["fields"] = seconds_since(t0);
  }
  if (!cfg.outputs.rcs_theta.empty()) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<double> th, ph;
    for (double d : cfg.outputs.rcs_theta) th.push_back(d * kPi / 180.0);
    for (double d : cfg.outputs.rcs_phi) ph.push_back(d * kPi / 180.0);
    double e0 = 1.0;
    if (incident.kind() == IncidentField::Kind::PlaneWave) {
      double p2 = 0.0;
      for (const cplx& v : incident.vector()) p2 += std::norm(v);
      e0 = std::sqrt(p2);
    }
    RcsPattern pat = far_field_grid(sol, th, ph, e0);
    double worst = 0.0;
    for (const FarFieldSample& f : pat.samples) worst = std::max(worst, f.richardson);
    s["rcs"] = {{"samples", pat.samples.size()}, {"max_richardson_change", worst}, {"E0", e0}};
    if (write_files) {
      write_rcs_csv((fs::path(cfg.output_dir) / "rcs.csv").string(), pat);
      outputs["rcs"] = "rcs.csv";
    }
    timings["rcs"] = seconds_since(t0);
  }
  s["outputs"] = outputs;
  s["timings"] = timings;
  if (write_files) write_json(fs::path(cfg.output_dir) / "summary.json", s);
  return s;
}

json run_sweep_k(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.sweep_k.empty()) throw InputError("config: sweep.k: needs at least one value");
  ensure_dir(cfg.output_dir);
  json records = json::array();
  for (size_t i = 0; i < cfg.sweep_k.size(); ++i) {
    RunConfig c = cfg;
    c.k = cfg.sweep_k[i];
    c.output_dir = (fs::path(cfg.output_dir) / ("k" + std::to_string(i))).string();
    records.push_back(run_solve(c, true));
  }
  json report = {{"records", records}};
  write_json(fs::path(cfg.output_dir) / "sweep.json", report);
  return report;
}

json run_convergence(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.converge_N.empty()) throw InputError("config: converge.N: needs at least one value");
  ensure_dir(cfg.output_dir);
  const GeneratingCurve curve = make_curve(cfg.geometry, cfg.base_dir);
  const IncidentField incident = make_incident(cfg.incident, cfg.k);
  const std::vector<Vec3> pts = evaluation_points(cfg, curve);
  const bool extinction = cfg.outputs.extinction;

  std::vector<std::vector<FieldSample>> fields;
  json rows = json::array();
  for (int n : cfg.converge_N) {
    RunConfig c = cfg;
    c.N = n;
    SolverOptions o = solver_options(c);
    auto t0 = std::chrono::steady_clock::now();
    DebyeSolution sol = solve_all(incident, curve, o);
    json row = {{"N", n}, {"seconds", seconds_since(t0)}};
    if (extinction) {
      row["error"] = extinction_error(sol, incident, pts);
      row["reference"] = "extinction";
    } else {
      fields.push_back(eval_fields(sol, pts));
    }
    rows.push_back(row);
  }
  if (!extinction) {
    size_t best = 0;
    for (size_t i = 1; i < cfg.converge_N.size(); ++i)
      if (cfg.converge_N[i] > cfg.converge_N[best]) best = i;
    for (size_t i = 0; i < rows.size(); ++i) {
      rows[i]["error"] = field_difference(fields[i], fields[best]);
      rows[i]["reference"] = "N=" + std::to_string(cfg.converge_N[best]);
    }
  }
  json report = {{"k", cjson(cfg.k)}, {"M", cfg.M}, {"order", cfg.order}, {"points", pts.size()}, {"rows", rows}};
  write_json(fs::path(cfg.output_dir) / "convergence.json", report);
  std::FILE* f = std::fopen((fs::path(cfg.output_dir) / "convergence.csv").c_str(), "w");
  if (!f) throw InputError("cannot write convergence.csv");
  std::fprintf(f, "N,error\n");
  for (const json& r : rows) std::fprintf(f, "%d,%.6e\n", r["N"].get<int>(), r["error"].get<double>());
  std::fclose(f);
  return report;
}

json kernel_probe(double r, double z, double rp, double zp, cplx k, int M) {
  if (!(r > 0) || !(rp > 0)) throw InputError("kernel-probe: r and r' must be positive");
  if (M < 0) throw InputError("kernel-probe: M must be >= 0");
  if (r == rp && z == zp) throw InputError("kernel-probe: target and source coincide");
  const KernelGeometry geom = KernelGeometry::make(r, z, rp, zp);
  const ModalKernelValues v = modal_green(geom, k, M, true);
  json modes = json::array();
  for (int m = 0; m <= M; ++m) {
    const size_t i = static_cast<size_t>(m);
    modes.push_back({{"m", m}, {"g", cjson(v.g[i])}, {"dr", cjson(v.dr[i])}, {"dz", cjson(v.dz[i])},
                     {"drp", cjson(v.drp[i])}, {"dzp", cjson(v.dzp[i])}});
  }
  return {{"r", r}, {"z", z}, {"rp", rp}, {"zp", zp}, {"k", cjson(k)}, {"alpha", geom.alpha},
          {"chi", geom.chi}, {"regime", geom.alpha < kAlphaSplit ? "direct" : "split"}, {"modes", modes}};
}

}  // namespace bor
