#pragma once

#include <string>
#include <vector>

#include "bor/geometry.hpp"
#include "bor/incident.hpp"
#include "bor/solver.hpp"

namespace bor {

struct GeometrySpec {
  std::string type = "torus";  // torus | ellipse-torus | fourier | samples
  double major_radius = 2.0, minor_radius = 1.0;
  double a = 1.0, b = 1.0;  // ellipse-torus semi-axes along r and z
  std::vector<double> rc, rs, zc, zs;
  std::string file;  // samples CSV
};

struct IncidentSpec {
  std::string type = "plane-wave";  // plane-wave | electric-dipole | magnetic-dipole | none
  Vec3 direction{0.0, 0.0, 1.0};
  CVec3 polarization{1.0, 0.0, 0.0};
  Vec3 position{2.6, 0.2, 0.4};
  CVec3 moment{0.3, 1.0, 0.5};
};

struct OutputSpec {
  std::string points_file;            // CSV x,y,z
  std::vector<double> rcs_theta, rcs_phi;  // degrees
  bool diagnostics = true;
  bool extinction = false;            // compare the scattered field with the negated incident field
  int extinction_points = 20;
  int residual_stride = 8;            // boundary residual samples every n-th node
};

struct RunConfig {
  GeometrySpec geometry;
  cplx k = 1.0;
  int N = 121;
  int M = 12;
  int order = 16;
  int cycle_node = -1;
  double alias_tol = 1e-10;
  std::string cycle_row = "stabilized";
  IncidentSpec incident;
  OutputSpec outputs;
  std::string output_dir = "bor_out";
  int workers = 0;  // 0 keeps the OpenMP default
  std::vector<cplx> sweep_k;
  std::vector<int> converge_N;
  std::string base_dir = ".";  // relative paths resolve here
};

// Parses JSON text. Unknown keys are rejected; every error is an InputError naming the key.
RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);
// Checks ranges and file existence. Throws InputError naming the offending field.
void validate(const RunConfig& cfg);

GeneratingCurve make_curve(const GeometrySpec& spec, const std::string& base_dir = ".");
IncidentField make_incident(const IncidentSpec& spec, cplx k);
SolverOptions solver_options(const RunConfig& cfg);

}  // namespace bor
