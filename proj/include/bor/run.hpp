#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "bor/config.hpp"
#include "bor/postprocess.hpp"

namespace bor {

// Runs one solve and writes summary.json plus any requested fields.csv / rcs.csv into
// cfg.output_dir. Returns the summary. Timings live under the "timings" key; everything else
// is deterministic for a fixed worker count.
nlohmann::json run_solve(const RunConfig& cfg, bool write_files = true);
// One summary record per sweep.k entry, written to sweep.json.
nlohmann::json run_sweep_k(const RunConfig& cfg);
// One row per converge.N entry, written to convergence.json and convergence.csv. The error is
// the extinction error when the config enables it, otherwise the field difference at the
// evaluation points against the largest N.
nlohmann::json run_convergence(const RunConfig& cfg);
// Modal Green's function values and gradients at one (r, z; r', z') pair.
nlohmann::json kernel_probe(double r, double z, double rp, double zp, cplx k, int M);

std::vector<Vec3> read_points(const std::string& path);
// `count` points on a sphere enclosing the body with clearance, Fibonacci-distributed.
std::vector<Vec3> exterior_points(const GeneratingCurve& curve, int count);
// max over points of ‖(E, H) + (E, H)^in_M‖ / ‖(E, H)^in_M‖ with the incident field truncated to
// the solved azimuthal modes.
double extinction_error(const DebyeSolution& sol, const IncidentField& incident,
                        const std::vector<Vec3>& points);

void write_fields_csv(const std::string& path, const std::vector<FieldSample>& samples);
void write_rcs_csv(const std::string& path, const RcsPattern& pattern);

}  // namespace bor
