#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bor/debye_operators.hpp"
#include "bor/incident.hpp"

namespace bor {

// Incident data on the grid, per azimuthal mode m = -M..M (index m + M).
struct IncidentModes {
  int M = 0;
  std::vector<CVec> Etau, Etheta, Hn;
  cplx a_circulation = 0.0;  // ∮_{C_A} E^in·τ̂ ds
  cplx b_flux = 0.0;         // ∫_{S_B} H^in·da (disk spanning C_B, normal +z)
  cplx b_circulation = 0.0;  // ∮_{C_B} E^in·θ̂ dl
  double top_mode_fraction = 0.0;

  const CVec& etau(int m) const { return Etau[static_cast<size_t>(m + M)]; }
  const CVec& etheta(int m) const { return Etheta[static_cast<size_t>(m + M)]; }
  const CVec& hn(int m) const { return Hn[static_cast<size_t>(m + M)]; }
};

// alias_tol <= 0 disables the truncation guard.
IncidentModes decompose_incident(const IncidentField& field, const Discretization& disc, int M,
                                 double alias_tol = 1e-10);

// ∫_{S_B} H·da over the flat disk at z_b of radius r_b: Gauss-Legendre in radius, adaptive
// trapezoid in angle.
cplx disk_flux(const IncidentField& field, double r_b, double z_b);
// ∮ E·θ̂ dl around the circle (r_b, z_b).
cplx loop_circulation(const IncidentField& field, double r_b, double z_b);

struct ModeSystem {
  int m = 0;
  CMat A;
  CVec b;
  bool meanzero_fixed = false;
};

void meanzero_fix(ModeSystem& sys, const Grid& grid);

// Stabilized enforces the B-cycle circulation of (E(k) - E(0))/k; Naive enforces the plain
// circulation of E, which vanishes with k together with its data.
enum class CycleRow { Stabilized, Naive };

// Per-mode system and RHS.
ModeSystem assemble_system(const ModeOperators& op, const Discretization& disc,
                           const OperatorKernels& kernels, const IncidentModes& data, int m,
                           CycleRow row = CycleRow::Stabilized);

struct ModeReport {
  int m = 0;
  double residual = 0.0;
  double rcond = 0.0;
};

struct DebyeSolution {
  std::shared_ptr<const Discretization> disc;
  cplx k = 0.0;
  int M = 0;
  std::vector<DebyeDensities> modes;  // m = -M..M
  std::vector<Currents> currents;
  std::vector<ModalTangentField> etrace;  // exterior trace of the scattered tangential E
  std::vector<ModeReport> reports;
  std::map<std::string, double> timings;

  const DebyeDensities& mode(int m) const { return modes[static_cast<size_t>(m + M)]; }
  const Currents& current(int m) const { return currents[static_cast<size_t>(m + M)]; }
  cplx a1() const { return mode(0).a1; }
  cplx a2() const { return mode(0).a2; }
};

struct SolverOptions {
  int n = 121;
  int M = 12;
  int order = 16;
  int cycle_node = -1;
  double alias_tol = 1e-10;
  CycleRow cycle_row = CycleRow::Stabilized;
  Execution exec = Execution::Parallel;
};

// Solves one mode given prebuilt operators.
DebyeDensities solve_mode(const ModeSystem& sys, int n, ModeReport* report = nullptr);

DebyeSolution solve_all(const IncidentField& field, const GeneratingCurve& curve,
                        const SolverOptions& opts);
DebyeSolution solve_all(const IncidentField& field, std::shared_ptr<const Discretization> disc,
                        const SolverOptions& opts);

// ‖∇_Γ·J_m - ikρ_m‖ / ‖ρ_m‖ and max |K - n̂×J| for one mode of a solution.
struct ConsistencyReport {
  double divergence = 0.0;
  double n_cross = 0.0;
};
ConsistencyReport consistency(const DebyeSolution& sol, int m);

// 2-norm condition number of the (fixed) system matrix for mode m.
double mode_condition(const Discretization& disc, cplx k, int m, bool fix = true,
                      CycleRow row = CycleRow::Stabilized);

}  // namespace bor
