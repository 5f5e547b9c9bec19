#pragma once

#include <array>
#include <memory>
#include <vector>

#include "bor/incident.hpp"
#include "bor/solver.hpp"

namespace bor {

// Cylindrical components (r, θ, z) of E and H for one azimuthal mode at a meridian point.
struct ModalField {
  std::array<cplx, 3> E{}, H{};
};

// Scattered field of a DebyeSolution, evaluated mode by mode with the modal kernels.
class FieldEvaluator {
 public:
  explicit FieldEvaluator(const DebyeSolution& sol);
  ~FieldEvaluator();

  // Modes -M..M at (r, z), r > 0. Throws "near-field evaluation unsupported" when the
  // meridian distance to the generating curve is below min_spacing grid spacings.
  std::vector<ModalField> modes(double r, double z, double min_spacing = 1.0) const;
  FieldSample operator()(const Vec3& x) const;
  std::vector<FieldSample> evaluate(const std::vector<Vec3>& points) const;

  // Distance from (r, z) to the generating curve.
  double distance(double r, double z) const;
  int M() const { return M_; }

 private:
  struct Sources;
  const Sources& sources(int factor) const;
  std::vector<ModalField> modes_unchecked(double r, double z, double dist) const;

  const DebyeSolution* sol_;
  int M_;
  std::vector<std::unique_ptr<Sources>> cache_;  // upsampling factors 2, 4, 9
  std::vector<CurvePoint> fine_;                 // dense curve samples for distance queries
};

std::vector<FieldSample> eval_fields(const DebyeSolution& sol, const std::vector<Vec3>& points);

// Brute-force 3D surface quadrature of the representation: densities upsampled by `upsample`
// in s and sampled at `ntheta` angles. Reference for the modal evaluator.
std::vector<FieldSample> eval_fields_direct(const DebyeSolution& sol, const std::vector<Vec3>& points,
                                            int upsample, int ntheta);

struct FarFieldSample {
  double theta = 0.0, phi = 0.0;
  CVec3 F{};             // lim R e^{-ikR} E_scat(R x̂)
  double sigma = 0.0;    // 4π|F|²/|E0|²
  double richardson = 0.0;  // |F - F(4R)| / |F|, a check on the extrapolation
};

struct RcsPattern {
  std::vector<FarFieldSample> samples;
};

// Far-field amplitudes at polar/azimuthal angles (θ from +z). E0 is the incident amplitude used
// to normalize σ.
RcsPattern far_field(const DebyeSolution& sol, const std::vector<std::array<double, 2>>& angles,
                     double E0 = 1.0);
// Regular (θ, φ) grid, row-major in θ.
RcsPattern far_field_grid(const DebyeSolution& sol, const std::vector<double>& theta,
                          const std::vector<double>& phi, double E0 = 1.0);

// ∫|F|² dΩ / |E0|² by 48-point Gauss-Legendre in cos θ and trapezoid in φ.
double scattering_cross_section(const DebyeSolution& sol, double E0 = 1.0, int n_phi = 0);
// Optical theorem for a plane wave with direction d and polarization p.
double extinction_cross_section(const DebyeSolution& sol, const Vec3& direction, const CVec3& polarization);

struct ResidualReport {
  double max_abs = 0.0;   // max over nodes and angles of |n̂×(E + E^in)| on Γ
  double l2 = 0.0;        // L² norm on Γ
  double incident_l2 = 0.0;
  double relative() const { return incident_l2 > 0 ? l2 / incident_l2 : l2; }
};

// Tangential total field on Γ from the Nyström exterior traces stored with the solution.
// node_stride > 1 samples a subset of the grid.
ResidualReport boundary_residual(const DebyeSolution& sol, const IncidentField& incident,
                                 int node_stride = 1);

}  // namespace bor
