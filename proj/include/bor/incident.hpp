#pragma once

#include <array>
#include <string>
#include <vector>

#include "bor/types.hpp"

namespace bor {

using Vec3 = std::array<double, 3>;
using CVec3 = std::array<cplx, 3>;

struct FieldSample {
  Vec3 x{};
  CVec3 E{}, H{};
};

// Time-harmonic fields with ∇×E = ikH, ∇×H = -ikE.
class IncidentField {
 public:
  enum class Kind { None, PlaneWave, ElectricDipole, MagneticDipole };

  static IncidentField none(cplx k);
  // E = p e^{ik d·x}, H = d × p e^{ik d·x}; d is normalized and p made orthogonal to d.
  static IncidentField plane_wave(cplx k, Vec3 direction, CVec3 polarization);
  // E = ∇×∇×(p G), H = -ik ∇×(p G) with G the outgoing Green's function centred at x0.
  static IncidentField electric_dipole(cplx k, Vec3 position, CVec3 moment);
  // H = ∇×∇×(m G), E = ik ∇×(m G).
  static IncidentField magnetic_dipole(cplx k, Vec3 position, CVec3 moment);

  FieldSample evaluate(const Vec3& x) const;

  Kind kind() const { return kind_; }
  cplx k() const { return k_; }
  const Vec3& position() const { return pos_; }
  const Vec3& direction() const { return dir_; }
  const CVec3& vector() const { return vec_; }
  std::string describe() const;

 private:
  Kind kind_ = Kind::None;
  cplx k_ = 0.0;
  Vec3 pos_{}, dir_{};
  CVec3 vec_{};
};

// Azimuthal modes -M..M of the cylindrical components (E_r, E_θ, E_z, H_r, H_θ, H_z) on the
// ring of radius r at height z. The sample count doubles until the spectrum tail is negligible.
struct RingModes {
  int M = 0;
  int ntheta = 0;
  std::array<std::vector<cplx>, 6> c;  // c[comp][m + M]
  double energy = 0.0;                 // Σ over all modes and components of |c|²
  double top_energy = 0.0;             // same, restricted to m ≠ 0 with |m| >= M

  cplx operator()(int comp, int m) const { return c[static_cast<size_t>(comp)][static_cast<size_t>(m + M)]; }
};
RingModes ring_modes(const IncidentField& field, double r, double z, int M);

// Incident field restricted to azimuthal modes |m| <= M.
FieldSample truncated_field(const IncidentField& field, const Vec3& x, int M);

}  // namespace bor
