#pragma once

#include <string>
#include <vector>

#include "bor/types.hpp"

namespace bor {

// Point on the generating curve, parameterized by arclength s.
struct CurvePoint {
  double s = 0, t = 0;
  double r = 0, z = 0;
  double dr = 0, dz = 0;    // d/ds
  double d2r = 0, d2z = 0;  // d^2/ds^2
};

// Local frame in (r̂, θ̂, k̂) components. tau = (dr, 0, dz), normal = θ̂ × τ̂ = (dz, 0, -dr).
struct SurfaceFrame {
  double r = 0, z = 0;
  double tau_r = 0, tau_z = 0;
  double n_r = 0, n_z = 0;
};

// Smooth closed curve s ↦ (r(s), z(s)) with r > 0, stored as a truncated Fourier
// series in its original parameter t ∈ [0, 2π) and reparameterized to arclength.
//
// Orientation is normalized to counter-clockwise in the (r, z) half-plane so the
// normal θ̂ × τ̂ points out of the body.
class GeneratingCurve {
 public:
  // r(t) = Σ rc[n] cos(nt) + rs[n] sin(nt), likewise z.
  GeneratingCurve(std::vector<double> rc, std::vector<double> rs, std::vector<double> zc,
                  std::vector<double> zs);

  static GeneratingCurve torus(double major_radius, double minor_radius);
  // Elliptical cross-section with semi-axis a along r and b along z.
  static GeneratingCurve ellipse_torus(double major_radius, double a, double b);
  // Equispaced samples over one period, endpoint excluded (a duplicated endpoint is dropped).
  static GeneratingCurve from_samples(const std::vector<double>& r, const std::vector<double>& z);
  // CSV with header and columns t,r,z.
  static GeneratingCurve from_csv(const std::string& path);

  double length() const { return length_; }
  CurvePoint at(double s) const;
  SurfaceFrame frame_at(double s) const;
  double min_r() const { return min_r_; }
  double max_r() const { return max_r_; }
  // Hash of the Fourier data, used to tag operator matrices.
  std::size_t hash() const;

 private:
  struct Raw {
    double r, z, rt, zt, rtt, ztt;
  };
  Raw eval_raw(double t) const;
  double arclength_of(double t) const;  // cumulative arclength S(t)
  double param_of(double s) const;      // inverse of S

  std::vector<double> rc_, rs_, zc_, zs_;
  // speed |γ'(t)| = v0 + Σ vc[n] cos nt + vs[n] sin nt, n >= 1
  double v0_ = 0;
  std::vector<double> vc_, vs_;
  double length_ = 0;
  double min_r_ = 0, max_r_ = 0;
};

// Azimuthal B-cycle circle at arclength s_b; the A-cycle is the generating curve itself.
struct CycleSpec {
  double s_b = 0;
  double r_b = 0;
  double z_b = 0;
  int node = 0;  // grid node index of s_b
};

struct Grid {
  int n = 0;
  double length = 0;
  double h = 0;
  std::vector<CurvePoint> nodes;

  RVec r() const;
  RVec dr() const;
  RVec dz() const;
};

// Equispaced nodes s_j = j L / N. N must be odd.
Grid make_grid(const GeneratingCurve& curve, int n);

// Default B-cycle sits at the grid node of minimum r, whose spanning disk lies in the hole.
CycleSpec default_cycle(const Grid& grid);
CycleSpec cycle_at_node(const Grid& grid, int node);

}  // namespace bor
