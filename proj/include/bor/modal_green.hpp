#pragma once

#include <vector>

#include "bor/types.hpp"

namespace bor {

// Target (r, z) and source (r', z') in a meridian half-plane.
struct KernelGeometry {
  double r = 0, z = 0, rp = 0, zp = 0;
  double dz = 0;         // z - z'
  double R0sq = 0, R0 = 0;
  double alpha = 0;      // 2 r r' / R0²
  double one_minus_alpha = 0;
  double eta = 0;        // χ - 1 = ((r-r')² + dz²) / (2 r r')
  double chi = 0;

  static KernelGeometry make(double r, double z, double rp, double zp);
};

// Modes 0..M of G_m and (optionally) its gradients. Negative modes by evenness.
struct ModalKernelValues {
  int M = -1;
  bool has_gradients = false;
  std::vector<cplx> g, dr, dz, drp, dzp;

  cplx operator()(int m) const { return g[static_cast<size_t>(m < 0 ? -m : m)]; }
};

struct ModulatedKernels {
  int M = -1;
  std::vector<cplx> c, s;  // m = 0..M

  cplx cos_mode(int m) const { return c[static_cast<size_t>(m < 0 ? -m : m)]; }
  cplx sin_mode(int m) const { return m < 0 ? -s[static_cast<size_t>(-m)] : s[static_cast<size_t>(m)]; }
};

// Threshold on α above which the near-singular split is used.
inline constexpr double kAlphaSplit = 1.0 / 1.005;

// G_m = (1/2π)∫ e^{ikD}/(4πD) e^{-imφ} dφ, D = |x - x'|, φ = θ - θ'.
ModalKernelValues modal_green(const KernelGeometry& geom, cplx k, int M, bool gradients = false);
inline ModalKernelValues modal_green_gradients(const KernelGeometry& geom, cplx k, int M) {
  return modal_green(geom, k, M, true);
}

// Force a specific evaluation regime (tests only; the default picks by α).
enum class GreenRegime { Automatic, Direct, Split };
ModalKernelValues modal_green(const KernelGeometry& geom, cplx k, int M, bool gradients,
                              GreenRegime regime);

// Static modes Q_{m-1/2}(χ)/(4π²√(rr')).
std::vector<double> static_green_modes(const KernelGeometry& geom, int M);

// cos/sin-modulated modes: (1/2π)∫ G cosφ e^{-imφ}, (1/2π)∫ G sinφ e^{-imφ}. Needs modes to M+1.
ModulatedKernels modulated_kernels(const ModalKernelValues& values, int M);
// Same applied to one of the gradient arrays.
ModulatedKernels modulated_kernels(const std::vector<cplx>& modes, int M);

// Modes of (G_k - G_0)/k. Defined for all k including 0.
enum class DifferenceMethod { Automatic, Split, Subtract };
inline constexpr double kKappaSwitch = 1e-3;
ModalKernelValues difference_kernel(const KernelGeometry& geom, cplx k, int M, bool gradients = false,
                                    DifferenceMethod method = DifferenceMethod::Automatic);

}  // namespace bor
