#pragma once

#include <memory>

#include "bor/geometry.hpp"
#include "bor/kernel_table.hpp"
#include "bor/quadrature.hpp"
#include "bor/surface_calculus.hpp"

namespace bor {

// Curve, grid, quadrature stencil and spectral operators shared by every mode.
class Discretization {
 public:
  Discretization(const GeneratingCurve& curve, int n, int order, int cycle_node = -1);
  Discretization(const Discretization&) = delete;
  Discretization& operator=(const Discretization&) = delete;

  const GeneratingCurve& curve() const { return curve_; }
  const Grid& grid() const { return grid_; }
  const NystromStencil& stencil() const { return *stencil_; }
  const SpectralOps& ops() const { return ops_; }
  const CycleSpec& cycle() const { return cycle_; }
  int n() const { return grid_.n; }

 private:
  GeneratingCurve curve_;
  Grid grid_;
  std::unique_ptr<NystromStencil> stencil_;
  SpectralOps ops_;
  CycleSpec cycle_;
};

// h1 = τ̂/r, h2 = -θ̂/r.
struct HarmonicBasis {
  ModalTangentField h1, h2;
};
HarmonicBasis harmonic_basis(const Grid& grid);

// n̂ × F in the (τ̂, θ̂) frame: (F_τ, F_θ) ↦ (F_θ, -F_τ).
ModalTangentField n_cross(const ModalTangentField& F);

struct DebyeDensities {
  int m = 0;
  CVec rho, sigma;
  cplx a1 = 0.0, a2 = 0.0;
};

struct Currents {
  ModalTangentField J, K;
};
// J = ik(∇_Γ Δ⁻¹ρ - n̂×∇_Γ Δ⁻¹σ) + a1 h1 + a2 h2, K = n̂×J.
Currents build_currents(const DebyeDensities& d, cplx k, const Grid& grid);

// Kernel tables shared by all modes of one solve.
struct OperatorKernels {
  KernelTable helmholtz;   // modes 0..M+1, target gradients
  KernelTable stat;        // modes 0..M
  KernelTable difference;  // modes 0..1, target gradients (B-cycle row)
  cplx k = 0.0;

  OperatorKernels(const Discretization& disc, cplx k, int M, Execution exec = Execution::Parallel);
};

// Linear maps from the unknown vector x = [ρ; σ; a1; a2] (a's only for m = 0) to grid values.
struct ModeOperators {
  int m = 0;
  int nx = 0;
  CMat Jtau, Jtheta, Ktau, Ktheta;  // currents
  CMat Etau, Etheta, Hn;            // exterior traces of the represented field
  CMat KE, KH;                      // system row blocks
  CMat S0;                          // static single layer used as the K_E preconditioner
  // m = 0 only
  CMat cycleA;        // h Σ E_τ
  CMat cycleB;        // 2π r_B (stabilized E/k)_θ at the B-cycle node
  CMat cycleB_naive;  // 2π r_B E_θ at the B-cycle node, no low-frequency rescaling
};

ModeOperators assemble_mode_operators(const Discretization& disc, const OperatorKernels& kernels,
                                      int m, cplx k);

// Individual blocks, for callers that only need one of them.
CMat assemble_KE_block(const Discretization& disc, const OperatorKernels& kernels, int m, cplx k);
CMat assemble_KH_block(const Discretization& disc, const OperatorKernels& kernels, int m, cplx k);

struct CirculationRows {
  CMat a_cycle, b_cycle, b_cycle_naive;
};
CirculationRows circulation_rows(const Discretization& disc, const OperatorKernels& kernels, cplx k);

// Cylindrical (r, θ, z) single layer of a tangential density, from per-mode layer matrices.
struct CylindricalLayer {
  CMat r, theta, z;
};
CylindricalLayer vector_layer(const LayerMatrices& L, const CMat& vtau, const CMat& vtheta,
                              bool normal_derivative);

}  // namespace bor
