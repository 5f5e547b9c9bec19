#pragma once

#include "bor/geometry.hpp"
#include "bor/types.hpp"

namespace bor {

struct ModalTangentField {
  CVec tau, theta;
};

// Spectral differentiation and antidifferentiation on an odd periodic grid.
struct SpectralOps {
  RMat D;  // d/ds
  RMat I;  // zero-mean antiderivative of the zero-mean part

  explicit SpectralOps(const Grid& grid);
};

ModalTangentField surf_grad(const CVec& f, int m, const Grid& grid);
CVec surf_div(const ModalTangentField& F, int m, const Grid& grid);
CVec surf_laplacian(const CVec& f, int m, const Grid& grid);

struct LaplaceInverse {
  CVec alpha, dalpha;
};

// Solves Δ_Γ α = f for mode m. For m = 0 the RHS must have zero mean with weight r and the
// solution is normalized to Σ r α = 0; otherwise throws InputError("non-mean-zero RHS").
LaplaceInverse inv_surf_laplacian(const CVec& f, int m, const Grid& grid);

// Dense maps f ↦ α and f ↦ dα/ds for one mode. For m = 0 the weighted mean of f is removed
// first (the operator then equals inverse ∘ projection).
struct LaplaceInverseMatrices {
  RMat alpha, dalpha;
};
LaplaceInverseMatrices inv_surf_laplacian_matrices(int m, const Grid& grid, const SpectralOps& ops);

// Dense collocation operator Δ_Γ on the grid (test oracle).
RMat surf_laplacian_matrix(int m, const Grid& grid, const SpectralOps& ops);

// Discrete weighted mean functional: Σ_j r_j h f_j.
RVec mean_weights(const Grid& grid);

}  // namespace bor
