#include "bor/surface_calculus.hpp"

#include <cmath>

namespace bor {

SpectralOps::SpectralOps(const Grid& grid) {
  const int n = grid.n;
  const double L = grid.length;
  D = RMat::Zero(n, n);
  I = RMat::Zero(n, n);
  const int K = (n - 1) / 2;
  // Entries depend on the offset d = j - i only.
  for (int d = 0; d < n; ++d) {
    double dv = 0.0, iv = 0.0;
    for (int q = 1; q <= K; ++q) {
      const double w = kTwoPi * q / L;
      const double a = std::sin(kTwoPi * q * d / n);
      dv += -2.0 * w * a / n;
      iv += 2.0 * a / (w * n);
    }
    for (int i = 0; i < n; ++i) {
      D((i + d) % n, i) = dv;
      I((i + d) % n, i) = iv;
    }
  }
}

namespace {

CVec spectral_derivative(const CVec& f, const Grid& grid) {
  SpectralOps ops(grid);
  return ops.D.cast<cplx>() * f;
}

}  // namespace

ModalTangentField surf_grad(const CVec& f, int m, const Grid& grid) {
  ModalTangentField F;
  F.tau = spectral_derivative(f, grid);
  F.theta = (kI * static_cast<double>(m)) * f.cwiseQuotient(grid.r().cast<cplx>());
  return F;
}

// Divergence in conservative form (1/r) d/ds (r F_τ): summed against r h it vanishes exactly,
// and it annihilates n̂×∇_Γ of any grid function without relying on a discrete product rule.
CVec surf_div(const ModalTangentField& F, int m, const Grid& grid) {
  const CVec r = grid.r().cast<cplx>();
  return spectral_derivative(r.cwiseProduct(F.tau), grid).cwiseQuotient(r) +
         (kI * static_cast<double>(m)) * F.theta.cwiseQuotient(r);
}

RMat surf_laplacian_matrix(int m, const Grid& grid, const SpectralOps& ops) {
  const RVec r = grid.r();
  RMat A = r.cwiseInverse().asDiagonal() * ops.D * r.asDiagonal() * ops.D;
  A.diagonal() -= (static_cast<double>(m) * m) * r.cwiseInverse().cwiseAbs2();
  return A;
}

CVec surf_laplacian(const CVec& f, int m, const Grid& grid) {
  SpectralOps ops(grid);
  return surf_laplacian_matrix(m, grid, ops).cast<cplx>() * f;
}

RVec mean_weights(const Grid& grid) { return grid.r() * grid.h; }

LaplaceInverseMatrices inv_surf_laplacian_matrices(int m, const Grid& grid, const SpectralOps& ops) {
  // With the flux v = r α' and u = v', the equation reads u - (m²/r) α = r f where
  //   v = I u + c1,  α' = v / r,  α = I(v / r) + c0.
  // Unknowns u, c1, c0 (and for m = 0 a slack λ taking the weighted mean of f). Constraints:
  // Σ u = 0, periodic α (zero mean of v / r), and for m = 0 also Σ r α = 0.
  const int n = grid.n;
  const RVec r = grid.r();
  const RVec inv_r = r.cwiseInverse();
  const RVec mr = (static_cast<double>(m) * m) * inv_r;
  const RMat Ir = ops.I * inv_r.asDiagonal();
  const RMat IrI = Ir * ops.I;
  const RVec Ir1 = Ir * RVec::Ones(n);
  const bool zero = (m == 0);
  const int nu = n + 2 + (zero ? 1 : 0);
  RMat A = RMat::Zero(nu, nu);
  A.topLeftCorner(n, n) = RMat::Identity(n, n) - mr.asDiagonal() * IrI;
  A.block(0, n, n, 1) = -mr.cwiseProduct(Ir1);
  A.block(0, n + 1, n, 1) = -mr;
  A.block(n, 0, 1, n) = RVec::Ones(n).transpose();
  A.block(n + 1, 0, 1, n) = inv_r.transpose() * ops.I;
  A(n + 1, n) = inv_r.sum();
  RMat rhs = RMat::Zero(nu, n);
  rhs.topRows(n) = r.asDiagonal();
  if (zero) {
    A.block(0, n + 2, n, 1) = r;
    A.block(n + 2, 0, 1, n) = r.transpose() * IrI;
    A(n + 2, n) = r.dot(Ir1);
    A(n + 2, n + 1) = r.sum();
  }
  const RMat x = A.partialPivLu().solve(rhs);
  const RMat u = x.topRows(n);
  LaplaceInverseMatrices out;
  out.alpha = IrI * u + Ir1 * x.row(n) + RVec::Ones(n) * x.row(n + 1);
  out.dalpha = inv_r.asDiagonal() * (ops.I * u + RVec::Ones(n) * x.row(n));
  return out;
}

LaplaceInverse inv_surf_laplacian(const CVec& f, int m, const Grid& grid) {
  if (m == 0) {
    const RVec w = mean_weights(grid);
    const cplx mean = w.cast<cplx>().dot(f) / w.sum();
    if (std::abs(mean) > 1e-10 * f.norm() / std::sqrt(static_cast<double>(grid.n)) &&
        std::abs(mean) > 0.0)
      throw InputError("non-mean-zero RHS");
  }
  SpectralOps ops(grid);
  LaplaceInverseMatrices M = inv_surf_laplacian_matrices(m, grid, ops);
  LaplaceInverse out;
  out.alpha = M.alpha.cast<cplx>() * f;
  out.dalpha = M.dalpha.cast<cplx>() * f;
  return out;
}

}  // namespace bor
