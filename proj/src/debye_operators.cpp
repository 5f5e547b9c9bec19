#include "bor/debye_operators.hpp"

#include <cmath>

namespace bor {

Discretization::Discretization(const GeneratingCurve& curve, int n, int order, int cycle_node)
    : curve_(curve),
      grid_(make_grid(curve_, n)),
      stencil_(std::make_unique<NystromStencil>(curve_, grid_, alpert_rule(n, order))),
      ops_(grid_),
      cycle_(cycle_node < 0 ? default_cycle(grid_) : cycle_at_node(grid_, cycle_node)) {}

HarmonicBasis harmonic_basis(const Grid& grid) {
  const CVec inv = grid.r().cwiseInverse().cast<cplx>();
  HarmonicBasis b;
  b.h1.tau = inv;
  b.h1.theta = CVec::Zero(grid.n);
  b.h2.tau = CVec::Zero(grid.n);
  b.h2.theta = -inv;
  return b;
}

ModalTangentField n_cross(const ModalTangentField& F) { return {F.theta, -F.tau}; }

Currents build_currents(const DebyeDensities& d, cplx k, const Grid& grid) {
  const CVec r = grid.r().cast<cplx>();
  const cplx im = kI * static_cast<double>(d.m);
  auto project = [&](const CVec& f) -> CVec {
    if (d.m != 0) return f;
    const RVec w = mean_weights(grid);
    return f - CVec::Constant(grid.n, w.cast<cplx>().dot(f) / w.sum());
  };
  LaplaceInverse a = inv_surf_laplacian(project(d.rho), d.m, grid);
  LaplaceInverse b = inv_surf_laplacian(project(d.sigma), d.m, grid);
  Currents c;
  c.J.tau = kI * k * (a.dalpha - im * b.alpha.cwiseQuotient(r));
  c.J.theta = kI * k * (im * a.alpha.cwiseQuotient(r) + b.dalpha);
  if (d.m == 0) {
    HarmonicBasis h = harmonic_basis(grid);
    c.J.tau += d.a1 * h.h1.tau + d.a2 * h.h2.tau;
    c.J.theta += d.a1 * h.h1.theta + d.a2 * h.h2.theta;
  }
  c.K = n_cross(c.J);
  return c;
}

OperatorKernels::OperatorKernels(const Discretization& disc, cplx kk, int M, Execution exec)
    : helmholtz(disc.stencil(), KernelKind::Helmholtz, kk, M + 1, true, exec),
      stat(disc.stencil(), KernelKind::Static, 0.0, M, false, exec),
      difference(disc.stencil(), KernelKind::Difference, kk, 1, true, exec),
      k(kk) {}

CylindricalLayer vector_layer(const LayerMatrices& L, const CMat& vtau, const CMat& vtheta,
                              bool normal_derivative) {
  CylindricalLayer u;
  if (!normal_derivative) {
    u.r = L.cr * vtau + L.s * vtheta;
    u.theta = -L.sr * vtau + L.c * vtheta;
    u.z = L.gz * vtau;
  } else {
    u.r = L.dcr * vtau + L.ds * vtheta;
    u.theta = -L.dsr * vtau + L.dc * vtheta;
    u.z = L.dgz * vtau;
  }
  return u;
}

namespace {

using Diag = Eigen::DiagonalMatrix<cplx, Eigen::Dynamic>;

struct GridDiags {
  Diag r, inv_r, dr, dz, dr_over_r, dz_over_r;
  CMat D;

  explicit GridDiags(const Discretization& disc) {
    const Grid& g = disc.grid();
    const CVec rv = g.r().cast<cplx>();
    const CVec drv = g.dr().cast<cplx>();
    const CVec dzv = g.dz().cast<cplx>();
    r = rv.asDiagonal();
    inv_r = rv.cwiseInverse().asDiagonal();
    dr = drv.asDiagonal();
    dz = dzv.asDiagonal();
    dr_over_r = drv.cwiseQuotient(rv).asDiagonal();
    dz_over_r = dzv.cwiseQuotient(rv).asDiagonal();
    D = disc.ops().D.cast<cplx>();
  }
};

// θ-component of the exterior trace of ∇×U for a single layer U of tangential density V.
CMat curl_theta_trace(const GridDiags& G, const CylindricalLayer& U, const CylindricalLayer& DnU,
                      const CMat& vtau, double jump) {
  CMat out = G.dz * (G.D * U.r) - G.dr * (G.D * U.z) - (G.dr * DnU.r + G.dz * DnU.z);
  if (jump != 0.0) out += jump * vtau;
  return out;
}

struct Unknowns {
  int n, nx;
  CMat alpha, dalpha, beta, dbeta, rho, sigma, a1col, a2col;
};

Unknowns unknown_maps(const Discretization& disc, int m) {
  const int n = disc.n();
  Unknowns u;
  u.n = n;
  u.nx = 2 * n + (m == 0 ? 2 : 0);
  LaplaceInverseMatrices L = inv_surf_laplacian_matrices(m, disc.grid(), disc.ops());
  const CMat la = L.alpha.cast<cplx>(), ld = L.dalpha.cast<cplx>();
  u.rho = CMat::Zero(n, u.nx);
  u.sigma = CMat::Zero(n, u.nx);
  u.rho.leftCols(n).setIdentity();
  u.sigma.middleCols(n, n).setIdentity();
  u.alpha = CMat::Zero(n, u.nx);
  u.dalpha = CMat::Zero(n, u.nx);
  u.beta = CMat::Zero(n, u.nx);
  u.dbeta = CMat::Zero(n, u.nx);
  u.alpha.leftCols(n) = la;
  u.dalpha.leftCols(n) = ld;
  u.beta.middleCols(n, n) = la;
  u.dbeta.middleCols(n, n) = ld;
  u.a1col = CMat::Zero(n, u.nx);
  u.a2col = CMat::Zero(n, u.nx);
  if (m == 0) {
    u.a1col.col(2 * n).setOnes();
    u.a2col.col(2 * n + 1).setOnes();
  }
  return u;
}

}  // namespace

ModeOperators assemble_mode_operators(const Discretization& disc, const OperatorKernels& kernels,
                                      int m, cplx k) {
  const NystromStencil& st = disc.stencil();
  const GridDiags G(disc);
  const Unknowns u = unknown_maps(disc, m);
  const cplx im = kI * static_cast<double>(m);
  const cplx ik = kI * k;

  ModeOperators op;
  op.m = m;
  op.nx = u.nx;
  op.Jtau = ik * (u.dalpha - im * (G.inv_r * u.beta)) + G.inv_r * u.a1col;
  op.Jtheta = ik * (im * (G.inv_r * u.alpha) + u.dbeta) - G.inv_r * u.a2col;
  op.Ktau = op.Jtheta;
  op.Ktheta = -op.Jtau;

  const LayerMatrices Lk = layer_matrices(st, kernels.helmholtz, m, true);
  const CylindricalLayer A = vector_layer(Lk, op.Jtau, op.Jtheta, false);
  const CylindricalLayer Q = vector_layer(Lk, op.Ktau, op.Ktheta, false);
  const CylindricalLayer DnQ = vector_layer(Lk, op.Ktau, op.Ktheta, true);
  const CMat phi = Lk.g * u.rho;
  const CMat dn_psi = Lk.dg * u.sigma;

  const CMat A_tau = G.dr * A.r + G.dz * A.z;
  const CMat curlQ_tau = im * (G.inv_r * (G.dr * Q.z - G.dz * Q.r)) + G.dz_over_r * Q.theta -
                         0.5 * op.Ktheta + DnQ.theta;
  const CMat curlQ_theta = curl_theta_trace(G, Q, DnQ, op.Ktau, 0.5);

  op.Etau = ik * A_tau - G.D * phi - curlQ_tau;
  op.Etheta = ik * A.theta - im * (G.inv_r * phi) - curlQ_theta;
  op.Hn = ik * (G.dz * Q.r - G.dr * Q.z) + 0.5 * u.sigma - dn_psi + im * (G.inv_r * A_tau) -
          G.inv_r * (G.D * (G.r * A.theta));

  const CMat S0 = scalar_layer(st, kernels.stat, m);
  const CMat div_E = G.inv_r * (G.D * (G.r * op.Etau)) + im * (G.inv_r * op.Etheta);
  op.KE = S0 * div_E;
  op.S0 = S0;
  op.KH = op.Hn;

  if (m == 0) {
    const Grid& grid = disc.grid();
    const int jb = disc.cycle().node;
    const double rb = disc.cycle().r_b;
    op.cycleA = grid.h * CMat::Ones(1, grid.n) * op.Etau;

    // K = ik K̃ + K_H with K̃ = n̂×∇α + ∇β = (β', -α') and K_H = a1 h2 - a2 h1.
    const CMat kt_tau = u.dbeta, kt_theta = -u.dalpha;
    const CylindricalLayer Ut = vector_layer(Lk, kt_tau, kt_theta, false);
    const CylindricalLayer DnUt = vector_layer(Lk, kt_tau, kt_theta, true);
    const CMat curl_t = curl_theta_trace(G, Ut, DnUt, kt_tau, 0.5);

    const CMat kh_tau = -(G.inv_r * u.a2col), kh_theta = -(G.inv_r * u.a1col);
    const LayerMatrices Ld = layer_matrices(st, kernels.difference, 0, true);
    const CylindricalLayer Ud = vector_layer(Ld, kh_tau, kh_theta, false);
    const CylindricalLayer DnUd = vector_layer(Ld, kh_tau, kh_theta, true);
    const CMat curl_d = curl_theta_trace(G, Ud, DnUd, kh_tau, 0.0);

    const CMat e_diff = kI * A.theta - kI * curl_t - curl_d;
    op.cycleB = kTwoPi * rb * e_diff.row(jb);
    op.cycleB_naive = kTwoPi * rb * op.Etheta.row(jb);
  }
  return op;
}

CMat assemble_KE_block(const Discretization& disc, const OperatorKernels& kernels, int m, cplx k) {
  return assemble_mode_operators(disc, kernels, m, k).KE;
}

CMat assemble_KH_block(const Discretization& disc, const OperatorKernels& kernels, int m, cplx k) {
  return assemble_mode_operators(disc, kernels, m, k).KH;
}

CirculationRows circulation_rows(const Discretization& disc, const OperatorKernels& kernels, cplx k) {
  ModeOperators op = assemble_mode_operators(disc, kernels, 0, k);
  return {op.cycleA, op.cycleB, op.cycleB_naive};
}

}  // namespace bor
