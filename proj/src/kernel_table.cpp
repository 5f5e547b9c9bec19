#include "bor/kernel_table.hpp"

#include <cmath>

namespace bor {

ModalKernelValues evaluate_kernel(KernelKind kind, const KernelGeometry& geom, cplx k, int mmax,
                                  bool gradients) {
  switch (kind) {
    case KernelKind::Helmholtz:
      return modal_green(geom, k, mmax, gradients);
    case KernelKind::Difference:
      return difference_kernel(geom, k, mmax, gradients);
    case KernelKind::Static:
      if (gradients) return modal_green(geom, 0.0, mmax, true);
      {
        ModalKernelValues v;
        v.M = mmax;
        std::vector<double> q = static_green_modes(geom, mmax);
        v.g.assign(q.begin(), q.end());
        return v;
      }
  }
  return {};
}

KernelTable::KernelTable(const NystromStencil& st, KernelKind kind, cplx k, int mmax, bool gradients,
                         Execution exec)
    : n_(st.n()), slots_(st.slots()), mmax_(mmax), grad_(gradients), kind_(kind), k_(k) {
  const size_t total = static_cast<size_t>(n_) * slots_ * (mmax_ + 1);
  g_.assign(total, 0.0);
  if (grad_) {
    dr_.assign(total, 0.0);
    dz_.assign(total, 0.0);
  }
  const long pairs = static_cast<long>(n_) * slots_;
  auto work = [&](long p) {
    const int j = static_cast<int>(p / slots_);
    const int q = static_cast<int>(p % slots_);
    if (q < n_ && !st.trapezoid(j, q)) return;
    const CurvePoint& t = st.grid().nodes[j];
    const CurvePoint& s = st.source(j, q);
    KernelGeometry geom = KernelGeometry::make(t.r, t.z, s.r, s.z);
    ModalKernelValues v = evaluate_kernel(kind_, geom, k_, mmax_, grad_);
    const size_t base = index(j, q);
    for (int m = 0; m <= mmax_; ++m) {
      g_[base + m] = v.g[m];
      if (grad_) {
        dr_[base + m] = v.dr[m];
        dz_[base + m] = v.dz[m];
      }
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long p = 0; p < pairs; ++p) work(p);
  } else {
    for (long p = 0; p < pairs; ++p) work(p);
  }
}

namespace {

// Modes of g, C = (g_{m-1}+g_{m+1})/2 and S = (g_{m-1}-g_{m+1})/(2i) for signed m.
struct ModeTriple {
  cplx g, c, s;
};

ModeTriple triple(const cplx* a, int m) {
  const int am = std::abs(m);
  ModeTriple t;
  t.g = a[am];
  const cplx lo = a[std::abs(am - 1)], hi = a[am + 1];
  t.c = 0.5 * (lo + hi);
  t.s = (lo - hi) / (2.0 * kI);
  if (m < 0) t.s = -t.s;
  return t;
}

}  // namespace

LayerMatrices layer_matrices(const NystromStencil& st, const KernelTable& table, int m,
                             bool normal_derivatives) {
  if (std::abs(m) + 1 > table.mmax()) throw InputError("kernel table has too few modes");
  if (normal_derivatives && !table.gradients()) throw InputError("kernel table lacks gradients");
  const int count = normal_derivatives ? 12 : 6;
  std::vector<CMat> mats = build_matrices(st, count, [&](int j, int q, cplx* o) {
    const CurvePoint& s = st.source(j, q);
    ModeTriple v = triple(table.g(j, q), m);
    o[0] = v.g;
    o[1] = v.g * s.dz;
    o[2] = v.c * s.dr;
    o[3] = v.c;
    o[4] = v.s;
    o[5] = v.s * s.dr;
    if (!normal_derivatives) return;
    const CurvePoint& t = st.grid().nodes[j];
    ModeTriple a = triple(table.dr(j, q), m);
    ModeTriple b = triple(table.dz(j, q), m);
    const double nr = t.dz, nz = -t.dr;
    ModeTriple d{nr * a.g + nz * b.g, nr * a.c + nz * b.c, nr * a.s + nz * b.s};
    o[6] = d.g;
    o[7] = d.g * s.dz;
    o[8] = d.c * s.dr;
    o[9] = d.c;
    o[10] = d.s;
    o[11] = d.s * s.dr;
  });
  LayerMatrices L;
  L.g = std::move(mats[0]);
  L.gz = std::move(mats[1]);
  L.cr = std::move(mats[2]);
  L.c = std::move(mats[3]);
  L.s = std::move(mats[4]);
  L.sr = std::move(mats[5]);
  if (normal_derivatives) {
    L.has_normal = true;
    L.dg = std::move(mats[6]);
    L.dgz = std::move(mats[7]);
    L.dcr = std::move(mats[8]);
    L.dc = std::move(mats[9]);
    L.ds = std::move(mats[10]);
    L.dsr = std::move(mats[11]);
  }
  return L;
}

CMat scalar_layer(const NystromStencil& st, const KernelTable& table, int m) {
  if (std::abs(m) > table.mmax()) throw InputError("kernel table has too few modes");
  const int am = std::abs(m);
  return build_matrix(st, [&](int j, int q) { return table.g(j, q)[am]; });
}

}  // namespace bor
