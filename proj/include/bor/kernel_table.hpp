#pragma once

#include <vector>

#include "bor/modal_green.hpp"
#include "bor/quadrature.hpp"

namespace bor {

enum class KernelKind { Helmholtz, Static, Difference };
enum class Execution { Serial, Parallel };

// Modes 0..mmax of a modal kernel (and target gradients) for every (target, source slot) pair
// a Nyström stencil touches. Slots excluded from the rule are left zero.
class KernelTable {
 public:
  KernelTable() = default;
  KernelTable(const NystromStencil& st, KernelKind kind, cplx k, int mmax, bool gradients,
              Execution exec = Execution::Parallel);

  int mmax() const { return mmax_; }
  bool gradients() const { return grad_; }
  KernelKind kind() const { return kind_; }
  cplx k() const { return k_; }

  const cplx* g(int j, int q) const { return &g_[index(j, q)]; }
  const cplx* dr(int j, int q) const { return &dr_[index(j, q)]; }
  const cplx* dz(int j, int q) const { return &dz_[index(j, q)]; }

  bool operator==(const KernelTable& o) const {
    return g_ == o.g_ && dr_ == o.dr_ && dz_ == o.dz_;
  }

 private:
  size_t index(int j, int q) const { return (static_cast<size_t>(j) * slots_ + q) * (mmax_ + 1); }

  int n_ = 0, slots_ = 0, mmax_ = 0;
  bool grad_ = false;
  KernelKind kind_ = KernelKind::Helmholtz;
  cplx k_ = 0.0;
  std::vector<cplx> g_, dr_, dz_;
};

// Evaluates the kernel for one pair; shared by the table builder and off-surface evaluation.
ModalKernelValues evaluate_kernel(KernelKind kind, const KernelGeometry& geom, cplx k, int mmax,
                                  bool gradients);

// Per-mode single-layer matrices on the grid; 2π r' and the quadrature weights are included.
struct LayerMatrices {
  CMat g, gz, cr, c, s, sr;          // g·1, g·ż', C·ṙ', C·1, S·1, S·ṙ'
  CMat dg, dgz, dcr, dc, ds, dsr;    // same with the target normal derivative n·∇
  bool has_normal = false;
};

LayerMatrices layer_matrices(const NystromStencil& st, const KernelTable& table, int m,
                             bool normal_derivatives);

// Only the scalar single layer g_m (used for the static preconditioner).
CMat scalar_layer(const NystromStencil& st, const KernelTable& table, int m);

}  // namespace bor
