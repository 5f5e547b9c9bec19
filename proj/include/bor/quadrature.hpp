#pragma once

#include <functional>
#include <vector>

#include "bor/geometry.hpp"
#include "bor/types.hpp"

namespace bor {

// Log-singular hybrid Gauss-trapezoidal correction: skip `exclude - 1` grid points either side
// of the singular node, add `x.size()` weighted off-grid nodes per side (offsets in units of h).
struct AlpertRule {
  int order = 0;
  int exclude = 0;
  std::vector<double> x, w;
};

AlpertRule alpert_rule(int n, int order);

// ∫_0^L f(s) ds for f with a log singularity at s0 = node j (periodic). f is evaluated at
// grid nodes and at off-grid points s0 ± x_k h. Used for testing the rule in isolation.
double alpert_integrate(const AlpertRule& rule, double length, int n, int j,
                        const std::function<double(double)>& f);

// Periodic trigonometric interpolation weights from an odd grid of n nodes, for a point at
// offset t (in units of h) from node 0: value ≈ Σ_l weights[l] f_l.
std::vector<double> trig_interp_weights(int n, double t);

// Source points used by a Nyström rule on a grid. Slot q < n is grid node q; slot n + p is the
// p-th off-grid point attached to target j (p = 2k for s_j + x_k h, p = 2k+1 for s_j - x_k h).
class NystromStencil {
 public:
  NystromStencil(const GeneratingCurve& curve, const Grid& grid, const AlpertRule& rule);

  int n() const { return n_; }
  int offgrid() const { return 2 * static_cast<int>(rule_.x.size()); }
  int slots() const { return n_ + offgrid(); }
  const Grid& grid() const { return *grid_; }
  const AlpertRule& rule() const { return rule_; }
  const CurvePoint& source(int j, int q) const {
    return q < n_ ? grid_->nodes[q] : off_[static_cast<size_t>(j) * offgrid() + (q - n_)];
  }
  // Trapezoid part of the rule includes grid source i for target j.
  bool trapezoid(int j, int i) const {
    int d = ((i - j) % n_ + n_) % n_;
    return d >= rule_.exclude && d <= n_ - rule_.exclude;
  }
  // Weight of off-grid point p (without h) and its interpolation weights onto grid
  // offsets l = (i - j) mod n.
  double offgrid_weight(int p) const { return rule_.w[static_cast<size_t>(p / 2)]; }
  const std::vector<double>& interp(int p) const { return interp_[static_cast<size_t>(p)]; }

 private:
  const Grid* grid_;
  AlpertRule rule_;
  int n_;
  std::vector<CurvePoint> off_;
  std::vector<std::vector<double>> interp_;
};

// Dense N×N Nyström matrix A[j,i] for ∫ K(s_j, s') f(s') 2π r(s') ds', where kernel(j, q)
// returns K times any extra source factor at slot q.
CMat build_matrix(const NystromStencil& st, const std::function<cplx(int, int)>& kernel);

// Same for several kernels sharing one pass over the stencil. kernel(j, q, out) fills out[0..count).
std::vector<CMat> build_matrices(const NystromStencil& st, int count,
                                 const std::function<void(int, int, cplx*)>& kernel);

CMat compose(const CMat& a, const CMat& b);

}  // namespace bor
