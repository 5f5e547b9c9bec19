#include "bor/quadrature.hpp"

#include <cmath>
#include <string>

#include "alpert_tables.hpp"

namespace bor {

AlpertRule alpert_rule(int n, int order) {
  const detail::AlpertTable* t = detail::alpert_table(order);
  if (!t) throw InputError("unsupported order " + std::to_string(order) + " (use 2, 6, 10 or 16)");
  if (n % 2 == 0) throw InputError("N must be odd");
  if (n < 2 * t->exclude + 1)
    throw InputError("N = " + std::to_string(n) + " is too small for the order " + std::to_string(order) +
                     " rule (need N >= " + std::to_string(2 * t->exclude + 1) + ")");
  AlpertRule r;
  r.order = order;
  r.exclude = t->exclude;
  r.x.assign(t->x, t->x + t->nodes);
  r.w.assign(t->w, t->w + t->nodes);
  return r;
}

double alpert_integrate(const AlpertRule& rule, double length, int n, int j,
                        const std::function<double(double)>& f) {
  const double h = length / n;
  const double s0 = j * h;
  double acc = 0.0;
  for (int d = rule.exclude; d <= n - rule.exclude; ++d) acc += f(s0 + d * h);
  for (size_t k = 0; k < rule.x.size(); ++k)
    acc += rule.w[k] * (f(s0 + rule.x[k] * h) + f(s0 - rule.x[k] * h));
  return h * acc;
}

std::vector<double> trig_interp_weights(int n, double t) {
  std::vector<double> w(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) {
    const double x = t - l;  // offset from node l in units of h
    const double xr = x - n * std::round(x / n);
    if (std::abs(xr) < 1e-14) {
      w[l] = 1.0;
      continue;
    }
    const double a = kPi * xr / n;
    w[l] = std::sin(n * a) / (n * std::sin(a));
  }
  return w;
}

NystromStencil::NystromStencil(const GeneratingCurve& curve, const Grid& grid, const AlpertRule& rule)
    : grid_(&grid), rule_(rule), n_(grid.n) {
  if (n_ < 2 * rule.exclude + 1) throw InputError("grid too small for the quadrature rule");
  const int nk = static_cast<int>(rule.x.size());
  off_.resize(static_cast<size_t>(n_) * 2 * nk);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < nk; ++k) {
      const double s = grid.nodes[j].s;
      off_[static_cast<size_t>(j) * 2 * nk + 2 * k] = curve.at(s + rule.x[k] * grid.h);
      off_[static_cast<size_t>(j) * 2 * nk + 2 * k + 1] = curve.at(s - rule.x[k] * grid.h);
    }
  interp_.resize(2 * nk);
  for (int k = 0; k < nk; ++k) {
    interp_[2 * k] = trig_interp_weights(n_, rule.x[k]);
    interp_[2 * k + 1] = trig_interp_weights(n_, -rule.x[k]);
  }
}

std::vector<CMat> build_matrices(const NystromStencil& st, int count,
                                 const std::function<void(int, int, cplx*)>& kernel) {
  const int n = st.n();
  const double scale = kTwoPi * st.grid().h;
  std::vector<CMat> out(static_cast<size_t>(count), CMat::Zero(n, n));
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < n; ++j) {
    std::vector<cplx> buf(static_cast<size_t>(count));
    for (int i = 0; i < n; ++i) {
      if (!st.trapezoid(j, i)) continue;
      kernel(j, i, buf.data());
      const double w = scale * st.grid().nodes[i].r;
      for (int c = 0; c < count; ++c) out[c](j, i) += w * buf[c];
    }
    for (int p = 0; p < st.offgrid(); ++p) {
      kernel(j, n + p, buf.data());
      const double w = scale * st.offgrid_weight(p) * st.source(j, n + p).r;
      const std::vector<double>& ip = st.interp(p);
      for (int l = 0; l < n; ++l) {
        const int i = (j + l) % n;
        const double wl = w * ip[l];
        for (int c = 0; c < count; ++c) out[c](j, i) += wl * buf[c];
      }
    }
  }
  return out;
}

CMat build_matrix(const NystromStencil& st, const std::function<cplx(int, int)>& kernel) {
  return build_matrices(st, 1, [&](int j, int q, cplx* o) { o[0] = kernel(j, q); })[0];
}

CMat compose(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows()) throw InputError("operator matrices are not conformable");
  return a * b;
}

}  // namespace bor
