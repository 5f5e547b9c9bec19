#include "bor/postprocess.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <exception>
#include <mutex>

#include "bor/fft.hpp"
#include "bor/modal_green.hpp"

namespace bor {

namespace {

// Trigonometric interpolation of n (odd) periodic samples onto n·u equispaced points.
CVec trig_upsample(const CVec& f, int u) {
  const int n = static_cast<int>(f.size());
  std::vector<cplx> a(f.data(), f.data() + n);
  fft::forward(a);
  const int nu = n * u;
  std::vector<cplx> b(static_cast<size_t>(nu), 0.0);
  for (int q = 0; q <= n / 2; ++q) b[q] = a[q] / static_cast<double>(n);
  for (int q = n / 2 + 1; q < n; ++q) b[nu - (n - q)] = a[q] / static_cast<double>(n);
  fft::backward(b);
  return Eigen::Map<CVec>(b.data(), nu);
}

// Cylindrical (r, θ, z) → Cartesian at angle θ.
CVec3 to_cartesian(const std::array<cplx, 3>& v, double c, double s) {
  return {v[0] * c - v[1] * s, v[0] * s + v[1] * c, v[2]};
}

struct Triple {
  cplx g, c, s;
};

Triple triple(const std::vector<cplx>& a, int m) {
  const int am = std::abs(m);
  const cplx lo = a[static_cast<size_t>(std::abs(am - 1))], hi = a[static_cast<size_t>(am + 1)];
  Triple t{a[static_cast<size_t>(am)], 0.5 * (lo + hi), (lo - hi) / (2.0 * kI)};
  if (m < 0) t.s = -t.s;
  return t;
}

}  // namespace

// Upsampled source nodes with quadrature weights 2π r' h/u and per-mode density values.
struct FieldEvaluator::Sources {
  int u = 1;
  std::vector<CurvePoint> nodes;
  std::vector<double> w;
  // columns m + M
  CMat rho, sigma, jt, jh, kt, kh;
};

FieldEvaluator::~FieldEvaluator() = default;

FieldEvaluator::FieldEvaluator(const DebyeSolution& sol) : sol_(&sol), M_(sol.M), cache_(3) {
  const GeneratingCurve& curve = sol.disc->curve();
  const int nf = 16 * sol.disc->n();
  fine_.reserve(static_cast<size_t>(nf));
  for (int i = 0; i < nf; ++i) fine_.push_back(curve.at(curve.length() * i / nf));
  for (int f : {2, 4, 9}) sources(f);
}

const FieldEvaluator::Sources& FieldEvaluator::sources(int factor) const {
  const size_t slot = factor <= 2 ? 0 : factor <= 4 ? 1 : 2;
  auto& ptr = const_cast<std::unique_ptr<Sources>&>(cache_[slot]);
  if (ptr) return *ptr;  // filled by the constructor, so later calls are read-only
  const Discretization& disc = *sol_->disc;
  const Grid& grid = disc.grid();
  auto src = std::make_unique<Sources>();
  src->u = factor;
  const int nu = grid.n * factor;
  const double hu = grid.h / factor;
  for (int i = 0; i < nu; ++i) {
    CurvePoint p = disc.curve().at(i * hu);
    src->nodes.push_back(p);
    src->w.push_back(kTwoPi * p.r * hu);
  }
  const int nm = 2 * M_ + 1;
  for (CMat* mat : {&src->rho, &src->sigma, &src->jt, &src->jh, &src->kt, &src->kh}) mat->resize(nu, nm);
  for (int m = -M_; m <= M_; ++m) {
    const int c = m + M_;
    const DebyeDensities& d = sol_->mode(m);
    const Currents& cur = sol_->current(m);
    src->rho.col(c) = trig_upsample(d.rho, factor);
    src->sigma.col(c) = trig_upsample(d.sigma, factor);
    src->jt.col(c) = trig_upsample(cur.J.tau, factor);
    src->jh.col(c) = trig_upsample(cur.J.theta, factor);
    src->kt.col(c) = trig_upsample(cur.K.tau, factor);
    src->kh.col(c) = trig_upsample(cur.K.theta, factor);
  }
  ptr = std::move(src);
  return *ptr;
}

double FieldEvaluator::distance(double r, double z) const {
  double best = INFINITY;
  for (const CurvePoint& p : fine_) best = std::min(best, std::hypot(r - p.r, z - p.z));
  return best;
}

std::vector<ModalField> FieldEvaluator::modes(double r, double z, double min_spacing) const {
  if (!(r > 0)) throw InputError("modal evaluation needs r > 0");
  const double dist = distance(r, z);
  if (dist < min_spacing * sol_->disc->grid().h) throw InputError("near-field evaluation unsupported");
  return modes_unchecked(r, z, dist);
}

std::vector<ModalField> FieldEvaluator::modes_unchecked(double r, double z, double dist) const {
  const double h = sol_->disc->grid().h;
  // Trapezoid error for a kernel peaked at meridian distance d decays like e^{-2π u d / h}.
  const int factor = dist < 1.5 * h ? 9 : dist < 3.0 * h ? 4 : 2;
  const Sources& src = sources(factor);
  const cplx k = sol_->k;
  const int M = M_;
  const int nm = 2 * M + 1;

  // Per mode: φ, ∂rφ, ∂zφ, ψ, ∂rψ, ∂zψ, then A and Q as (r, θ, z) × (value, ∂r, ∂z).
  constexpr int kSlots = 24;
  std::vector<cplx> acc(static_cast<size_t>(nm * kSlots), 0.0);
  for (size_t p = 0; p < src.nodes.size(); ++p) {
    const CurvePoint& y = src.nodes[p];
    const double w = src.w[p];
    KernelGeometry geom = KernelGeometry::make(r, z, y.r, y.z);
    ModalKernelValues mk = modal_green(geom, k, M + 1, true);
    const int row = static_cast<int>(p);
    for (int m = -M; m <= M; ++m) {
      const int c = m + M;
      cplx* a = &acc[static_cast<size_t>(c * kSlots)];
      const Triple t0 = triple(mk.g, m), tr = triple(mk.dr, m), tz = triple(mk.dz, m);
      const cplx rho = w * src.rho(row, c), sig = w * src.sigma(row, c);
      a[0] += t0.g * rho;
      a[1] += tr.g * rho;
      a[2] += tz.g * rho;
      a[3] += t0.g * sig;
      a[4] += tr.g * sig;
      a[5] += tz.g * sig;
      auto layer = [&](cplx vt, cplx vh, cplx* o) {
        const Triple* ts[3] = {&t0, &tr, &tz};
        for (int d = 0; d < 3; ++d) {
          const Triple& t = *ts[d];
          o[d] += t.c * y.dr * vt + t.s * vh;
          o[3 + d] += -t.s * y.dr * vt + t.c * vh;
          o[6 + d] += t.g * y.dz * vt;
        }
      };
      layer(w * src.jt(row, c), w * src.jh(row, c), a + 6);
      layer(w * src.kt(row, c), w * src.kh(row, c), a + 15);
    }
  }

  std::vector<ModalField> out(static_cast<size_t>(nm));
  const cplx ik = kI * k;
  for (int m = -M; m <= M; ++m) {
    const cplx* a = &acc[static_cast<size_t>((m + M) * kSlots)];
    const cplx imr = kI * static_cast<double>(m) / r;
    // U = (r, θ, z) each with (value, ∂r, ∂z) at offsets 0, 3, 6
    auto curl = [&](const cplx* U) -> std::array<cplx, 3> {
      return {imr * U[6] - U[5], U[2] - U[7], U[3] / r + U[4] - imr * U[0]};
    };
    const std::array<cplx, 3> gphi{a[1], imr * a[0], a[2]};
    const std::array<cplx, 3> gpsi{a[4], imr * a[3], a[5]};
    const cplx* A = a + 6;
    const cplx* Q = a + 15;
    const auto cA = curl(A), cQ = curl(Q);
    ModalField& f = out[static_cast<size_t>(m + M)];
    for (int i = 0; i < 3; ++i) {
      f.E[i] = ik * A[3 * i] - gphi[i] - cQ[i];
      f.H[i] = ik * Q[3 * i] - gpsi[i] + cA[i];
    }
  }
  return out;
}

FieldSample FieldEvaluator::operator()(const Vec3& x) const {
  const double r = std::hypot(x[0], x[1]);
  const double scale = sol_->disc->curve().max_r();
  FieldSample out;
  out.x = x;
  if (r < 1e-3 * scale) {
    // Modal terms carry 1/r; average symmetric off-axis pairs and extrapolate in δ².
    const double delta = 1e-2 * scale;
    auto pair = [&](double d) {
      FieldSample a = (*this)({x[0] + d, x[1], x[2]});
      FieldSample b = (*this)({x[0] - d, x[1], x[2]});
      FieldSample m;
      for (int i = 0; i < 3; ++i) {
        m.E[i] = 0.5 * (a.E[i] + b.E[i]);
        m.H[i] = 0.5 * (a.H[i] + b.H[i]);
      }
      return m;
    };
    FieldSample f0 = pair(delta), f1 = pair(delta / 2), f2 = pair(delta / 4);
    for (int i = 0; i < 3; ++i) {
      const cplx ea = (4.0 * f1.E[i] - f0.E[i]) / 3.0, eb = (4.0 * f2.E[i] - f1.E[i]) / 3.0;
      const cplx ha = (4.0 * f1.H[i] - f0.H[i]) / 3.0, hb = (4.0 * f2.H[i] - f1.H[i]) / 3.0;
      out.E[i] = (16.0 * eb - ea) / 15.0;
      out.H[i] = (16.0 * hb - ha) / 15.0;
    }
    return out;
  }
  const double th = std::atan2(x[1], x[0]);
  std::vector<ModalField> md = modes(r, x[2]);
  std::array<cplx, 3> E{}, H{};
  for (int m = -M_; m <= M_; ++m) {
    const cplx e = std::exp(kI * (m * th));
    const ModalField& f = md[static_cast<size_t>(m + M_)];
    for (int i = 0; i < 3; ++i) {
      E[i] += f.E[i] * e;
      H[i] += f.H[i] * e;
    }
  }
  const double c = std::cos(th), s = std::sin(th);
  out.E = to_cartesian(E, c, s);
  out.H = to_cartesian(H, c, s);
  return out;
}

std::vector<FieldSample> FieldEvaluator::evaluate(const std::vector<Vec3>& points) const {
  std::vector<FieldSample> out(points.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(points.size()); ++i) {
    try {
      out[static_cast<size_t>(i)] = (*this)(points[static_cast<size_t>(i)]);
    } catch (...) {
#pragma omp critical(bor_eval_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

std::vector<FieldSample> eval_fields(const DebyeSolution& sol, const std::vector<Vec3>& points) {
  return FieldEvaluator(sol).evaluate(points);
}

namespace {

// Surface samples in 3D with Cartesian currents, for brute-force quadrature.
struct SurfaceSamples {
  std::vector<Vec3> y;
  std::vector<double> w;
  std::vector<CVec3> J, K;
  std::vector<cplx> rho, sigma;
};

SurfaceSamples surface_samples(const DebyeSolution& sol, int u, int ntheta) {
  const Discretization& disc = *sol.disc;
  const Grid& grid = disc.grid();
  const int M = sol.M;
  const int nu = grid.n * u;
  const double hu = grid.h / u;
  std::vector<CVec> up(static_cast<size_t>(6 * (2 * M + 1)));
  for (int m = -M; m <= M; ++m) {
    const size_t b = static_cast<size_t>(6 * (m + M));
    up[b + 0] = trig_upsample(sol.mode(m).rho, u);
    up[b + 1] = trig_upsample(sol.mode(m).sigma, u);
    up[b + 2] = trig_upsample(sol.current(m).J.tau, u);
    up[b + 3] = trig_upsample(sol.current(m).J.theta, u);
    up[b + 4] = trig_upsample(sol.current(m).K.tau, u);
    up[b + 5] = trig_upsample(sol.current(m).K.theta, u);
  }
  SurfaceSamples out;
  const size_t total = static_cast<size_t>(nu) * static_cast<size_t>(ntheta);
  out.y.reserve(total);
  for (int i = 0; i < nu; ++i) {
    const CurvePoint p = disc.curve().at(i * hu);
    for (int l = 0; l < ntheta; ++l) {
      const double th = kTwoPi * l / ntheta;
      const double c = std::cos(th), s = std::sin(th);
      std::array<cplx, 6> v{};
      for (int m = -M; m <= M; ++m) {
        const cplx e = std::exp(kI * (m * th));
        const size_t b = static_cast<size_t>(6 * (m + M));
        for (int q = 0; q < 6; ++q) v[q] += up[b + q][i] * e;
      }
      out.y.push_back({p.r * c, p.r * s, p.z});
      out.w.push_back(p.r * hu * kTwoPi / ntheta);
      out.rho.push_back(v[0]);
      out.sigma.push_back(v[1]);
      // τ̂ = (ṙ cos θ, ṙ sin θ, ż), θ̂ = (-sin θ, cos θ, 0)
      out.J.push_back({v[2] * p.dr * c - v[3] * s, v[2] * p.dr * s + v[3] * c, v[2] * p.dz});
      out.K.push_back({v[4] * p.dr * c - v[5] * s, v[4] * p.dr * s + v[5] * c, v[4] * p.dz});
    }
  }
  return out;
}

CVec3 cross(const CVec3& a, const CVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// E = ikA - ∇φ - ∇×Q, H = ikQ - ∇ψ + ∇×A summed over surface samples. `R` is subtracted
// from every distance in the phase and the result multiplied by R, which keeps large-R
// evaluation free of cancellation.
FieldSample direct_sum(const SurfaceSamples& S, cplx k, const Vec3& x, double R = 0.0) {
  FieldSample out;
  out.x = x;
  const double xx = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  for (size_t p = 0; p < S.y.size(); ++p) {
    const Vec3& y = S.y[p];
    const Vec3 d{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
    const double D = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    cplx G;
    if (R > 0) {
      const double yy = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
      const double xy = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
      const double t = (yy - 2.0 * xy) / xx;
      const double DmR = R * t / (1.0 + std::sqrt(1.0 + t));
      G = std::exp(kI * k * DmR) * R / (4.0 * kPi * D);
    } else {
      G = std::exp(kI * k * D) / (4.0 * kPi * D);
    }
    const cplx gp = S.w[p] * G * (kI * k - 1.0 / D) / D;
    const CVec3 grad{gp * d[0], gp * d[1], gp * d[2]};
    const cplx wg = S.w[p] * G;
    const CVec3 gK = cross(grad, S.K[p]), gJ = cross(grad, S.J[p]);
    for (int i = 0; i < 3; ++i) {
      out.E[i] += kI * k * wg * S.J[p][i] - grad[i] * S.rho[p] - gK[i];
      out.H[i] += kI * k * wg * S.K[p][i] - grad[i] * S.sigma[p] + gJ[i];
    }
  }
  return out;
}

}  // namespace

std::vector<FieldSample> eval_fields_direct(const DebyeSolution& sol, const std::vector<Vec3>& points,
                                            int upsample, int ntheta) {
  if (upsample < 1 || ntheta < 1) throw InputError("upsample and ntheta must be positive");
  const SurfaceSamples S = surface_samples(sol, upsample, ntheta);
  std::vector<FieldSample> out(points.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(points.size()); ++i)
    out[static_cast<size_t>(i)] = direct_sum(S, sol.k, points[static_cast<size_t>(i)]);
  return out;
}

namespace {

int far_ntheta(const DebyeSolution& sol) {
  const double rmax = sol.disc->curve().max_r();
  return std::max(64, fft::next_pow2(2L * (sol.M + static_cast<long>(std::ceil(std::abs(sol.k) * rmax)) + 24)));
}

FarFieldSample far_sample(const SurfaceSamples& S, const DebyeSolution& sol, double theta, double phi,
                          double E0) {
  const cplx k = sol.k;
  const double scale = std::max(sol.disc->curve().max_r(), 1.0);
  const double R = std::max(1e4 / std::abs(k), 1e3 * scale);
  const Vec3 dir{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  auto at = [&](double rr) { return direct_sum(S, k, {rr * dir[0], rr * dir[1], rr * dir[2]}, rr).E; };
  const CVec3 f1 = at(R), f2 = at(2 * R), f4 = at(4 * R);
  FarFieldSample out;
  out.theta = theta;
  out.phi = phi;
  double n2 = 0.0, d2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    out.F[i] = (8.0 * f4[i] - 6.0 * f2[i] + f1[i]) / 3.0;
    n2 += std::norm(out.F[i]);
    d2 += std::norm(out.F[i] - f4[i]);
  }
  out.sigma = 4.0 * kPi * n2 / (E0 * E0);
  out.richardson = n2 > 0 ? std::sqrt(d2 / n2) : std::sqrt(d2);
  return out;
}

void require_real_k(const DebyeSolution& sol) {
  if (!(sol.k.real() > 0) || sol.k.imag() != 0.0)
    throw InputError("far field requires real k > 0");
}

}  // namespace

RcsPattern far_field(const DebyeSolution& sol, const std::vector<std::array<double, 2>>& angles, double E0) {
  require_real_k(sol);
  const SurfaceSamples S = surface_samples(sol, 2, far_ntheta(sol));
  RcsPattern out;
  out.samples.resize(angles.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(angles.size()); ++i) {
    const auto& a = angles[static_cast<size_t>(i)];
    out.samples[static_cast<size_t>(i)] = far_sample(S, sol, a[0], a[1], E0);
  }
  return out;
}

RcsPattern far_field_grid(const DebyeSolution& sol, const std::vector<double>& theta,
                          const std::vector<double>& phi, double E0) {
  std::vector<std::array<double, 2>> angles;
  for (double t : theta)
    for (double p : phi) angles.push_back({t, p});
  return far_field(sol, angles, E0);
}

double scattering_cross_section(const DebyeSolution& sol, double E0, int n_phi) {
  require_real_k(sol);
  if (n_phi <= 0) n_phi = 2 * sol.M + 8;
  using Rule = boost::math::quadrature::gauss<double, 48>;
  std::vector<double> x, wx;
  for (size_t i = 0; i < Rule::abscissa().size(); ++i) {
    const double a = Rule::abscissa()[i], w = Rule::weights()[i];
    x.push_back(a);
    wx.push_back(w);
    if (a != 0.0) {
      x.push_back(-a);
      wx.push_back(w);
    }
  }
  const size_t nt = x.size();
  std::vector<std::array<double, 2>> angles;
  for (size_t i = 0; i < nt; ++i)
    for (int l = 0; l < n_phi; ++l) angles.push_back({std::acos(x[i]), kTwoPi * l / n_phi});
  RcsPattern pat = far_field(sol, angles, E0);
  double acc = 0.0;
  for (size_t i = 0; i < nt; ++i)
    for (int l = 0; l < n_phi; ++l)
      acc += wx[i] * (kTwoPi / n_phi) * pat.samples[i * static_cast<size_t>(n_phi) + static_cast<size_t>(l)].sigma;
  return acc / (4.0 * kPi);
}

double extinction_cross_section(const DebyeSolution& sol, const Vec3& direction, const CVec3& polarization) {
  require_real_k(sol);
  const double dn = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] + direction[2] * direction[2]);
  const double th = std::acos(std::clamp(direction[2] / dn, -1.0, 1.0));
  const double ph = std::atan2(direction[1], direction[0]);
  RcsPattern pat = far_field(sol, {{th, ph}});
  cplx pf = 0.0;
  double pp = 0.0;
  for (int i = 0; i < 3; ++i) {
    pf += std::conj(polarization[i]) * pat.samples[0].F[i];
    pp += std::norm(polarization[i]);
  }
  return 4.0 * kPi / sol.k.real() * pf.imag() / pp;
}

ResidualReport boundary_residual(const DebyeSolution& sol, const IncidentField& incident, int node_stride) {
  if (node_stride < 1) throw InputError("node_stride must be >= 1");
  const int M = sol.M;
  if (sol.etrace.size() != static_cast<size_t>(2 * M + 1))
    throw InputError("solution carries no boundary traces");
  const Grid& grid = sol.disc->grid();
  const int nth = 4 * M + 4;
  std::vector<int> nodes;
  for (int j = 0; j < grid.n; j += node_stride) nodes.push_back(j);

  std::vector<double> node_max(nodes.size()), node_l2(nodes.size()), node_in(nodes.size());
#pragma omp parallel for schedule(dynamic)
  for (long q = 0; q < static_cast<long>(nodes.size()); ++q) {
    const int j = nodes[static_cast<size_t>(q)];
    const CurvePoint& p = grid.nodes[static_cast<size_t>(j)];
    RingModes in = ring_modes(incident, p.r, p.z, M);
    std::vector<std::array<cplx, 2>> res(static_cast<size_t>(2 * M + 1));
    double l2 = 0.0, in2 = 0.0;
    for (int m = -M; m <= M; ++m) {
      const cplx it = p.dr * in(0, m) + p.dz * in(2, m), ih = in(1, m);
      const ModalTangentField& e = sol.etrace[static_cast<size_t>(m + M)];
      auto& o = res[static_cast<size_t>(m + M)];
      o = {e.tau[j] + it, e.theta[j] + ih};
      l2 += std::norm(o[0]) + std::norm(o[1]);
      in2 += std::norm(it) + std::norm(ih);
    }
    double mx = 0.0;
    for (int l = 0; l < nth; ++l) {
      const double th = kTwoPi * l / nth;
      cplx a = 0.0, b = 0.0;
      for (int m = -M; m <= M; ++m) {
        const cplx e = std::exp(kI * (m * th));
        a += res[static_cast<size_t>(m + M)][0] * e;
        b += res[static_cast<size_t>(m + M)][1] * e;
      }
      mx = std::max(mx, std::sqrt(std::norm(a) + std::norm(b)));
    }
    const double area = kTwoPi * p.r * grid.h * node_stride;
    node_max[static_cast<size_t>(q)] = mx;
    node_l2[static_cast<size_t>(q)] = area * l2;
    node_in[static_cast<size_t>(q)] = area * in2;
  }
  ResidualReport rep;
  double l2 = 0.0, in2 = 0.0;
  for (size_t q = 0; q < nodes.size(); ++q) {
    rep.max_abs = std::max(rep.max_abs, node_max[q]);
    l2 += node_l2[q];
    in2 += node_in[q];
  }
  rep.l2 = std::sqrt(l2);
  rep.incident_l2 = std::sqrt(in2);
  return rep;
}

}  // namespace bor
