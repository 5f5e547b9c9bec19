#include "bor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>

#include "bor/fft.hpp"

namespace bor {

namespace {

// Real cosine/sine coefficients of equispaced samples on [0, 2π).
void real_coefficients(const std::vector<double>& x, std::vector<double>& c, std::vector<double>& s) {
  const int n = static_cast<int>(x.size());
  std::vector<cplx> buf(x.begin(), x.end());
  fft::forward(buf);
  const int kmax = n / 2;
  c.assign(kmax + 1, 0.0);
  s.assign(kmax + 1, 0.0);
  c[0] = buf[0].real() / n;
  for (int k = 1; k <= kmax; ++k) {
    if (2 * k == n) {
      c[k] = buf[k].real() / n;
    } else {
      c[k] = 2.0 * buf[k].real() / n;
      s[k] = -2.0 * buf[k].imag() / n;
    }
  }
}

void trim(std::vector<double>& c, std::vector<double>& s, double tol) {
  size_t n = c.size();
  while (n > 1 && std::abs(c[n - 1]) <= tol && std::abs(s[n - 1]) <= tol) --n;
  c.resize(n);
  s.resize(n);
}

}  // namespace

GeneratingCurve::GeneratingCurve(std::vector<double> rc, std::vector<double> rs,
                                 std::vector<double> zc, std::vector<double> zs)
    : rc_(std::move(rc)), rs_(std::move(rs)), zc_(std::move(zc)), zs_(std::move(zs)) {
  const size_t k = std::max({rc_.size(), rs_.size(), zc_.size(), zs_.size(), size_t{2}});
  rc_.resize(k, 0.0);
  rs_.resize(k, 0.0);
  zc_.resize(k, 0.0);
  zs_.resize(k, 0.0);
  rs_[0] = zs_[0] = 0.0;

  double area = 0.0;  // ∮ r dz
  for (size_t n = 1; n < k; ++n) area += kPi * n * (rc_[n] * zs_[n] - rs_[n] * zc_[n]);
  if (std::abs(area) == 0.0) throw InputError("degenerate generating curve (zero enclosed area)");
  if (area < 0) {
    for (size_t n = 0; n < k; ++n) {
      rs_[n] = -rs_[n];
      zs_[n] = -zs_[n];
    }
  }

  // Speed samples until its spectrum is resolved.
  int nf = fft::next_pow2(static_cast<long>(8 * k));
  nf = std::max(nf, 256);
  for (;; nf *= 2) {
    if (nf > (1 << 18)) throw InputError("generating curve is not smooth enough to resolve");
    std::vector<double> v(nf), rr(nf);
    double vmin = 1e300;
    for (int j = 0; j < nf; ++j) {
      Raw p = eval_raw(kTwoPi * j / nf);
      v[j] = std::hypot(p.rt, p.zt);
      rr[j] = p.r;
      vmin = std::min(vmin, v[j]);
    }
    std::vector<double> c, s;
    real_coefficients(v, c, s);
    const int kmax = nf / 2;
    double tail = 0.0;
    for (int q = kmax - nf / 8; q <= kmax; ++q) tail = std::max({tail, std::abs(c[q]), std::abs(s[q])});
    if (tail > 1e-14 * c[0]) continue;
    if (vmin <= 1e-12 * c[0]) throw InputError("generating curve has a stationary point");
    trim(c, s, 1e-18 * c[0]);
    v0_ = c[0];
    vc_ = c;
    vs_ = s;
    vc_[0] = vs_[0] = 0.0;
    length_ = kTwoPi * v0_;
    auto [lo, hi] = std::minmax_element(rr.begin(), rr.end());
    min_r_ = *lo;
    max_r_ = *hi;
    break;
  }
  if (min_r_ <= 0.0) throw InputError("generating curve must satisfy r > 0 everywhere");
}

GeneratingCurve GeneratingCurve::torus(double major_radius, double minor_radius) {
  return ellipse_torus(major_radius, minor_radius, minor_radius);
}

GeneratingCurve GeneratingCurve::ellipse_torus(double major_radius, double a, double b) {
  if (!(a > 0) || !(b > 0)) throw InputError("cross-section semi-axes must be positive");
  if (!(major_radius > a)) throw InputError("generating curve must satisfy r > 0 everywhere");
  return GeneratingCurve({major_radius, a}, {0.0, 0.0}, {0.0, 0.0}, {0.0, b});
}

GeneratingCurve GeneratingCurve::from_samples(const std::vector<double>& r_in,
                                              const std::vector<double>& z_in) {
  if (r_in.size() != z_in.size()) throw InputError("sample columns have different lengths");
  std::vector<double> r = r_in, z = z_in;
  if (r.size() >= 2) {
    double scale = 0.0;
    for (size_t j = 0; j < r.size(); ++j) scale = std::max({scale, std::abs(r[j]), std::abs(z[j])});
    if (std::hypot(r.back() - r.front(), z.back() - z.front()) <= 1e-12 * scale) {
      r.pop_back();
      z.pop_back();
    }
  }
  const size_t n = r.size();
  if (n < 16) throw InputError("at least 16 curve samples are required");
  for (double v : r)
    if (!(v > 0)) throw InputError("generating curve must satisfy r > 0 everywhere");
  double max_step = 0.0;
  for (size_t j = 0; j + 1 < n; ++j) max_step = std::max(max_step, std::hypot(r[j + 1] - r[j], z[j + 1] - z[j]));
  double closing = std::hypot(r.front() - r.back(), z.front() - z.back());
  if (closing > 3.0 * max_step) throw InputError("sampled generating curve is not closed");

  std::vector<double> rc, rs, zc, zs;
  real_coefficients(r, rc, rs);
  real_coefficients(z, zc, zs);
  if (n % 2 == 0) {
    // Split the Nyquist term evenly so the interpolant stays real and symmetric.
    rc.back() *= 0.5;
    zc.back() *= 0.5;
  }
  return GeneratingCurve(rc, rs, zc, zs);
}

GeneratingCurve GeneratingCurve::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open curve file: " + path);
  std::vector<double> r, z;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double t, rv, zv;
    if (!(ls >> t >> rv >> zv)) {
      if (r.empty()) continue;  // header
      throw InputError("malformed row in curve file: " + line);
    }
    r.push_back(rv);
    z.push_back(zv);
  }
  return from_samples(r, z);
}

GeneratingCurve::Raw GeneratingCurve::eval_raw(double t) const {
  Raw p{rc_[0], zc_[0], 0, 0, 0, 0};
  const cplx e1 = std::polar(1.0, t);
  cplx e = 1.0;
  for (size_t n = 1; n < rc_.size(); ++n) {
    e *= e1;
    const double c = e.real(), s = e.imag();
    const double dn = static_cast<double>(n);
    p.r += rc_[n] * c + rs_[n] * s;
    p.z += zc_[n] * c + zs_[n] * s;
    p.rt += dn * (-rc_[n] * s + rs_[n] * c);
    p.zt += dn * (-zc_[n] * s + zs_[n] * c);
    p.rtt -= dn * dn * (rc_[n] * c + rs_[n] * s);
    p.ztt -= dn * dn * (zc_[n] * c + zs_[n] * s);
  }
  return p;
}

double GeneratingCurve::arclength_of(double t) const {
  double acc = v0_ * t;
  const cplx e1 = std::polar(1.0, t);
  cplx e = 1.0;
  for (size_t n = 1; n < vc_.size(); ++n) {
    e *= e1;
    acc += (vc_[n] * e.imag() + vs_[n] * (1.0 - e.real())) / static_cast<double>(n);
  }
  return acc;
}

double GeneratingCurve::param_of(double s) const {
  double sm = std::fmod(s, length_);
  if (sm < 0) sm += length_;
  double lo = 0.0, hi = kTwoPi;
  double t = kTwoPi * sm / length_;
  for (int it = 0; it < 100; ++it) {
    const double f = arclength_of(t) - sm;
    if (std::abs(f) <= 1e-15 * length_) return t;
    if (f > 0) hi = t;
    else lo = t;
    Raw p = eval_raw(t);
    double tn = t - f / std::hypot(p.rt, p.zt);
    if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
    if (std::abs(tn - t) <= 1e-16 * kTwoPi) return tn;
    t = tn;
  }
  if (std::abs(arclength_of(t) - sm) > 1e-13 * length_)
    throw SolverError("arclength inversion did not converge");
  return t;
}

CurvePoint GeneratingCurve::at(double s) const {
  const double t = param_of(s);
  Raw p = eval_raw(t);
  const double v = std::hypot(p.rt, p.zt);
  const double vt = (p.rt * p.rtt + p.zt * p.ztt) / v;
  CurvePoint c;
  c.s = s;
  c.t = t;
  c.r = p.r;
  c.z = p.z;
  c.dr = p.rt / v;
  c.dz = p.zt / v;
  c.d2r = (p.rtt * v - p.rt * vt) / (v * v * v);
  c.d2z = (p.ztt * v - p.zt * vt) / (v * v * v);
  return c;
}

SurfaceFrame GeneratingCurve::frame_at(double s) const {
  CurvePoint c = at(s);
  return SurfaceFrame{c.r, c.z, c.dr, c.dz, c.dz, -c.dr};
}

std::size_t GeneratingCurve::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    h ^= std::hash<std::uint64_t>{}(bits) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (const auto* vec : {&rc_, &rs_, &zc_, &zs_})
    for (double v : *vec) mix(v);
  return h;
}

RVec Grid::r() const {
  RVec v(n);
  for (int j = 0; j < n; ++j) v[j] = nodes[j].r;
  return v;
}
RVec Grid::dr() const {
  RVec v(n);
  for (int j = 0; j < n; ++j) v[j] = nodes[j].dr;
  return v;
}
RVec Grid::dz() const {
  RVec v(n);
  for (int j = 0; j < n; ++j) v[j] = nodes[j].dz;
  return v;
}

Grid make_grid(const GeneratingCurve& curve, int n) {
  if (n < 3) throw InputError("N must be an odd integer >= 3");
  if (n % 2 == 0) throw InputError("N must be odd");
  Grid g;
  g.n = n;
  g.length = curve.length();
  g.h = g.length / n;
  g.nodes.reserve(n);
  for (int j = 0; j < n; ++j) g.nodes.push_back(curve.at(j * g.h));
  return g;
}

CycleSpec cycle_at_node(const Grid& grid, int node) {
  if (node < 0 || node >= grid.n) throw InputError("B-cycle node outside the grid");
  const CurvePoint& p = grid.nodes[node];
  return CycleSpec{p.s, p.r, p.z, node};
}

CycleSpec default_cycle(const Grid& grid) {
  int best = 0;
  for (int j = 1; j < grid.n; ++j)
    if (grid.nodes[j].r < grid.nodes[best].r) best = j;
  return cycle_at_node(grid, best);
}

}  // namespace bor
