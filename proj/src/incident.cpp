#include "bor/incident.hpp"

#include <cmath>
#include <sstream>

#include "bor/fft.hpp"

namespace bor {

namespace {

CVec3 cross(const CVec3& a, const CVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

CVec3 real3(const Vec3& v) { return {v[0], v[1], v[2]}; }

// Fields of a unit-free point source: with G = e^{ikR}/(4πR),
//   ∇G = x̂ G (ik - 1/R)
//   ∇×∇×(pG) = G[(k² + ik/R - 1/R²) p + (-k² - 3ik/R + 3/R²)(x̂·p) x̂]
void dipole_terms(cplx k, const Vec3& x, const Vec3& x0, const CVec3& p, CVec3& curl, CVec3& curlcurl) {
  const double dx = x[0] - x0[0], dy = x[1] - x0[1], dz = x[2] - x0[2];
  const double R = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (R == 0.0) throw InputError("field evaluated at the dipole location");
  const CVec3 xh{dx / R, dy / R, dz / R};
  const cplx G = std::exp(kI * k * R) / (4.0 * kPi * R);
  const cplx gp = G * (kI * k - 1.0 / R);
  const CVec3 grad{gp * xh[0], gp * xh[1], gp * xh[2]};
  curl = cross(grad, p);
  const cplx a = G * (k * k + kI * k / R - 1.0 / (R * R));
  const cplx b = G * (-k * k - 3.0 * kI * k / R + 3.0 / (R * R));
  const cplx xp = xh[0] * p[0] + xh[1] * p[1] + xh[2] * p[2];
  for (int i = 0; i < 3; ++i) curlcurl[i] = a * p[i] + b * xp * xh[i];
}

}  // namespace

IncidentField IncidentField::none(cplx k) {
  IncidentField f;
  f.k_ = k;
  return f;
}

IncidentField IncidentField::plane_wave(cplx k, Vec3 direction, CVec3 polarization) {
  const double n = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] +
                             direction[2] * direction[2]);
  if (!(n > 0)) throw InputError("plane-wave direction must be nonzero");
  for (double& v : direction) v /= n;
  cplx dp = 0.0;
  for (int i = 0; i < 3; ++i) dp += direction[i] * polarization[i];
  for (int i = 0; i < 3; ++i) polarization[i] -= dp * direction[i];
  double pn = 0.0;
  for (const cplx& v : polarization) pn += std::norm(v);
  if (!(pn > 0)) throw InputError("plane-wave polarization must not be parallel to the direction");
  IncidentField f;
  f.kind_ = Kind::PlaneWave;
  f.k_ = k;
  f.dir_ = direction;
  f.vec_ = polarization;
  return f;
}

IncidentField IncidentField::electric_dipole(cplx k, Vec3 position, CVec3 moment) {
  IncidentField f;
  f.kind_ = Kind::ElectricDipole;
  f.k_ = k;
  f.pos_ = position;
  f.vec_ = moment;
  return f;
}

IncidentField IncidentField::magnetic_dipole(cplx k, Vec3 position, CVec3 moment) {
  IncidentField f = electric_dipole(k, position, moment);
  f.kind_ = Kind::MagneticDipole;
  return f;
}

FieldSample IncidentField::evaluate(const Vec3& x) const {
  FieldSample s;
  s.x = x;
  switch (kind_) {
    case Kind::None:
      break;
    case Kind::PlaneWave: {
      const cplx ph = std::exp(kI * k_ * (dir_[0] * x[0] + dir_[1] * x[1] + dir_[2] * x[2]));
      const CVec3 h = cross(real3(dir_), vec_);
      for (int i = 0; i < 3; ++i) {
        s.E[i] = vec_[i] * ph;
        s.H[i] = h[i] * ph;
      }
      break;
    }
    case Kind::ElectricDipole: {
      CVec3 c, cc;
      dipole_terms(k_, x, pos_, vec_, c, cc);
      for (int i = 0; i < 3; ++i) {
        s.E[i] = cc[i];
        s.H[i] = -kI * k_ * c[i];
      }
      break;
    }
    case Kind::MagneticDipole: {
      CVec3 c, cc;
      dipole_terms(k_, x, pos_, vec_, c, cc);
      for (int i = 0; i < 3; ++i) {
        s.H[i] = cc[i];
        s.E[i] = kI * k_ * c[i];
      }
      break;
    }
  }
  return s;
}

std::string IncidentField::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::None: os << "none"; break;
    case Kind::PlaneWave: os << "plane-wave"; break;
    case Kind::ElectricDipole: os << "electric-dipole"; break;
    case Kind::MagneticDipole: os << "magnetic-dipole"; break;
  }
  return os.str();
}

}  // namespace bor

namespace bor {

RingModes ring_modes(const IncidentField& field, double r, double z, int M) {
  if (M < 0) throw InputError("M must be >= 0");
  const long base = 2L * (M + static_cast<long>(std::ceil(std::abs(field.k()) * r))) + 64;
  int nt = fft::next_pow2(base);
  std::array<std::vector<cplx>, 6> comp;
  for (;;) {
    for (auto& v : comp) v.assign(static_cast<size_t>(nt), 0.0);
    for (int l = 0; l < nt; ++l) {
      const double th = kTwoPi * l / nt;
      const double c = std::cos(th), s = std::sin(th);
      FieldSample f = field.evaluate({r * c, r * s, z});
      comp[0][l] = f.E[0] * c + f.E[1] * s;
      comp[1][l] = -f.E[0] * s + f.E[1] * c;
      comp[2][l] = f.E[2];
      comp[3][l] = f.H[0] * c + f.H[1] * s;
      comp[4][l] = -f.H[0] * s + f.H[1] * c;
      comp[5][l] = f.H[2];
    }
    for (auto& v : comp) {
      fft::forward(v);
      for (auto& x : v) x /= static_cast<double>(nt);
    }
    double total = 0.0, tail = 0.0;
    for (int q = 0; q < nt; ++q) {
      const int m = q <= nt / 2 ? q : q - nt;
      double e = 0.0;
      for (auto& v : comp) e += std::norm(v[q]);
      total += e;
      if (std::abs(m) > nt / 4) tail += e;
    }
    const bool resolved = tail <= 1e-30 * total && nt / 4 >= M + 8;
    if (resolved || nt >= (1 << 16)) break;
    nt *= 2;
  }
  RingModes out;
  out.M = M;
  out.ntheta = nt;
  for (int q = 0; q < nt; ++q) {
    const int m = q <= nt / 2 ? q : q - nt;
    double e = 0.0;
    for (auto& v : comp) e += std::norm(v[q]);
    out.energy += e;
    if (m != 0 && std::abs(m) >= M) out.top_energy += e;
  }
  for (int i = 0; i < 6; ++i) {
    out.c[i].resize(static_cast<size_t>(2 * M + 1));
    for (int m = -M; m <= M; ++m) out.c[i][static_cast<size_t>(m + M)] = comp[i][(m + nt) % nt];
  }
  return out;
}

FieldSample truncated_field(const IncidentField& field, const Vec3& x, int M) {
  const double r = std::hypot(x[0], x[1]);
  FieldSample out;
  out.x = x;
  if (r < 1e-14) {
    // On the axis only modes 0 and ±1 survive; the point value is already band-limited.
    FieldSample f = field.evaluate(x);
    if (M >= 1) return f;
    out.E = {0.0, 0.0, f.E[2]};
    out.H = {0.0, 0.0, f.H[2]};
    return out;
  }
  const double th = std::atan2(x[1], x[0]);
  RingModes rm = ring_modes(field, r, x[2], M);
  std::array<cplx, 6> v{};
  for (int m = -M; m <= M; ++m) {
    const cplx e = std::exp(kI * (m * th));
    for (int i = 0; i < 6; ++i) v[i] += rm(i, m) * e;
  }
  const double c = std::cos(th), s = std::sin(th);
  out.E = {v[0] * c - v[1] * s, v[0] * s + v[1] * c, v[2]};
  out.H = {v[3] * c - v[4] * s, v[3] * s + v[4] * c, v[5]};
  return out;
}

}  // namespace bor
