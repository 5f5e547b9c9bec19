// Extended-precision reference quadratures shared by the unit and acceptance tests.
#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using ld = long double;
using lcplx = std::complex<long double>;

inline constexpr ld kPiL = 3.141592653589793238462643383279502884L;

// Panel breakpoints on [0, π] graded geometrically toward φ = 0 at scale delta, with panel
// widths capped at hmax.
inline std::vector<ld> graded_breaks(ld delta, ld hmax) {
  std::vector<ld> b{0.0L};
  ld x = std::min(delta, hmax);
  if (delta < kPiL) {
    b.push_back(x);
    while (x < kPiL) {
      ld w = std::min(x, hmax);  // width grows with distance from the singular point
      x = std::min(kPiL, x + w);
      b.push_back(x);
    }
  } else {
    while (x < kPiL) {
      x = std::min(kPiL, x + hmax);
      b.push_back(x);
    }
    if (b.back() < kPiL) b.push_back(kPiL);
  }
  return b;
}

// Modes of the full-angle integrand, using evenness in φ:
//   even: (1/π)∫_0^π f(φ) cos(mφ) dφ
//   odd-modulated (f sinφ): -(i/π)∫_0^π f(φ) sinφ sin(mφ) dφ
struct ModeOracle {
  std::vector<lcplx> g, dr, dz, drp, c, s;
};

// G = e^{ikD}/(4πD) modes 0..M with gradients and cos/sin modulated modes (0..M).
inline ModeOracle modal_green(ld r, ld z, ld rp, ld zp, std::complex<double> kd, int M) {
  const lcplx k(kd.real(), kd.imag());
  const ld dz = z - zp;
  const ld R0sq = r * r + rp * rp + dz * dz;
  const ld alpha = 2 * r * rp / R0sq;
  const ld oma = ((r - rp) * (r - rp) + dz * dz) / R0sq;
  const ld delta = std::sqrt(2 * oma / alpha);
  const ld kap = std::abs(k) * std::sqrt(R0sq);
  const ld hmax = std::min<ld>(0.2L, 6.0L / (M + kap + 1));
  std::vector<ld> br = graded_breaks(delta, hmax);

  ModeOracle o;
  o.g.assign(M + 1, 0);
  o.dr.assign(M + 1, 0);
  o.dz.assign(M + 1, 0);
  o.drp.assign(M + 1, 0);
  o.c.assign(M + 1, 0);
  o.s.assign(M + 1, 0);
  using Rule = boost::math::quadrature::gauss<ld, 30>;
  const auto& xs = Rule::abscissa();
  const auto& ws = Rule::weights();
  std::vector<std::pair<ld, ld>> nodes;
  for (size_t p = 0; p + 1 < br.size(); ++p) {
    const ld a = br[p], b = br[p + 1];
    const ld hm = (b - a) / 2, c0 = (a + b) / 2;
    for (size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] == 0) {
        nodes.push_back({c0, hm * ws[i]});
      } else {
        nodes.push_back({c0 - hm * xs[i], hm * ws[i]});
        nodes.push_back({c0 + hm * xs[i], hm * ws[i]});
      }
    }
  }
  const lcplx I(0, 1);
  for (auto [phi, w] : nodes) {
    const ld sh = std::sin(phi / 2);
    const ld u = oma + 2 * alpha * sh * sh;
    const ld D = std::sqrt(R0sq * u);
    const ld cph = 1 - 2 * sh * sh;
    const ld sph = std::sin(phi);
    const lcplx e = std::exp(I * k * D);
    const lcplx G = e / (4 * kPiL * D);
    const lcplx F = (I * k * D - 1.0L) * e / (4 * kPiL * D * D * D);
    const lcplx gr = F * (r - rp * cph);
    const lcplx gz = F * dz;
    const lcplx grp = F * (rp - r * cph);
    // cos(mφ), sin(mφ) by recurrence
    ld cm = 1, sm = 0;
    for (int m = 0; m <= M; ++m) {
      const ld wc = w * cm / kPiL;
      o.g[m] += wc * G;
      o.dr[m] += wc * gr;
      o.dz[m] += wc * gz;
      o.drp[m] += wc * grp;
      o.c[m] += wc * G * cph;
      o.s[m] += -I * (w * sm / kPiL) * G * sph;
      const ld cn = cm * cph - sm * sph;
      sm = sm * cph + cm * sph;
      cm = cn;
    }
  }
  return o;
}

// Q_{m-1/2}(1 + eta), m = 0..M, in long double: backward recurrence in χ form from far above M,
// normalized by Q_{-1/2} = λK(λ) with K from an AGM on the complementary modulus. Pass an eta
// for which 1 + eta is exact in long double.
inline std::vector<ld> legendre_q_half(ld eta, int M) {
  const ld chi = 1 + eta;
  const ld xi = std::log1p(eta + std::sqrt(eta * (2 + eta)));
  const int start = M + 60 + static_cast<int>(std::ceil(40 / xi));
  ld a = 1, b = std::sqrt(eta / (2 + eta));
  for (int i = 0; i < 80 && std::abs(a - b) > 1e-19L * a; ++i) {
    const ld an = (a + b) / 2;
    b = std::sqrt(a * b);
    a = an;
  }
  const ld q0 = std::sqrt(2 / (2 + eta)) * kPiL / (2 * a);
  std::vector<ld> q(static_cast<size_t>(M) + 1);
  ld up = 0, cur = 1e-300L;  // Q_{m+1/2}, Q_{m-1/2} at m = start
  for (int m = start; m >= 1; --m) {
    const ld down = (2 * m * chi * cur - (m + 0.5L) * up) / (m - 0.5L);
    up = cur;
    cur = down;
    if (m - 1 <= M) q[m - 1] = cur;
    if (std::abs(cur) > 1e300L) {  // rescale
      for (int i = m - 1; i <= M; ++i) q[i] *= 1e-300L;
      up *= 1e-300L;
      cur *= 1e-300L;
    }
  }
  const ld scale = q0 / q[0];
  for (auto& v : q) v *= scale;
  return q;
}

}  // namespace oracle
