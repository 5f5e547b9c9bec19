#include "bor/modal_green.hpp"

#include <algorithm>
#include <cmath>

#include "bor/fft.hpp"
#include "bor/special.hpp"

namespace bor {

KernelGeometry KernelGeometry::make(double r, double z, double rp, double zp) {
  if (!(r > 0) || !(rp > 0)) throw InputError("modal kernels need r > 0 and r' > 0");
  KernelGeometry g;
  g.r = r;
  g.z = z;
  g.rp = rp;
  g.zp = zp;
  g.dz = z - zp;
  const double dr = r - rp;
  const double d2 = dr * dr + g.dz * g.dz;
  g.R0sq = r * r + rp * rp + g.dz * g.dz;
  g.R0 = std::sqrt(g.R0sq);
  g.alpha = 2.0 * r * rp / g.R0sq;
  g.one_minus_alpha = d2 / g.R0sq;
  g.eta = d2 / (2.0 * r * rp);
  g.chi = 1.0 + g.eta;
  return g;
}

namespace {

constexpr double kInv4Pi = 1.0 / (4.0 * kPi);

// sinc(w) = sin w / w
cplx sinc(cplx w) {
  if (std::abs(w) < 0.5) {
    const cplx w2 = w * w;
    cplx term = 1.0, sum = 1.0;
    for (int n = 1; n < 12; ++n) {
      term *= -w2 / static_cast<double>((2 * n) * (2 * n + 1));
      sum += term;
    }
    return sum;
  }
  return std::sin(w) / w;
}

// j1(w)/w = (sin w - w cos w)/w³
cplx j1_over_w(cplx w) {
  if (std::abs(w) < 1.0) {
    const cplx w2 = w * w;
    // Σ_{n>=1} (-1)^{n+1} 2n w^{2n-2}/(2n+1)!
    cplx pw = 1.0, sum = 0.0;
    double fact = 6.0;  // (2n+1)! at n = 1
    for (int n = 1; n < 16; ++n) {
      sum += ((n % 2) ? 1.0 : -1.0) * (2.0 * n) * pw / fact;
      pw *= w2;
      fact *= (2.0 * n + 2.0) * (2.0 * n + 3.0);
    }
    return sum;
  }
  return (std::sin(w) - w * std::cos(w)) / (w * w * w);
}

// sinc(w) - sinc(w/2)²/2
cplx eh(cplx w) {
  const cplx s2 = sinc(0.5 * w);
  return sinc(w) - 0.5 * s2 * s2;
}

int sample_count(double absk, int M, int base, int extra) {
  int L = base;
  if (absk > 1.0) L = std::max(L, 1 << (static_cast<int>(std::ceil(std::log2(absk))) + extra));
  L = std::max(L, fft::next_pow2(2L * M + 2) * 2);
  return L;
}

struct Workspace {
  std::vector<cplx> a[6];
  std::vector<double> u;
};

Workspace& workspace() {
  thread_local Workspace ws;
  return ws;
}

// Effective one-sided bandwidth of even mode data c (length L, already normalized).
int bandwidth(const std::vector<cplx>& c) {
  const int L = static_cast<int>(c.size());
  double mx = 0.0;
  for (int n = 0; n <= L / 2; ++n) mx = std::max(mx, std::abs(c[n]));
  if (mx == 0.0) return 0;
  int nb = L / 2 - 1;
  while (nb > 0 && std::abs(c[nb]) <= 1e-18 * mx) --nb;
  return nb;
}

// out[m] = Σ_n c_n q_{|m-n|}, m = 0..Mo, using evenness of c.
void convolve_even(const std::vector<cplx>& c, int nb, const std::vector<double>& q, int Mo,
                   std::vector<cplx>& out) {
  out.assign(static_cast<size_t>(Mo) + 1, 0.0);
  for (int m = 0; m <= Mo; ++m) {
    cplx acc = c[0] * q[m];
    for (int n = 1; n <= nb; ++n) acc += c[n] * (q[std::abs(m - n)] + q[m + n]);
    out[m] = acc;
  }
}

void fft_normalized(std::vector<cplx>& v) {
  fft::forward(v);
  const double s = 1.0 / static_cast<double>(v.size());
  for (auto& x : v) x *= s;
}

// q_m = modes of u^{-1/2}, p_m = modes of u^{-3/2}, for m = 0..n.
void singular_modes(const KernelGeometry& geom, int n, bool need_p, std::vector<double>& q,
                    std::vector<double>& p) {
  const int extra = need_p ? 1 : 0;
  LegendreQHalfSequence Q = legendre_q_half_eta(geom.eta, n + extra);
  const double chi = geom.chi;
  const double cq = std::sqrt(2.0 * chi) / kPi;
  q.resize(static_cast<size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) q[m] = cq * Q.q[m];
  if (!need_p) return;
  p.resize(static_cast<size_t>(n) + 1);
  const double denom = geom.eta * (2.0 + geom.eta);
  for (int m = 0; m <= n; ++m) {
    const double nu = m - 0.5;
    const double qprev = (m == 0) ? Q.q[1] : Q.q[m - 1];
    const double dq = nu * (chi * Q.q[m] - qprev) / denom;
    p[m] = -2.0 * chi * cq * dq;
  }
}

void fill_gradients(const KernelGeometry& geom, const std::vector<cplx>& f, const std::vector<cplx>& fu,
                    int M, ModalKernelValues& out) {
  out.has_gradients = true;
  out.dr.resize(M + 1);
  out.dz.resize(M + 1);
  out.drp.resize(M + 1);
  out.dzp.resize(M + 1);
  const double dlr = geom.r * geom.r - geom.rp * geom.rp - geom.dz * geom.dz;
  const double dlrp = geom.rp * geom.rp - geom.r * geom.r - geom.dz * geom.dz;
  for (int m = 0; m <= M; ++m) {
    out.dz[m] = geom.dz * f[m];
    out.dzp[m] = -out.dz[m];
    out.dr[m] = (dlr * f[m] + geom.R0sq * fu[m]) / (2.0 * geom.r);
    out.drp[m] = (dlrp * f[m] + geom.R0sq * fu[m]) / (2.0 * geom.rp);
  }
}

void direct(const KernelGeometry& geom, cplx k, int M, bool grad, ModalKernelValues& out) {
  const double absk = std::abs(k) * geom.R0;
  const int L = sample_count(absk, M, 1024, 2);
  Workspace& ws = workspace();
  auto& G = ws.a[0];
  auto& F = ws.a[1];
  auto& FU = ws.a[2];
  G.resize(L);
  if (grad) {
    F.resize(L);
    FU.resize(L);
  }
  const double om = geom.one_minus_alpha, al = geom.alpha;
  for (int j = 0; j < L; ++j) {
    const double sh = std::sin(kPi * j / L);
    const double u = om + 2.0 * al * sh * sh;
    const double D = geom.R0 * std::sqrt(u);
    const cplx e = std::exp(kI * k * D);
    G[j] = e * (kInv4Pi / D);
    if (grad) {
      F[j] = (kI * k * D - 1.0) * e * (kInv4Pi / (D * D * D));
      FU[j] = F[j] * u;
    }
  }
  fft_normalized(G);
  out.g.assign(G.begin(), G.begin() + M + 1);
  if (grad) {
    fft_normalized(F);
    fft_normalized(FU);
    fill_gradients(geom, F, FU, M, out);
  }
}

void split(const KernelGeometry& geom, cplx k, int M, bool grad, ModalKernelValues& out) {
  const double R0 = geom.R0;
  const cplx kappa = k * R0;
  const int L = sample_count(std::abs(kappa), M, 512, 3);
  Workspace& ws = workspace();
  auto& C = ws.a[0];   // cos w
  auto& S = ws.a[1];   // sinc w
  auto& J = ws.a[2];   // j1(w)/w
  auto& E = ws.a[3];   // eh(w)
  auto& UJ = ws.a[4];
  auto& UE = ws.a[5];
  C.resize(L);
  S.resize(L);
  if (grad) {
    J.resize(L);
    E.resize(L);
    UJ.resize(L);
    UE.resize(L);
  }
  const double om = geom.one_minus_alpha, al = geom.alpha;
  for (int j = 0; j < L; ++j) {
    const double sh = std::sin(kPi * j / L);
    const double u = om + 2.0 * al * sh * sh;
    const cplx w = kappa * std::sqrt(u);
    C[j] = std::cos(w);
    S[j] = sinc(w);
    if (grad) {
      J[j] = j1_over_w(w);
      E[j] = eh(w);
      UJ[j] = u * J[j];
      UE[j] = u * E[j];
    }
  }
  fft_normalized(C);
  fft_normalized(S);
  int nb = bandwidth(C);
  if (grad) {
    fft_normalized(J);
    fft_normalized(E);
    fft_normalized(UJ);
    fft_normalized(UE);
    nb = std::max({nb, bandwidth(E), bandwidth(UE)});
  }
  std::vector<double> q, p;
  singular_modes(geom, M + nb, grad, q, p);

  std::vector<cplx> conv;
  convolve_even(C, nb, q, M, conv);
  out.g.resize(M + 1);
  const double cg = kInv4Pi / R0;
  for (int m = 0; m <= M; ++m) out.g[m] = cg * (conv[m] + kI * kappa * S[m]);
  if (!grad) return;

  const double cf = kInv4Pi / (R0 * R0 * R0);
  const cplx k2 = kappa * kappa, k3 = k2 * kappa;
  std::vector<cplx> f(M + 1), fu(M + 1), ce, cue;
  convolve_even(E, nb, q, M, ce);
  convolve_even(UE, nb, q, M, cue);
  for (int m = 0; m <= M; ++m) {
    f[m] = cf * (-kI * k3 * J[m] - k2 * ce[m] - p[m]);
    fu[m] = cf * (-kI * k3 * UJ[m] - k2 * cue[m] - q[m]);
  }
  fill_gradients(geom, f, fu, M, out);
}

void check_inputs(const KernelGeometry& geom, cplx k, int M) {
  if (M < 0) throw InputError("negative mode count");
  if (k.imag() < 0) throw InputError("wavenumber must have Im k >= 0");
  if (!(geom.eta > 0.0)) throw SolverError("modal kernel evaluated at coincident points");
}

}  // namespace

ModalKernelValues modal_green(const KernelGeometry& geom, cplx k, int M, bool gradients,
                              GreenRegime regime) {
  check_inputs(geom, k, M);
  ModalKernelValues out;
  out.M = M;
  bool use_split = geom.alpha >= kAlphaSplit;
  if (regime == GreenRegime::Direct) use_split = false;
  if (regime == GreenRegime::Split) use_split = true;
  if (use_split) split(geom, k, M, gradients, out);
  else direct(geom, k, M, gradients, out);
  return out;
}

ModalKernelValues modal_green(const KernelGeometry& geom, cplx k, int M, bool gradients) {
  return modal_green(geom, k, M, gradients, GreenRegime::Automatic);
}

std::vector<double> static_green_modes(const KernelGeometry& geom, int M) {
  LegendreQHalfSequence Q = legendre_q_half_eta(geom.eta, M);
  std::vector<double> out(static_cast<size_t>(M) + 1);
  const double c = 1.0 / (4.0 * kPi * kPi * std::sqrt(geom.r * geom.rp));
  for (int m = 0; m <= M; ++m) out[m] = c * Q.q[m];
  return out;
}

ModulatedKernels modulated_kernels(const std::vector<cplx>& g, int M) {
  if (static_cast<int>(g.size()) < M + 2) throw InputError("modulated kernels need modes up to M+1");
  ModulatedKernels out;
  out.M = M;
  out.c.resize(M + 1);
  out.s.resize(M + 1);
  for (int m = 0; m <= M; ++m) {
    const cplx gm1 = g[static_cast<size_t>(std::abs(m - 1))];
    const cplx gp1 = g[static_cast<size_t>(m + 1)];
    out.c[m] = 0.5 * (gm1 + gp1);
    out.s[m] = (gm1 - gp1) / (2.0 * kI);
  }
  out.s[0] = 0.0;
  return out;
}

ModulatedKernels modulated_kernels(const ModalKernelValues& values, int M) {
  return modulated_kernels(values.g, M);
}

namespace {

void difference_split(const KernelGeometry& geom, cplx k, int M, bool grad, ModalKernelValues& out) {
  const double R0 = geom.R0;
  const cplx kappa = k * R0;
  const int L = sample_count(std::abs(kappa), M, 512, 3);
  Workspace& ws = workspace();
  auto& S = ws.a[0];   // sinc w
  auto& US = ws.a[1];  // u sinc²(w/2)
  auto& J = ws.a[2];
  auto& E = ws.a[3];
  auto& UJ = ws.a[4];
  auto& UE = ws.a[5];
  S.resize(L);
  US.resize(L);
  if (grad) {
    J.resize(L);
    E.resize(L);
    UJ.resize(L);
    UE.resize(L);
  }
  const double om = geom.one_minus_alpha, al = geom.alpha;
  for (int j = 0; j < L; ++j) {
    const double sh = std::sin(kPi * j / L);
    const double u = om + 2.0 * al * sh * sh;
    const cplx w = kappa * std::sqrt(u);
    const cplx s2 = sinc(0.5 * w);
    S[j] = sinc(w);
    US[j] = u * s2 * s2;
    if (grad) {
      J[j] = j1_over_w(w);
      E[j] = S[j] - 0.5 * s2 * s2;
      UJ[j] = u * J[j];
      UE[j] = u * E[j];
    }
  }
  fft_normalized(S);
  fft_normalized(US);
  int nb = bandwidth(US);
  if (grad) {
    fft_normalized(J);
    fft_normalized(E);
    fft_normalized(UJ);
    fft_normalized(UE);
    nb = std::max({nb, bandwidth(E), bandwidth(UE)});
  }
  std::vector<double> q, p;
  singular_modes(geom, M + nb, false, q, p);
  std::vector<cplx> cs;
  convolve_even(US, nb, q, M, cs);
  out.g.resize(M + 1);
  for (int m = 0; m <= M; ++m) out.g[m] = kInv4Pi * (kI * S[m] - 0.5 * kappa * cs[m]);
  if (!grad) return;
  std::vector<cplx> ce, cue, f(M + 1), fu(M + 1);
  convolve_even(E, nb, q, M, ce);
  convolve_even(UE, nb, q, M, cue);
  const cplx a = -k * (kInv4Pi / R0);
  const cplx b = -kI * k * k * kInv4Pi;
  for (int m = 0; m <= M; ++m) {
    f[m] = a * ce[m] + b * J[m];
    fu[m] = a * cue[m] + b * UJ[m];
  }
  fill_gradients(geom, f, fu, M, out);
}

}  // namespace

ModalKernelValues difference_kernel(const KernelGeometry& geom, cplx k, int M, bool gradients,
                                    DifferenceMethod method) {
  check_inputs(geom, k, M);
  if (method == DifferenceMethod::Subtract) {
    if (std::abs(k * geom.R0) < kKappaSwitch)
      throw InputError("direct subtraction is reserved for |k R0| >= the switch value");
    ModalKernelValues a = modal_green(geom, k, M, gradients);
    ModalKernelValues b = modal_green(geom, 0.0, M, gradients);
    const cplx inv = 1.0 / k;
    for (int m = 0; m <= M; ++m) {
      a.g[m] = (a.g[m] - b.g[m]) * inv;
      if (gradients) {
        a.dr[m] = (a.dr[m] - b.dr[m]) * inv;
        a.dz[m] = (a.dz[m] - b.dz[m]) * inv;
        a.drp[m] = (a.drp[m] - b.drp[m]) * inv;
        a.dzp[m] = (a.dzp[m] - b.dzp[m]) * inv;
      }
    }
    return a;
  }
  ModalKernelValues out;
  out.M = M;
  difference_split(geom, k, M, gradients, out);
  return out;
}

}  // namespace bor
