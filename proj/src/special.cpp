#include "bor/special.hpp"

#include <cmath>
#include <numbers>

#include "bor/types.hpp"

namespace bor {

EllipticKE elliptic_KE_complement(double kprime) {
  if (!(kprime > 0.0) || kprime > 1.0) throw InputError("elliptic modulus must lie in [0, 1)");
  double a = 1.0, b = kprime;
  double c = std::sqrt((1.0 - kprime) * (1.0 + kprime));
  double sum = 0.5 * c * c;
  double pow2 = 0.5;
  for (int it = 0; it < 64; ++it) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.25 * c * c / an;  // (a - b)/2 without cancellation
    pow2 *= 2.0;
    sum += pow2 * c * c;
    a = an;
    b = bn;
    if (std::abs(a - b) <= 1e-16 * a && c * c * pow2 <= 1e-17 * sum) break;
  }
  EllipticKE r;
  r.K = std::numbers::pi / (2.0 * a);
  r.E = r.K * (1.0 - sum);
  return r;
}

EllipticKE elliptic_KE(double k) {
  if (!(k >= 0.0) || k >= 1.0) throw InputError("elliptic modulus must lie in [0, 1)");
  return elliptic_KE_complement(std::sqrt((1.0 - k) * (1.0 + k)));
}

double acosh1p(double eta) { return std::log1p(eta + std::sqrt(eta * (2.0 + eta))); }

namespace {

struct Base {
  double q0, q1;
};

// Q_{-1/2} and Q_{1/2}. Q_{1/2} cancels against Q_{-1/2} as χ -> 1 and its error feeds every
// forward step, so the AGM runs in long double here.
Base base_cases(double eta) {
  using ld = long double;
  const ld e = eta;
  const ld kp = std::sqrt(e / (2 + e));
  ld a = 1, b = kp, c = std::sqrt((1 - kp) * (1 + kp));
  ld sum = c * c / 2, pow2 = 0.5L;
  for (int it = 0; it < 64; ++it) {
    const ld an = (a + b) / 2;
    const ld bn = std::sqrt(a * b);
    c = c * c / (4 * an);
    pow2 *= 2;
    sum += pow2 * c * c;
    a = an;
    b = bn;
    if (std::abs(a - b) <= 1e-19L * a && c * c * pow2 <= 1e-20L * sum) break;
  }
  const ld K = std::numbers::pi_v<ld> / (2 * a);
  const ld E = K * (1 - sum);
  const ld lam = std::sqrt(2 / (2 + e));
  return {static_cast<double>(lam * K), static_cast<double>((1 + e) * lam * K - 2 * E / lam)};
}

struct Bracket {
  double eta_hi;
  int cap;
};
constexpr Bracket kCaps[] = {{5e-8, 12307}, {5e-7, 4380}, {5e-6, 1438}, {5e-5, 503}, {5e-4, 163}};

int miller_start(double eta, int M) {
  const double xi = acosh1p(eta);
  const double extra = std::max({50.0, std::ceil(1.5 * M), std::ceil(20.0 / xi)});
  return M + static_cast<int>(std::min(extra, 5.0e7));
}

// Fills q[m] for m > lo by Miller's algorithm on the ratios, with q[lo] already set. The
// recurrence is rewritten for d_m = 1 - Q_{m+1/2}/Q_{m-1/2} so that χ enters only through η.
void miller_fill(double eta, std::vector<double>& q, int lo) {
  const int M = static_cast<int>(q.size()) - 1;
  if (lo >= M) return;
  const int start = miller_start(eta, M);
  std::vector<double> dec(static_cast<size_t>(M), 0.0);
  double d = 1.0;
  for (int m = start; m > lo; --m) {
    const double a = 4.0 * m * eta + (2.0 * m + 1.0) * d;
    d = a / ((2.0 * m - 1.0) + a);
    if (m <= M) dec[m - 1] = d;
  }
  for (int m = lo + 1; m <= M; ++m) q[m] = q[m - 1] * (1.0 - dec[m - 1]);
}

}  // namespace

int forward_recurrence_cap(double eta) {
  for (const Bracket& b : kCaps)
    if (eta <= b.eta_hi) return b.cap;
  return 0;
}

std::vector<double> legendre_q_half_forward(double eta, int M) {
  std::vector<double> q(static_cast<size_t>(M) + 1);
  Base b = base_cases(eta);
  q[0] = b.q0;
  if (M >= 1) q[1] = b.q1;
  // Differences d_m = Q_{m-3/2} - Q_{m-1/2} obey
  // (2m+1) d_{m+1} = (2m-1) d_m - 4 m η Q_{m-1/2}.
  double d = b.q0 - b.q1;
  for (int m = 1; m < M; ++m) {
    d = ((2.0 * m - 1.0) * d - 4.0 * m * eta * q[m]) / (2.0 * m + 1.0);
    q[m + 1] = q[m] - d;
  }
  return q;
}

std::vector<double> legendre_q_half_miller(double eta, int M) {
  std::vector<double> q(static_cast<size_t>(M) + 1);
  q[0] = base_cases(eta).q0;
  miller_fill(eta, q, 0);
  return q;
}

int forward_recurrence_breakdown(double eta, int mmax) {
  Base b = base_cases(eta);
  const double chi = 1.0 + eta;
  double qm1 = b.q0, qm = b.q1;
  if (!(qm < qm1)) return 0;
  for (int m = 1; m < mmax; ++m) {
    const double qn = 2.0 * chi * (2.0 * m) / (2.0 * m + 1.0) * qm - (2.0 * m - 1.0) / (2.0 * m + 1.0) * qm1;
    if (!(qn < qm) || !(qn > 0.0)) return m;
    qm1 = qm;
    qm = qn;
  }
  return mmax;
}

LegendreQHalfSequence legendre_q_half_eta(double eta, int M) {
  if (!(eta > 0.0)) throw InputError("Legendre Q argument must exceed 1");
  if (M < 0) throw InputError("negative mode count");
  LegendreQHalfSequence out;
  out.chi = 1.0 + eta;
  std::vector<double>& q = out.q;
  q.assign(static_cast<size_t>(M) + 1, 0.0);

  const int cap = forward_recurrence_cap(eta);
  if (cap > 0) {
    const int upto = std::min(M, cap);
    std::vector<double> f = legendre_q_half_forward(eta, upto);
    for (int m = 0; m <= upto; ++m) q[m] = f[m];
    if (M > cap) miller_fill(eta, q, cap);
    return out;
  }
  q[0] = base_cases(eta).q0;
  miller_fill(eta, q, 0);
  return out;
}

LegendreQHalfSequence legendre_q_half(double chi, int M) {
  if (!(chi > 1.0)) throw InputError("Legendre Q argument must exceed 1");
  return legendre_q_half_eta(chi - 1.0, M);
}

}  // namespace bor
