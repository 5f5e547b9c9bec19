#pragma once

#include <vector>

namespace bor {

struct EllipticKE {
  double K = 0, E = 0;
};

// Complete elliptic integrals of modulus k (not parameter), 0 <= k < 1, by AGM.
EllipticKE elliptic_KE(double k);
// Same, from the complementary modulus k' = sqrt(1 - k^2) > 0; accurate as k -> 1.
EllipticKE elliptic_KE_complement(double kprime);

// Q_{m-1/2}(chi) for m = 0..M.
struct LegendreQHalfSequence {
  double chi = 0;
  std::vector<double> q;

  double operator[](int m) const { return q[static_cast<size_t>(m < 0 ? -m - 1 : m)]; }
  int size() const { return static_cast<int>(q.size()); }
};

// chi > 1 given through eta = chi - 1 to keep precision near the singularity.
LegendreQHalfSequence legendre_q_half_eta(double eta, int M);
LegendreQHalfSequence legendre_q_half(double chi, int M);

// Largest index reachable by plain forward recurrence in the table of stable caps; 0 when
// chi lies outside every tabulated bracket.
int forward_recurrence_cap(double eta);

// Runs the forward recurrence from the elliptic base cases until Q_{m+1/2} >= Q_{m-1/2}
// (monotonicity guard). Returns that m, or mmax if the guard never fires.
int forward_recurrence_breakdown(double eta, int mmax);

// Raw forward recurrence values Q_{m-1/2}, m = 0..M (no guard).
std::vector<double> legendre_q_half_forward(double eta, int M);

// Raw Miller backward recurrence, normalized by Q_{-1/2}.
std::vector<double> legendre_q_half_miller(double eta, int M);

// acosh(1 + eta) without cancellation.
double acosh1p(double eta);

}  // namespace bor
