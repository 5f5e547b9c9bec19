#include <doctest.h>

#include <random>

#include "bor/debye_operators.hpp"
#include "bor/geometry.hpp"
#include "bor/surface_calculus.hpp"

using namespace bor;

namespace {

// Random band-limited grid function with modes |q| <= band in s.
CVec band_limited(const Grid& g, int band, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  CVec f = CVec::Zero(g.n);
  for (int q = -band; q <= band; ++q) {
    cplx c(nd(rng), nd(rng));
    c /= 1.0 + q * q;
    for (int j = 0; j < g.n; ++j) f[j] += c * std::exp(kI * (kTwoPi * q * j / g.n));
  }
  return f;
}

CVec remove_mean(const CVec& f, const Grid& g) {
  RVec w = mean_weights(g);
  return f - CVec::Constant(g.n, w.cast<cplx>().dot(f) / w.sum());
}

}  // namespace

TEST_CASE("gradient of constants and of a single Fourier mode") {
  auto curve = GeneratingCurve::torus(2.0, 1.0);
  auto g = make_grid(curve, 41);
  auto z = surf_grad(CVec::Ones(41), 0, g);
  CHECK(z.tau.norm() < 1e-12);
  CHECK(z.theta.norm() == 0.0);

  CVec f(41);
  for (int j = 0; j < 41; ++j) f[j] = std::exp(kI * (kTwoPi * g.nodes[j].s / g.length));
  auto F = surf_grad(f, 3, g);
  for (int j = 0; j < 41; ++j) {
    CHECK(std::abs(F.tau[j] - kI * (kTwoPi / g.length) * f[j]) < 1e-12);
    CHECK(std::abs(F.theta[j] - 3.0 * kI * f[j] / g.nodes[j].r) < 1e-12);
  }
}

TEST_CASE("div grad equals Laplacian and the divergence integrates to zero") {
  auto curve = GeneratingCurve::ellipse_torus(2.0, 1.0, 0.6);
  auto g = make_grid(curve, 61);
  for (int m : {0, 2, 7}) {
    CVec f = band_limited(g, 12, 5 + m);
    CVec a = surf_div(surf_grad(f, m, g), m, g), b = surf_laplacian(f, m, g);
    CHECK((a - b).norm() < 1e-11 * b.norm());
  }
  ModalTangentField F{band_limited(g, 10, 1), band_limited(g, 10, 2)};
  CVec d = surf_div(F, 0, g);
  CHECK(std::abs(mean_weights(g).cast<cplx>().dot(d)) < 1e-12 * d.norm());
  ModalTangentField T{CVec::Zero(61), CVec::Constant(61, 2.0)};
  CHECK(surf_div(T, 0, g).norm() == 0.0);
}

TEST_CASE("Laplacian of constants") {
  auto curve = GeneratingCurve::torus(2.0, 1.0);
  auto g = make_grid(curve, 41);
  CHECK(surf_laplacian(CVec::Ones(41), 0, g).norm() < 1e-12);
  CVec l = surf_laplacian(CVec::Ones(41), 4, g);
  for (int j = 0; j < 41; ++j) CHECK(std::abs(l[j] + 16.0 / (g.nodes[j].r * g.nodes[j].r)) < 1e-12);
}

TEST_CASE("Laplacian against a finite-difference oracle") {
  // f(s) = exp(sin(2πs/L)) on the circular torus: Δf = (1/r)(r f')' - m² f / r²
  auto curve = GeneratingCurve::torus(2.0, 1.0);
  auto g = make_grid(curve, 61);
  const double w = kTwoPi / g.length, h = 1e-4;
  auto fn = [&](double s) { return std::exp(std::sin(w * s)); };
  auto rf = [&](double s) { return curve.at(s).r; };
  CVec f(61);
  for (int j = 0; j < 61; ++j) f[j] = fn(g.nodes[j].s);
  const int m = 2;
  CVec lap = surf_laplacian(f, m, g);
  for (int j = 0; j < 61; j += 6) {
    double s = g.nodes[j].s;
    auto flux = [&](double t) { return rf(t) * (fn(t + h / 2) - fn(t - h / 2)) / h; };
    double ref = (flux(s + h / 2) - flux(s - h / 2)) / (h * rf(s)) - m * m * fn(s) / (rf(s) * rf(s));
    CHECK(std::abs(lap[j].real() - ref) < 1e-6);
  }
}

TEST_CASE("inverse Laplacian round trip and the dense oracle") {
  auto curve = GeneratingCurve::ellipse_torus(2.0, 1.0, 0.6);
  for (int n : {61, 121}) {
    auto g = make_grid(curve, n);
    for (int m : {0, 1, 5, 20}) {
      CVec gf = band_limited(g, n / 6, 11 * m + n);
      if (m == 0) gf = remove_mean(gf, g);
      CVec f = surf_laplacian(gf, m, g);
      auto inv = inv_surf_laplacian(f, m, g);
      CHECK((surf_laplacian(inv.alpha, m, g) - f).norm() < 1e-10 * f.norm());
      CHECK((inv.alpha - gf).norm() < 1e-10 * gf.norm());
      SpectralOps ops(g);
      CHECK((inv.dalpha - ops.D.cast<cplx>() * inv.alpha).norm() < 1e-10 * inv.dalpha.norm());
    }
  }
  auto g = make_grid(GeneratingCurve::torus(2.0, 1.0), 61);
  SpectralOps ops(g);
  CVec f(61);
  for (int j = 0; j < 61; ++j) f[j] = std::cos(3 * kTwoPi * j / 61.0);
  CVec dense = surf_laplacian_matrix(5, g, ops).cast<cplx>().partialPivLu().solve(f);
  CHECK((inv_surf_laplacian(f, 5, g).alpha - dense).norm() < 1e-10 * dense.norm());
}

TEST_CASE("m = 0 solvability") {
  auto g = make_grid(GeneratingCurve::torus(2.0, 1.0), 41);
  try {
    inv_surf_laplacian(CVec::Ones(41), 0, g);
    FAIL("constant RHS accepted");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()) == "non-mean-zero RHS");
  }
}

TEST_CASE("harmonic basis is divergence and curl free") {
  auto g = make_grid(GeneratingCurve::ellipse_torus(2.0, 1.0, 0.6), 61);
  auto hb = harmonic_basis(g);
  for (const auto& h : {hb.h1, hb.h2}) {
    CHECK(surf_div(h, 0, g).norm() < 1e-12);
    CHECK(surf_div(n_cross(h), 0, g).norm() < 1e-12);
  }
  for (int j = 0; j < 61; ++j) CHECK(hb.h2.theta[j] == -1.0 / g.nodes[j].r);
}

TEST_CASE("currents satisfy the consistency conditions") {
  auto g = make_grid(GeneratingCurve::ellipse_torus(2.0, 1.0, 0.6), 61);
  const cplx k(1.3, 0.1);
  {
    DebyeDensities d{0, CVec::Zero(61), CVec::Zero(61), 1.0, 0.0};
    auto c = build_currents(d, k, g);
    auto hb = harmonic_basis(g);
    CHECK((c.J.tau - hb.h1.tau).norm() == 0.0);
    CHECK((c.K.tau - n_cross(hb.h1).tau).norm() == 0.0);
    CHECK((c.K.theta - n_cross(hb.h1).theta).norm() == 0.0);
  }
  for (int m : {0, 1, 6}) {
    DebyeDensities d{m, band_limited(g, 15, m + 1), band_limited(g, 15, m + 2), 0.4, -0.2};
    if (m == 0) {
      d.rho = remove_mean(d.rho, g);
      d.sigma = remove_mean(d.sigma, g);
    }
    auto c = build_currents(d, k, g);
    CHECK((surf_div(c.J, m, g) - kI * k * d.rho).norm() < 1e-10 * d.rho.norm());
    CHECK((surf_div(c.K, m, g) - kI * k * d.sigma).norm() < 1e-10 * d.sigma.norm());
  }
}
