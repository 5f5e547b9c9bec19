#include <doctest.h>

#include <cmath>
#include <random>

#include "bor/geometry.hpp"
#include "bor/types.hpp"

using namespace bor;

TEST_CASE("torus generating circle has length 2 pi and unit speed") {
  auto c = GeneratingCurve::torus(2.0, 1.0);
  CHECK(std::abs(c.length() - kTwoPi) < 1e-13);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, c.length());
  for (int i = 0; i < 100; ++i) {
    auto p = c.at(u(rng));
    CHECK(std::abs(p.dr * p.dr + p.dz * p.dz - 1.0) < 1e-12);
    CHECK(p.r > 0.0);
  }
}

TEST_CASE("ellipse length matches quadrature reference") {
  auto c = GeneratingCurve::ellipse_torus(2.0, 1.0, 0.5);
  CHECK(std::abs(c.length() - 4.844224110273838099214) < 1e-12);
}

TEST_CASE("curve is closed with matching derivatives") {
  auto c = GeneratingCurve::ellipse_torus(3.0, 1.0, 0.5);
  auto a = c.at(0.0), b = c.at(c.length());
  CHECK(std::abs(a.r - b.r) < 1e-12);
  CHECK(std::abs(a.z - b.z) < 1e-12);
  CHECK(std::abs(a.dr - b.dr) < 1e-12);
  CHECK(std::abs(a.d2z - b.d2z) < 1e-11);
}

TEST_CASE("frame orthonormal with n = (dz, 0, -dr)") {
  auto c = GeneratingCurve::ellipse_torus(2.0, 1.0, 0.5);
  for (int i = 0; i < 20; ++i) {
    double s = c.length() * i / 20.0;
    auto f = c.frame_at(s);
    auto p = c.at(s);
    CHECK(std::abs(f.tau_r * f.n_r + f.tau_z * f.n_z) < 1e-14);
    CHECK(std::abs(std::hypot(f.n_r, f.n_z) - 1.0) < 1e-14);
    CHECK(f.n_r == doctest::Approx(p.dz).epsilon(1e-15));
    CHECK(f.n_z == doctest::Approx(-p.dr).epsilon(1e-15));
  }
}

TEST_CASE("frame at top of torus circle: n points up") {
  // CCW circle: at its top point the tangent runs toward the axis, n = +z (outward).
  auto c = GeneratingCurve::torus(2.0, 1.0);
  auto p = c.at(c.length() / 4);
  auto f = c.frame_at(c.length() / 4);
  CHECK(std::abs(p.z - 1.0) < 1e-12);
  CHECK(std::abs(f.n_z - 1.0) < 1e-12);
}

TEST_CASE("ellipse frame against analytic differentiation") {
  // r = 2 + cos t, z = 0.5 sin t; find t at s = L/3 by bisection on arclength.
  auto c = GeneratingCurve::ellipse_torus(2.0, 1.0, 0.5);
  auto p = c.at(c.length() / 3);
  double t = std::atan2(p.z / 0.5, p.r - 2.0);
  double rt = -std::sin(t), zt = 0.5 * std::cos(t), sp = std::hypot(rt, zt);
  CHECK(std::abs(p.dr - rt / sp) < 1e-12);
  CHECK(std::abs(p.dz - zt / sp) < 1e-12);
  double rtt = -std::cos(t), ztt = -0.5 * std::sin(t);
  // d²/ds² = (γ'' - (γ''·τ) τ) / |γ'|²
  double dot = (rtt * rt + ztt * zt) / sp;
  CHECK(std::abs(p.d2r - (rtt - dot * rt / sp) / (sp * sp)) < 1e-11);
  CHECK(std::abs(p.d2z - (ztt - dot * zt / sp) / (sp * sp)) < 1e-11);
}

TEST_CASE("clockwise input is reoriented") {
  GeneratingCurve ccw({2.0, 1.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 1.0});
  GeneratingCurve cw({2.0, 1.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, -1.0});
  for (double s : {0.3, 1.7, 4.0}) {
    auto f = cw.frame_at(s);
    // outward normal of the circle centred at (2, 0)
    CHECK(std::abs(f.n_r * (f.r - 2.0) + f.n_z * f.z - 1.0) < 1e-12);
  }
  CHECK(std::abs(ccw.length() - cw.length()) < 1e-13);
}

TEST_CASE("sampled curve reproduces the analytic one") {
  std::vector<double> r, z;
  for (int i = 0; i < 32; ++i) {
    double t = kTwoPi * i / 32;
    r.push_back(2.0 + std::cos(t));
    z.push_back(0.5 * std::sin(t));
  }
  auto c = GeneratingCurve::from_samples(r, z);
  CHECK(std::abs(c.length() - 4.844224110273838099214) < 1e-12);
  CHECK_THROWS_AS(GeneratingCurve::from_samples({2, 2, 2}, {0, 1, 2}), InputError);
}

TEST_CASE("curve touching the axis is rejected") {
  CHECK_THROWS_AS(GeneratingCurve::torus(1.0, 1.0), InputError);
}

TEST_CASE("grid") {
  auto c = GeneratingCurve::torus(2.0, 1.0);
  auto g = make_grid(c, 5);
  REQUIRE(g.n == 5);
  for (int j = 0; j < 5; ++j) CHECK(std::abs(g.nodes[j].s - kTwoPi * j / 5) < 1e-14);
  try {
    make_grid(c, 4);
    FAIL("even N accepted");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("N must be odd") != std::string::npos);
  }
  auto g2 = make_grid(c, 129);
  for (auto& p : g2.nodes) CHECK(p.r > 0.0);
}

TEST_CASE("default B-cycle sits at minimum r") {
  auto c = GeneratingCurve::torus(2.0, 1.0);
  auto g = make_grid(c, 61);
  auto cyc = default_cycle(g);
  CHECK(std::abs(cyc.r_b - 1.0) < 2e-3);  // nearest node to the inner equator
  CHECK(cyc.r_b == g.nodes[cyc.node].r);
}
