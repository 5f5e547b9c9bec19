#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "bor/debye_operators.hpp"
#include "bor/geometry.hpp"
#include "bor/kernel_table.hpp"
#include "bor/quadrature.hpp"

using namespace bor;

TEST_CASE("smooth periodic integrand") {
  auto rule = alpert_rule(41, 16);
  double v = alpert_integrate(rule, kTwoPi, 41, 0, [](double s) { return std::exp(std::sin(s)); });
  CHECK(std::abs(v - 7.954926521012845274513) < 1e-14 * 7.95);
}

TEST_CASE("log-singular integrand converges at high order") {
  const double ref = -4.028558357937184455347;
  auto f = [](double s) {
    return std::log(std::abs(2 * std::sin(s / 2))) * std::exp(std::cos(s));
  };
  for (int order : {2, 6, 10}) {
    double e1 = std::abs(alpert_integrate(alpert_rule(15, order), kTwoPi, 15, 0, f) - ref);
    double e2 = std::abs(alpert_integrate(alpert_rule(29, order), kTwoPi, 29, 0, f) - ref);
    INFO("order " << order << " errors " << e1 << " " << e2);
    CHECK(e1 / e2 > 0.25 * std::pow(29.0 / 15.0, order));
  }
  // order 16 reaches roundoff by N = 41 and stays there
  for (int n : {41, 81}) CHECK(std::abs(alpert_integrate(alpert_rule(n, 16), kTwoPi, n, 0, f) - ref) < 1e-13);
}

TEST_CASE("rule preconditions") {
  try {
    alpert_rule(41, 3);
    FAIL("order 3 accepted");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("unsupported order") != std::string::npos);
  }
  CHECK_THROWS_AS(alpert_rule(15, 16), InputError);
  CHECK_THROWS_AS(alpert_rule(40, 6), InputError);
}

TEST_CASE("trigonometric interpolation reproduces band-limited data") {
  const int n = 21;
  auto w = trig_interp_weights(n, 0.37);
  double acc = 0;
  for (int l = 0; l < n; ++l) acc += w[l] * std::cos(3 * kTwoPi * l / n + 0.2);
  CHECK(std::abs(acc - std::cos(3 * kTwoPi * 0.37 / n + 0.2)) < 1e-14);
}

namespace {

double agm(double a, double b) {
  for (int i = 0; i < 60 && std::abs(a - b) > 1e-16 * a; ++i) {
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return a;
}

// Static m = 0 kernel λK(λ)/(4π²√(rr')) with K from the complementary modulus.
double g0_static(const CurvePoint& x, const CurvePoint& y) {
  const double eta = ((x.r - y.r) * (x.r - y.r) + (x.z - y.z) * (x.z - y.z)) / (2 * x.r * y.r);
  const double lam = std::sqrt(2 / (2 + eta));
  const double K = kPi / (2 * agm(1.0, std::sqrt(eta / (2 + eta))));
  return lam * K / (4 * kPi * kPi * std::sqrt(x.r * y.r));
}

}  // namespace

TEST_CASE("single layer of a constant density") {
  auto curve = GeneratingCurve::ellipse_torus(2.0, 1.0, 0.6);
  auto grid = make_grid(curve, 61);
  NystromStencil st(curve, grid, alpert_rule(61, 16));
  KernelTable tab(st, KernelKind::Static, 0.0, 1, false);
  CMat S = scalar_layer(st, tab, 0);
  CVec u = S * CVec::Ones(61);
  boost::math::quadrature::tanh_sinh<double> ts;
  for (int j : {0, 17, 40}) {
    const CurvePoint& x = grid.nodes[j];
    auto f = [&](double s) {
      CurvePoint y = curve.at(s);
      return kTwoPi * y.r * g0_static(x, y);
    };
    double ref = ts.integrate(f, x.s, x.s + curve.length());
    CHECK(std::abs(u[j].real() - ref) < 1e-10 * std::abs(ref));
  }
}

TEST_CASE("layer matrices: zero kernel, mode symmetry, serial equals parallel") {
  auto curve = GeneratingCurve::torus(2.0, 1.0);
  auto grid = make_grid(curve, 41);
  NystromStencil st(curve, grid, alpert_rule(41, 16));
  CMat z = build_matrix(st, [](int, int) { return cplx(0.0); });
  CHECK(z.norm() == 0.0);

  KernelTable par(st, KernelKind::Helmholtz, 1.5, 6, true, Execution::Parallel);
  KernelTable ser(st, KernelKind::Helmholtz, 1.5, 6, true, Execution::Serial);
  CHECK(par == ser);
  CHECK((scalar_layer(st, par, 3) - scalar_layer(st, par, -3)).norm() == 0.0);
}

TEST_CASE("compose") {
  CMat a = CMat::Random(7, 7), b = CMat::Random(7, 7), c = CMat::Random(7, 7);
  CHECK((compose(a, CMat::Identity(7, 7)) - a).norm() == 0.0);
  double rel = (compose(compose(a, b), c) - compose(a, compose(b, c))).norm() / (a * b * c).norm();
  CHECK(rel < 1e-13);
  CHECK_THROWS_AS(compose(a, CMat::Random(5, 7)), InputError);
}
