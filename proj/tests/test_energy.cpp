#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wlab/corpus.hpp"
#include "wlab/energy.hpp"
#include "wlab/families.hpp"

using namespace wlab;
using std::numbers::pi;

namespace {

ParametricTorus clifford_standard() {
  ParametricTorus t;
  t.ambient_dim = 4;
  t.period_u = t.period_v = 2.0 * pi;
  t.immersion = [](double u, double v) {
    Eigen::VectorXd p(4);
    double r = 1.0 / std::sqrt(2.0);
    p << r * std::cos(u), r * std::sin(u), r * std::cos(v), r * std::sin(v);
    return p;
  };
  return t;
}

}  // namespace

TEST_SUITE("energy") {

TEST_CASE("fundamental forms of the Clifford torus") {
  ParametricTorus t = clifford_standard();
  FundamentalForms f = fundamental_forms(t, 64, 5, 9);
  CHECK(f.E == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(f.G == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(std::abs(f.F) < 1e-10);
}

TEST_CASE("second-fundamental vectors are normal to y, y_u, y_v") {
  auto corpus = torus_corpus(256);
  ParametricTorus t = as_parametric(corpus[5].second);
  const int n = 64;
  detail::Grid2 g = detail::sample(t, n, n);
  auto du = detail::d_u(g, 1);
  auto dv = detail::d_v(g, 1);
  double worst = 0.0;
  for (int i : {0, 13, 40}) {
    for (int j : {7, 33}) {
      FundamentalForms f = fundamental_forms(t, n, i, j);
      Eigen::VectorXd y = detail::at(g.comp, i, j);
      Eigen::VectorXd yu = detail::at(du, i, j);
      Eigen::VectorXd yv = detail::at(dv, i, j);
      for (const Eigen::VectorXd* h : {&f.h11, &f.h12, &f.h22}) {
        worst = std::max({worst, std::abs(h->dot(y)), std::abs(h->dot(yu)),
                          std::abs(h->dot(yv))});
      }
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("willmore_parametric reference values") {
  EnergyReport cliff = willmore_parametric(clifford_standard(), 128);
  CHECK(cliff.value == doctest::Approx(2.0 * pi * pi).epsilon(1e-10));
  CHECK(cliff.method == "parametric");

  double rho = std::sqrt(2.0 + std::pow(std::sin(0.6), 2));
  double want = 6.0 * pi * pi * (2.0 / rho - 3.0 / std::pow(rho, 3));
  EnergyReport th = willmore_parametric(theta_surface(0.3), 128);
  CHECK(th.value == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("willmore_tensor reference values") {
  TensorTorus cliff = build_tensor_torus(great_circle(256), great_circle(256));
  CHECK(willmore_tensor(cliff).value ==
        doctest::Approx(4.0 * pi * pi).epsilon(1e-12));

  TensorTorus ya =
      build_tensor_torus(small_circle(0.5, 256), small_circle(0.5, 256));
  CHECK(willmore_tensor(ya).value ==
        doctest::Approx(2.0 * pi * pi * 1.25).epsilon(1e-12));

  TensorTorus ta = build_tensor_torus(ejiri_factor(256), small_circle(1.0, 256));
  CHECK(willmore_tensor(ta).value ==
        doctest::Approx(2.0 * pi * pi * std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("flat-conformal shortcut on the theta family") {
  EnergyReport e4 =
      willmore_flat_conformal(theta_surface(pi / 4.0), 128, theta_chart(pi / 4.0));
  CHECK(e4.value == doctest::Approx(2.0 * pi * pi * std::sqrt(3.0)).epsilon(1e-9));

  EnergyReport e0 = willmore_flat_conformal(theta_surface(0.0), 128, theta_chart(0.0));
  CHECK(e0.value == doctest::Approx(3.0 * pi * pi / std::sqrt(2.0)).epsilon(1e-9));

  // standard Clifford coordinates have E = G = 1/2, so the unit-conformal
  // directions are sqrt(2) d_u, sqrt(2) d_v
  FlatChart cliff_chart;
  cliff_chart.dirs = std::sqrt(2.0) * Eigen::Matrix2d::Identity();
  EnergyReport cl = willmore_flat_conformal(clifford_standard(), 128, cliff_chart);
  CHECK(cl.value == doctest::Approx(2.0 * pi * pi).epsilon(1e-9));
}

TEST_CASE("flat-conformal refuses a non-conformal chart") {
  // raw (s, s_hat) coordinates of the theta surface are not conformal
  CHECK_THROWS_AS(willmore_flat_conformal(theta_surface(0.3), 64, FlatChart{}),
                  NotFlatConformal);
}

TEST_CASE("two routes agree on tensor tori") {
  for (auto& [name, t] : torus_corpus(256)) {
    CAPTURE(name);
    double a = willmore_tensor(t).value;
    double b = willmore_parametric(as_parametric(t), 256).value;
    CHECK(std::abs(a - b) < 1e-7);
  }
}

TEST_CASE("error estimate is honest for a spectral integrand") {
  TensorTorus t = build_tensor_torus(ejiri_factor(256), great_circle(256));
  EnergyReport r = willmore_tensor(t);
  CHECK(r.estimated_error < 1e-8);
  CHECK(std::abs(r.value - 2.0 * pi * pi * std::sqrt(3.0)) <=
        std::max(r.estimated_error, 1e-9));
}

TEST_CASE("degenerate metric is reported") {
  ParametricTorus t;
  t.ambient_dim = 3;
  t.period_u = t.period_v = 2.0 * pi;
  // v-direction collapses: image is a curve, not a surface
  t.immersion = [](double u, double) {
    Eigen::VectorXd p(3);
    p << std::cos(u), std::sin(u), 0.0;
    return p;
  };
  CHECK_THROWS_AS(willmore_parametric(t, 32), DegenerateMetric);
}

}  // TEST_SUITE
